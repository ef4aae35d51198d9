#include <catch2/catch_amalgamated.hpp>

#include <quillen/quillen.hpp>

using namespace quillen;

namespace {

std::vector<uint8_t> diamond_le() {
  std::vector<uint8_t> le(16, 0);
  auto rel = [&](int x, int y) { le[(size_t)x * 4 + y] = 1; };
  for (int i = 0; i < 4; ++i) rel(i, i);
  rel(0, 1), rel(0, 2), rel(0, 3), rel(1, 3), rel(2, 3);
  return le;
}

CatPtr diamond() { return poset_category(4, diamond_le(), {"bot", "x", "y", "top"}); }

std::vector<uint8_t> chain_le(int n) {
  std::vector<uint8_t> le((size_t)n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) le[(size_t)x * n + y] = 1;
  return le;
}

int meet(const std::vector<uint8_t>& le, int n, int x, int y) {
  int best = -1;
  for (int z = 0; z < n; ++z)
    if (le[(size_t)z * n + x] && le[(size_t)z * n + y])
      if (best < 0 || le[(size_t)best * n + z]) best = z;
  return best;
}

int join(const std::vector<uint8_t>& le, int n, int x, int y) {
  int best = -1;
  for (int z = 0; z < n; ++z)
    if (le[(size_t)x * n + z] && le[(size_t)y * n + z])
      if (best < 0 || le[(size_t)z * n + best]) best = z;
  return best;
}

// Class transfer: the class of a fiber morphism is the class of its image
// under a chosen comparison functor out of the total category.
std::vector<ModelStructure> fiber_models_by(const Bifibration& bb, const Functor& under,
                                            const ModelStructure& m) {
  std::vector<ModelStructure> out;
  for (const FiberView& fv : bb.fibers) {
    MorClass C(fv.cat), W(fv.cat), F(fv.cat);
    for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
      Mor g = under.mor[fv.mor_global[k]];
      C.set(k, m.cof.test(g));
      W.set(k, m.weq.test(g));
      F.set(k, m.fib.test(g));
    }
    out.push_back(ModelStructure{C, W, F});
  }
  return out;
}

QuillenSetup identity_setup(const CatPtr& c, const ModelStructure& m) {
  auto bb = build_cleavage(identity_functor(c));
  REQUIRE(bb.ok());
  std::vector<ModelStructure> fm;
  for (const FiberView& fv : bb->fibers)
    fm.push_back(ModelStructure{class_all(fv.cat), class_all(fv.cat), class_all(fv.cat)});
  return make_setup(std::move(*bb), m, std::move(fm));
}

// The arrow category of M fibered by codomain (slice fibers) or by domain
// (coslice fibers), with classes read off the other endpoint.
struct ArrowSetup {
  FunctorCat fc;
  QuillenSetup s;
  std::vector<std::pair<int, int>> pairs;
};

ArrowSetup arrow_setup(const CatPtr& M, const ModelStructure& m, int side) {
  ArrowSetup a;
  a.fc = functor_category(chain_category(2), M);
  for (auto& F : a.fc.objects) a.pairs.push_back({F.ob[0], F.ob[1]});
  auto bb = build_cleavage(a.fc.eval[side]);
  REQUIRE(bb.ok());
  auto fm = fiber_models_by(*bb, a.fc.eval[1 - side], m);
  a.s = make_setup(std::move(*bb), m, std::move(fm));
  return a;
}

// Collage of a Galois connection L -| R between two posets, fibered over
// the arrow of the 2-chain.
struct Collage {
  CatPtr E;
  CatPtr B;
  Functor p;
};

Collage make_collage(const CatPtr& base, int nM, const std::vector<uint8_t>& leM, int nN,
                     const std::vector<uint8_t>& leN, const std::vector<int>& L) {
  int n = nM + nN;
  std::vector<uint8_t> le((size_t)n * n, 0);
  for (int x = 0; x < nM; ++x)
    for (int y = 0; y < nM; ++y) le[(size_t)x * n + y] = leM[(size_t)x * nM + y];
  for (int x = 0; x < nN; ++x)
    for (int y = 0; y < nN; ++y) le[(size_t)(nM + x) * n + (nM + y)] = leN[(size_t)x * nN + y];
  for (int x = 0; x < nM; ++x)
    for (int y = 0; y < nN; ++y) le[(size_t)x * n + (nM + y)] = leN[(size_t)L[x] * nN + y];
  std::vector<std::string> names;
  for (int x = 0; x < nM; ++x) names.push_back("m" + std::to_string(x));
  for (int y = 0; y < nN; ++y) names.push_back("n" + std::to_string(y));
  Collage c;
  c.E = poset_category(n, le, names);
  c.B = base;
  std::vector<Obj> ob(n);
  for (int x = 0; x < n; ++x) ob[x] = x < nM ? 0 : 1;
  std::vector<Mor> mor(c.E->num_morphisms());
  for (Mor f = 0; f < c.E->num_morphisms(); ++f)
    mor[f] = c.B->hom(ob[c.E->src(f)], ob[c.E->tgt(f)])[0];
  c.p = validate_functor(c.E, c.B, ob, mor);
  return c;
}

}  // namespace

TEST_CASE("identity setups reproduce the base structure", "[quillen]") {
  auto c3 = chain_category(3);
  auto structures = enumerate_model_structures(c3);
  REQUIRE(structures.size() == 10);
  for (const ModelStructure& m : structures) {
    QuillenSetup s = identity_setup(c3, m);
    REQUIRE(check_Q(s).pass);

    TotalClasses t = total_classes(s);
    REQUIRE(t.totalCof.bits == m.cof.bits);
    REQUIRE(t.totalFib.bits == m.fib.bits);
    REQUIRE(t.totalACof.bits == m.acof().bits);
    REQUIRE(t.totalAFib.bits == m.afib().bits);
    REQUIRE(total_weak(s).bits == m.weq.bits);

    Wfs cs = stanculescu_wfs(s, Side::cof_side);
    Wfs fs = stanculescu_wfs(s, Side::fib_side);
    REQUIRE(cs.left.bits == m.cof.bits);
    REQUIRE(cs.right.bits == m.afib().bits);
    REQUIRE(fs.left.bits == m.acof().bits);
    REQUIRE(fs.right.bits == m.fib.bits);
    REQUIRE(check_intertwined(fs, cs).pass);

    TotalModel tm = grothendieck_model(s);
    REQUIRE(tm.ok());
    REQUIRE(tm->weq.bits == m.weq.bits);
    REQUIRE(verify_main_theorem(s).pass);
    REQUIRE(necessity_suite(s, *tm).pass);
    REQUIRE(check_quillen_bifibration(s, *tm).pass);
    REQUIRE(check_rs_conditions(s).pass);
    Verdict hp = check_hp_conditions(s);
    REQUIRE(hp.pass);
    REQUIRE(!hp.not_applicable);
  }
}

TEST_CASE("weak equivalences are determined by the other two classes", "[quillen]") {
  auto c3 = chain_category(3);
  auto structures = enumerate_model_structures(c3);
  for (const ModelStructure& m : structures) {
    QuillenSetup s = identity_setup(c3, m);
    MorClass W = total_weak(s);
    for (const ModelStructure& other : structures)
      if (other.cof.bits == m.cof.bits && other.fib.bits == m.fib.bits)
        REQUIRE(other.weq.bits == W.bits);
  }
}

TEST_CASE("product setups carry the pairwise structure", "[quillen]") {
  auto B2 = chain_category(2);
  auto M = chain_category(2);
  auto prod = product_category(B2, M);
  auto base_structures = enumerate_model_structures(B2);
  auto fiber_structures = enumerate_model_structures(M);
  REQUIRE(base_structures.size() == 3);

  Mor u01 = B2->hom(0, 1)[0];
  int nq = 0, nref = 0, nok = 0;
  for (const ModelStructure& mb : base_structures)
    for (const ModelStructure& m0 : fiber_structures)
      for (const ModelStructure& m1 : fiber_structures) {
        auto bbr = build_cleavage(prod.proj1);
        REQUIRE(bbr.ok());
        Bifibration bb = std::move(*bbr);

        // fiber over A inherits the classes of mA through the second projection
        std::vector<ModelStructure> fm;
        for (Obj A = 0; A < 2; ++A) {
          const FiberView& fv = bb.fibers[A];
          const ModelStructure& mA = A == 0 ? m0 : m1;
          MorClass C(fv.cat), W(fv.cat), F(fv.cat);
          for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
            Mor g = prod.proj2.mor[fv.mor_global[k]];
            C.set(k, mA.cof.test(g));
            W.set(k, mA.weq.test(g));
            F.set(k, mA.fib.test(g));
          }
          fm.push_back(ModelStructure{C, W, F});
        }
        QuillenSetup s = make_setup(std::move(bb), mb, std::move(fm));

        // pushing and pulling along the base arrow is the identity of M,
        // so (Q) is the Quillen condition for the identity adjunction
        bool oq = m0.cof.subset_of(m1.cof) && m0.acof().subset_of(m1.acof());
        if (!oq) {
          REQUIRE(!check_Q(s).pass);
          REQUIRE_THROWS_AS(grothendieck_model(s), HypothesisNotMet);
          ++nq;
          continue;
        }
        REQUIRE(check_Q(s).pass);
        REQUIRE(verify_main_theorem(s).pass);

        const FinCat& E = *prod.cat;
        TotalClasses t = total_classes(s);
        MorClass W = total_weak(s);
        for (Mor f = 0; f < E.num_morphisms(); ++f) {
          Mor ub = prod.proj1.mor[f];
          Mor g = prod.proj2.mor[f];
          const ModelStructure& mt = B2->tgt(ub) == 0 ? m0 : m1;
          const ModelStructure& ms = B2->src(ub) == 0 ? m0 : m1;
          REQUIRE(t.totalCof.test(f) == (mb.cof.test(ub) && mt.cof.test(g)));
          REQUIRE(t.totalACof.test(f) == (mb.acof().test(ub) && mt.acof().test(g)));
          REQUIRE(t.totalFib.test(f) == (mb.fib.test(ub) && ms.fib.test(g)));
          REQUIRE(t.totalAFib.test(f) == (mb.afib().test(ub) && ms.afib().test(g)));
          bool ow = false;
          for (auto [j, q] : factorizations(*B2, ub))
            if (mb.acof().test(j) && mb.afib().test(q)) {
              const ModelStructure& mm = B2->tgt(j) == 0 ? m0 : m1;
              if (mm.weq.test(g)) ow = true;
            }
          REQUIRE(W.test(f) == ow);
        }

        TotalModel tm = grothendieck_model(s);
        bool oref =
            (mb.acof().test(u01) || mb.afib().test(u01)) && !(m0.weq.bits == m1.weq.bits);
        REQUIRE(tm.ok() == !oref);
        if (tm.ok()) {
          REQUIRE(necessity_suite(s, *tm).pass);
          REQUIRE(check_quillen_bifibration(s, *tm).pass);
          ++nok;
        } else {
          REQUIRE(tm.refusal.condition == "hCon");
          ++nref;
        }
      }
  REQUIRE(nq > 0);
  REQUIRE(nref > 0);
  REQUIRE(nok > 0);
}

TEST_CASE("slice-fibered arrow categories over a chain", "[quillen]") {
  auto M = chain_category(3);
  auto le = chain_le(3);
  for (const ModelStructure& m : enumerate_model_structures(M)) {
    ArrowSetup a = arrow_setup(M, m, 1);
    const QuillenSetup& s = a.s;
    REQUIRE(check_Q(s).pass);

    const FinCat& E = s.total();
    TotalClasses t = total_classes(s);
    MorClass W = total_weak(s);
    for (Mor f = 0; f < E.num_morphisms(); ++f) {
      auto [x, y] = a.pairs[E.src(f)];
      auto [xp, yp] = a.pairs[E.tgt(f)];
      Mor u = M->hom(y, yp)[0];
      Mor top = M->hom(x, xp)[0];
      Mor pullm = M->hom(x, meet(le, 3, xp, y))[0];
      REQUIRE(t.totalCof.test(f) == (m.cof.test(u) && m.cof.test(top)));
      REQUIRE(t.totalACof.test(f) == (m.acof().test(u) && m.acof().test(top)));
      REQUIRE(t.totalFib.test(f) == (m.fib.test(u) && m.fib.test(pullm)));
      REQUIRE(t.totalAFib.test(f) == (m.afib().test(u) && m.afib().test(pullm)));
      bool ow = false;
      for (int mid = y; mid <= yp && !ow; ++mid) {
        Mor j = M->hom(y, mid)[0], q = M->hom(mid, yp)[0];
        if (m.acof().test(j) && m.afib().test(q) &&
            m.weq.test(M->hom(x, meet(le, 3, xp, mid))[0]))
          ow = true;
      }
      REQUIRE(W.test(f) == ow);
    }

    REQUIRE(verify_main_theorem(s).pass);
    TotalModel tm = grothendieck_model(s);
    REQUIRE(tm.ok() == (check_hcon(s).pass && check_hbc(s).pass));
    if (tm.ok()) {
      REQUIRE(necessity_suite(s, *tm).pass);
      REQUIRE(check_quillen_bifibration(s, *tm).pass);
      Wfs cs = stanculescu_wfs(s, Side::cof_side);
      Wfs fs = stanculescu_wfs(s, Side::fib_side);
      REQUIRE(check_intertwined(fs, cs).pass);
    }
  }
}

TEST_CASE("slice-fibered arrow categories over the diamond", "[quillen]") {
  auto M = diamond();
  auto le = diamond_le();
  int nok = 0, nref = 0;
  for (const ModelStructure& m : enumerate_model_structures(M)) {
    ArrowSetup a = arrow_setup(M, m, 1);
    const QuillenSetup& s = a.s;
    REQUIRE(check_Q(s).pass);
    REQUIRE(verify_main_theorem(s).pass);

    const FinCat& E = s.total();
    TotalClasses t = total_classes(s);
    for (Mor f = 0; f < E.num_morphisms(); ++f) {
      auto [x, y] = a.pairs[E.src(f)];
      auto [xp, yp] = a.pairs[E.tgt(f)];
      Mor u = M->hom(y, yp)[0];
      Mor top = M->hom(x, xp)[0];
      Mor pullm = M->hom(x, meet(le, 4, xp, y))[0];
      REQUIRE(t.totalCof.test(f) == (m.cof.test(u) && m.cof.test(top)));
      REQUIRE(t.totalFib.test(f) == (m.fib.test(u) && m.fib.test(pullm)));
    }

    TotalModel tm = grothendieck_model(s);
    if (tm.ok()) {
      REQUIRE(necessity_suite(s, *tm).pass);
      REQUIRE(check_quillen_bifibration(s, *tm).pass);
      ++nok;
    } else {
      ++nref;
    }
  }
  REQUIRE(nok > 0);
}

TEST_CASE("coslice-fibered arrow categories over a chain", "[quillen]") {
  auto M = chain_category(3);
  auto le = chain_le(3);
  for (const ModelStructure& m : enumerate_model_structures(M)) {
    ArrowSetup a = arrow_setup(M, m, 0);
    const QuillenSetup& s = a.s;
    REQUIRE(check_Q(s).pass);

    const FinCat& E = s.total();
    TotalClasses t = total_classes(s);
    MorClass W = total_weak(s);
    for (Mor f = 0; f < E.num_morphisms(); ++f) {
      auto [x, y] = a.pairs[E.src(f)];
      auto [xp, yp] = a.pairs[E.tgt(f)];
      Mor u = M->hom(x, xp)[0];
      Mor bottom = M->hom(y, yp)[0];
      Mor pushm = M->hom(join(le, 3, y, xp), yp)[0];
      REQUIRE(t.totalFib.test(f) == (m.fib.test(u) && m.fib.test(bottom)));
      REQUIRE(t.totalAFib.test(f) == (m.afib().test(u) && m.afib().test(bottom)));
      REQUIRE(t.totalCof.test(f) == (m.cof.test(u) && m.cof.test(pushm)));
      REQUIRE(t.totalACof.test(f) == (m.acof().test(u) && m.acof().test(pushm)));
      bool ow = false;
      for (int mid = x; mid <= xp && !ow; ++mid) {
        Mor j = M->hom(x, mid)[0], q = M->hom(mid, xp)[0];
        if (m.acof().test(j) && m.afib().test(q) &&
            m.weq.test(M->hom(join(le, 3, y, mid), yp)[0]))
          ow = true;
      }
      REQUIRE(W.test(f) == ow);
    }

    REQUIRE(verify_main_theorem(s).pass);
    TotalModel tm = grothendieck_model(s);
    REQUIRE(tm.ok() == (check_hcon(s).pass && check_hbc(s).pass));
    if (tm.ok()) REQUIRE(necessity_suite(s, *tm).pass);
  }
}

TEST_CASE("collages of Galois connections between 3-chains", "[quillen]") {
  auto M = chain_category(3);
  auto leM = chain_le(3);
  auto structures = enumerate_model_structures(M);
  auto B2 = chain_category(2);
  auto base_structures = enumerate_model_structures(B2);

  // left adjoints between chains: monotone maps preserving the bottom
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
  for (int a1 = 0; a1 <= 2; ++a1)
    for (int b1 = a1; b1 <= 2; ++b1)
      for (int a2 = 0; a2 <= 2; ++a2)
        for (int b2 = a2; b2 <= 2; ++b2)
          for (int c2 = b2; c2 <= 2; ++c2) {
            std::vector<int> L = {0, a1, b1}, R = {a2, b2, c2};
            bool galois = true;
            for (int x = 0; x < 3 && galois; ++x)
              for (int y = 0; y < 3 && galois; ++y)
                if ((L[x] <= y) != (x <= R[y])) galois = false;
            if (galois) pairs.push_back({L, R});
          }
  REQUIRE(pairs.size() == 6);

  int nq = 0, nref = 0, nok = 0;
  Mor u01 = B2->hom(0, 1)[0];
  for (auto& [L, R] : pairs) {
    Collage c = make_collage(B2, 3, leM, 3, leM, L);
    for (const ModelStructure& mM : structures)
      for (const ModelStructure& mN : structures) {
        auto bbr = build_cleavage(c.p);
        REQUIRE(bbr.ok());
        Bifibration bb = std::move(*bbr);

        std::vector<ModelStructure> fm;
        for (Obj A = 0; A < 2; ++A) {
          const FiberView& fv = bb.fibers[A];
          const ModelStructure& mA = A == 0 ? mM : mN;
          MorClass C(fv.cat), W(fv.cat), F(fv.cat);
          for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
            int gx = fv.obj_global[fv.cat->src(k)] - (A == 0 ? 0 : 3);
            int gy = fv.obj_global[fv.cat->tgt(k)] - (A == 0 ? 0 : 3);
            Mor g = M->hom(gx, gy)[0];
            C.set(k, mA.cof.test(g));
            W.set(k, mA.weq.test(g));
            F.set(k, mA.fib.test(g));
          }
          fm.push_back(ModelStructure{C, W, F});
        }

        for (const ModelStructure& mb : base_structures) {
          QuillenSetup s = make_setup(bb, mb, fm);

          // push along the base arrow is L, pull is R
          auto image = [&](const std::vector<int>& map, Mor f) {
            return M->hom(map[M->src(f)], map[M->tgt(f)])[0];
          };
          bool oq = true;
          for (Mor f = 0; f < M->num_morphisms() && oq; ++f) {
            if (mM.cof.test(f) && !mN.cof.test(image(L, f))) oq = false;
            if (mM.acof().test(f) && !mN.acof().test(image(L, f))) oq = false;
          }
          REQUIRE(check_Q(s).pass == oq);
          if (!oq) {
            ++nq;
            continue;
          }

          auto conservative = [&](const std::vector<int>& map, const MorClass& wd,
                                  const MorClass& wc) {
            for (Mor f = 0; f < M->num_morphisms(); ++f)
              if (wd.test(f) != wc.test(image(map, f))) return false;
            return true;
          };
          bool hk = !(mb.acof().test(u01) && !conservative(L, mM.weq, mN.weq)) &&
                    !(mb.afib().test(u01) && !conservative(R, mN.weq, mM.weq));
          REQUIRE(check_hcon(s).pass == hk);
          REQUIRE(check_hbc(s).pass);
          REQUIRE(verify_main_theorem(s).pass);

          TotalModel tm = grothendieck_model(s);
          REQUIRE(tm.ok() == hk);
          if (tm.ok()) {
            REQUIRE(necessity_suite(s, *tm).pass);
            REQUIRE(check_quillen_bifibration(s, *tm).pass);
            ++nok;
          } else {
            REQUIRE(tm.refusal.condition == "hCon");
            ++nref;
          }
        }
      }
  }
  REQUIRE(nq > 0);
  REQUIRE(nref > 0);
  REQUIRE(nok > 0);
}

TEST_CASE("duality swaps the two sides", "[quillen]") {
  auto M = chain_category(3);
  for (const ModelStructure& m : enumerate_model_structures(M)) {
    ArrowSetup a = arrow_setup(M, m, 1);
    const QuillenSetup& s = a.s;
    QuillenSetup o = opposite_setup(s);

    REQUIRE(check_Q(o).pass == check_Q(s).pass);
    REQUIRE(check_hcon(o).pass == check_hcon(s).pass);
    REQUIRE(check_hbc(o).pass == check_hbc(s).pass);

    TotalClasses t = total_classes(s);
    TotalClasses to = total_classes(o);
    REQUIRE(to.totalCof.bits == t.totalFib.bits);
    REQUIRE(to.totalFib.bits == t.totalCof.bits);
    REQUIRE(to.totalACof.bits == t.totalAFib.bits);
    REQUIRE(to.totalAFib.bits == t.totalACof.bits);
    REQUIRE(total_weak(o).bits == total_weak(s).bits);

    TotalModel tm = grothendieck_model(s);
    TotalModel tmo = grothendieck_model(o);
    REQUIRE(tm.ok() == tmo.ok());
    if (tm.ok()) {
      REQUIRE(tmo->cof.bits == tm->fib.bits);
      REQUIRE(tmo->fib.bits == tm->cof.bits);
      REQUIRE(tmo->weq.bits == tm->weq.bits);
    }
  }
}

TEST_CASE("a refusal dualizes to a refusal", "[quillen]") {
  // constant-bottom collage: pushing kills every morphism, so the push along
  // the base arrow cannot reflect weak equivalences
  auto M = chain_category(3);
  auto leM = chain_le(3);
  auto B2 = chain_category(2);
  Collage c = make_collage(B2, 3, leM, 3, leM, {0, 0, 0});
  auto bbr = build_cleavage(c.p);
  REQUIRE(bbr.ok());
  Bifibration bb = std::move(*bbr);

  auto structures = enumerate_model_structures(M);
  ModelStructure nontrivial;
  for (auto& m : structures)
    if (m.weq.count() < m.weq.bits.size()) nontrivial = m;
  std::vector<ModelStructure> fm;
  for (Obj A = 0; A < 2; ++A) {
    const FiberView& fv = bb.fibers[A];
    MorClass C(fv.cat), W(fv.cat), F(fv.cat);
    for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
      int gx = fv.obj_global[fv.cat->src(k)] - (A == 0 ? 0 : 3);
      int gy = fv.obj_global[fv.cat->tgt(k)] - (A == 0 ? 0 : 3);
      Mor g = M->hom(gx, gy)[0];
      C.set(k, nontrivial.cof.test(g));
      W.set(k, nontrivial.weq.test(g));
      F.set(k, nontrivial.fib.test(g));
    }
    fm.push_back(ModelStructure{C, W, F});
  }

  ModelStructure mb{class_all(B2), class_all(B2), class_isos(B2)};
  QuillenSetup s = make_setup(std::move(bb), mb, std::move(fm));

  REQUIRE(check_Q(s).pass);
  TotalModel tm = grothendieck_model(s);
  REQUIRE(!tm.ok());
  REQUIRE(tm.refusal.condition == "hCon");

  QuillenSetup o = opposite_setup(s);
  REQUIRE(check_Q(o).pass);
  TotalModel tmo = grothendieck_model(o);
  REQUIRE(!tmo.ok());
  REQUIRE(tmo.refusal.condition == "hCon");
}

TEST_CASE("sufficient conditions can fail while the construction goes through", "[quillen]") {
  // the diamond carries a structure whose only non-identity weak
  // equivalence is one upper edge
  auto M = diamond();
  Mor e13 = M->hom(1, 3)[0];
  MorClass C = class_all(M);
  MorClass W = class_identities(M);
  W.set(e13);
  MorClass F = class_all(M);
  F.set(e13, false);
  ModelStructure ms{C, W, F};
  REQUIRE(check_model_structure(ms).pass);

  ArrowSetup a = arrow_setup(M, ms, 1);
  const QuillenSetup& s = a.s;
  REQUIRE(check_Q(s).pass);

  Verdict rs = check_rs_conditions(s);
  REQUIRE(!rs.pass);
  REQUIRE(rs.witness.note.find("(i)") == 0);

  Verdict hp = check_hp_conditions(s);
  REQUIRE(!hp.pass);
  REQUIRE(!hp.not_applicable);
  REQUIRE(hp.witness.note.find("(i')") == 0);

  REQUIRE(verify_main_theorem(s).pass);
  TotalModel tm = grothendieck_model(s);
  REQUIRE(tm.ok());
  REQUIRE(necessity_suite(s, *tm).pass);
}

TEST_CASE("comparison checkers go silent without replacements", "[quillen]") {
  // fibers without extremal objects: a two-object discrete fiber
  auto B2 = chain_category(2);
  RawCat raw;
  raw.objects = 2;
  raw.mor = {{0, 0}, {1, 1}};
  raw.identity = {0, 1};
  auto D = validate_category(raw);
  auto prod = product_category(B2, D);
  auto bbr = build_cleavage(prod.proj1);
  REQUIRE(bbr.ok());
  Bifibration bb = std::move(*bbr);
  std::vector<ModelStructure> fm;
  for (const FiberView& fv : bb.fibers)
    fm.push_back(ModelStructure{class_all(fv.cat), class_all(fv.cat), class_all(fv.cat)});
  ModelStructure mb{class_all(B2), class_all(B2), class_isos(B2)};
  QuillenSetup s = make_setup(std::move(bb), mb, std::move(fm));

  REQUIRE(check_Q(s).pass);
  REQUIRE(check_rs_conditions(s).pass);
  Verdict hp = check_hp_conditions(s);
  REQUIRE(hp.not_applicable);
  REQUIRE(verify_main_theorem(s).pass);
  REQUIRE(grothendieck_model(s).ok());
}

TEST_CASE("a candidate with the wrong classes is rejected", "[quillen]") {
  auto c3 = chain_category(3);
  ModelStructure m{class_all(c3), class_isos(c3), class_all(c3)};
  REQUIRE(check_model_structure(m).pass);
  QuillenSetup s = identity_setup(c3, m);
  ModelStructure cand{class_all(c3), class_all(c3), class_all(c3)};
  Verdict v = check_quillen_bifibration(s, cand);
  REQUIRE(!v.pass);
}

TEST_CASE("check_Q reports the failing base morphism", "[quillen]") {
  auto B2 = chain_category(2);
  auto M = chain_category(2);
  auto prod = product_category(B2, M);
  auto bbr = build_cleavage(prod.proj1);
  Bifibration bb = std::move(*bbr);
  ModelStructure m0{class_all(M), class_all(M), class_isos(M)};
  ModelStructure m1{class_isos(M), class_all(M), class_all(M)};
  std::vector<ModelStructure> fm;
  for (Obj A = 0; A < 2; ++A) {
    const FiberView& fv = bb.fibers[A];
    const ModelStructure& mA = A == 0 ? m0 : m1;
    MorClass C(fv.cat), W(fv.cat), F(fv.cat);
    for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
      Mor g = prod.proj2.mor[fv.mor_global[k]];
      C.set(k, mA.cof.test(g));
      W.set(k, mA.weq.test(g));
      F.set(k, mA.fib.test(g));
    }
    fm.push_back(ModelStructure{C, W, F});
  }
  ModelStructure mb{class_all(B2), class_all(B2), class_isos(B2)};
  QuillenSetup s = make_setup(std::move(bb), mb, std::move(fm));
  Verdict q = check_Q(s);
  REQUIRE(!q.pass);
  bool found = false;
  for (auto& [k, v] : q.witness.data)
    if (k == "base_morphism" && v == (long long)B2->hom(0, 1)[0]) found = true;
  REQUIRE(found);
  REQUIRE_THROWS_AS(stanculescu_wfs(s, Side::cof_side), HypothesisNotMet);
}
