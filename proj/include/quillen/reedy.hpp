#pragma once
// Reedy machinery over finite lattice targets: Reedy categories with unique
// plus/minus factorizations, finite lattices as the complete and cocomplete
// targets, latching and matching objects, the extension bijection, the
// restriction bifibration between truncated diagram categories, the Reedy
// triple, the degreewise construction that rebuilds it through the
// Grothendieck route, and the bigluing category with Shulman's theorem.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quillen/quillen.hpp"

namespace quillen {

// The canonical order morphism from latching to matching failed to exist;
// like CheckFailure this signals a bug, never a property of the input.
struct AlphaMissing : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Finite lattices. A finite category with all finite limits and colimits is
// a lattice (it is a preorder with meets and joins), so lattices are the
// honest finite stand-in for a bicomplete target.

struct FinLattice {
  CatPtr cat;
  std::vector<Obj> meets, joins;  // n*n tables
  Obj bottom = -1, top = -1;

  Obj meet(Obj x, Obj y) const { return meets[(size_t)x * cat->num_objects() + y]; }
  Obj join(Obj x, Obj y) const { return joins[(size_t)x * cat->num_objects() + y]; }
  bool le(Obj x, Obj y) const { return !cat->hom(x, y).empty(); }
  Mor arrow(Obj x, Obj y) const { return cat->hom(x, y)[0]; }
};

inline FinLattice make_lattice(CatPtr c) {
  const FinCat& L = *c;
  int n = L.num_objects();
  if (n == 0) throw ValidationError("NotLattice", "empty category");
  for (Obj x = 0; x < n; ++x)
    for (Obj y = 0; y < n; ++y) {
      if (L.hom(x, y).size() > 1)
        throw ValidationError("NotLattice", "parallel morphisms " + L.obj_name[x] + " -> " +
                                                L.obj_name[y]);
      if (x != y && !L.hom(x, y).empty() && !L.hom(y, x).empty())
        throw ValidationError("NotLattice",
                              "isomorphic objects " + L.obj_name[x] + ", " + L.obj_name[y]);
    }
  FinLattice out;
  out.cat = c;
  out.meets.assign((size_t)n * n, -1);
  out.joins.assign((size_t)n * n, -1);
  auto le = [&](Obj x, Obj y) { return !L.hom(x, y).empty(); };
  for (Obj x = 0; x < n; ++x)
    for (Obj y = 0; y < n; ++y) {
      for (Obj z = 0; z < n; ++z) {
        if (le(z, x) && le(z, y)) {
          Obj& m = out.meets[(size_t)x * n + y];
          if (m < 0 || le(m, z)) m = z;
        }
        if (le(x, z) && le(y, z)) {
          Obj& j = out.joins[(size_t)x * n + y];
          if (j < 0 || le(z, j)) j = z;
        }
      }
      Obj m = out.meets[(size_t)x * n + y], j = out.joins[(size_t)x * n + y];
      if (m < 0 || j < 0)
        throw ValidationError("NotLattice", "pair " + L.obj_name[x] + ", " + L.obj_name[y] +
                                                " lacks a meet or a join");
      // the candidate must really be the categorical (co)limit of the pair
      for (Obj z = 0; z < n; ++z) {
        if ((le(z, x) && le(z, y)) != le(z, m))
          throw ValidationError("NotLattice", "meet of " + L.obj_name[x] + ", " + L.obj_name[y] +
                                                  " is not a product");
        if ((le(x, z) && le(y, z)) != le(j, z))
          throw ValidationError("NotLattice", "join of " + L.obj_name[x] + ", " + L.obj_name[y] +
                                                  " is not a coproduct");
      }
    }
  out.bottom = 0;
  out.top = 0;
  for (Obj x = 0; x < n; ++x) {
    out.bottom = out.meets[(size_t)out.bottom * n + x];
    out.top = out.joins[(size_t)out.top * n + x];
  }
  for (Obj x = 0; x < n; ++x)
    if (L.hom(out.bottom, x).size() != 1 || L.hom(x, out.top).size() != 1)
      throw ValidationError("NotLattice", "bottom is not initial or top is not terminal");
  return out;
}

// ---------------------------------------------------------------------------
// Reedy categories.

struct ReedyCat {
  CatPtr cat;
  std::vector<int> degree;
  MorClass plus, minus;
};

inline ReedyCat validate_reedy(CatPtr cat, std::vector<int> degree, MorClass plus,
                               MorClass minus) {
  const FinCat& R = *cat;
  if ((int)degree.size() != R.num_objects())
    throw ValidationError("EndpointMismatch", "one degree per object required");
  if (plus.cat.get() != cat.get() || minus.cat.get() != cat.get())
    throw ValidationError("EndpointMismatch", "plus/minus classes live on another category");
  for (int d : degree)
    if (d < 0) throw ValidationError("DegreeViolation", "degrees must be natural numbers");
  for (Mor f = 0; f < R.num_morphisms(); ++f) {
    if (R.is_id(f)) continue;
    if (plus.test(f) && degree[R.tgt(f)] <= degree[R.src(f)])
      throw ValidationError("DegreeViolation",
                            "plus morphism " + R.mor_name[f] + " does not raise the degree");
    if (minus.test(f) && degree[R.tgt(f)] >= degree[R.src(f)])
      throw ValidationError("DegreeViolation",
                            "minus morphism " + R.mor_name[f] + " does not lower the degree");
  }
  for (Mor f = 0; f < R.num_morphisms(); ++f) {
    int found = 0;
    for (Mor g = 0; g < R.num_morphisms(); ++g) {
      if (!minus.test(g) || R.src(g) != R.src(f)) continue;
      for (Mor h : R.hom(R.tgt(g), R.tgt(f)))
        if (plus.test(h) && R.compose(h, g) == f) ++found;
    }
    if (found == 0)
      throw ValidationError("FactorizationMissing",
                            "morphism " + R.mor_name[f] + " has no plus-minus factorization");
    if (found > 1)
      throw ValidationError("FactorizationNotUnique",
                            "morphism " + R.mor_name[f] + " has several factorizations");
  }
  return ReedyCat{std::move(cat), std::move(degree), std::move(plus), std::move(minus)};
}

// Full sub-Reedy category on the objects of degree < bound.
inline Subcat reedy_stage(const ReedyCat& R, int bound) {
  std::vector<Obj> objs;
  for (Obj x = 0; x < R.cat->num_objects(); ++x)
    if (R.degree[x] < bound) objs.push_back(x);
  return full_subcategory(R.cat, objs);
}

inline ReedyCat stage_reedy(const ReedyCat& R, int bound) {
  Subcat st = reedy_stage(R, bound);
  std::vector<int> deg;
  for (Obj g : st.obj_global) deg.push_back(R.degree[g]);
  MorClass p(st.cat), m(st.cat);
  for (Mor k = 0; k < st.cat->num_morphisms(); ++k) {
    p.set(k, R.plus.test(st.mor_global[k]));
    m.set(k, R.minus.test(st.mor_global[k]));
  }
  return validate_reedy(st.cat, std::move(deg), std::move(p), std::move(m));
}

// ---------------------------------------------------------------------------
// Weighted (co)limits in a lattice: a set weight contributes its value when
// nonempty, so the colimit is a join and the limit a meet.

inline Obj weighted_colimit(const FinLattice& M, const std::vector<int>& weight,
                            const std::vector<Obj>& value) {
  Obj out = M.bottom;
  for (size_t i = 0; i < weight.size(); ++i)
    if (weight[i] > 0) out = M.join(out, value[i]);
  return out;
}

inline Obj weighted_limit(const FinLattice& M, const std::vector<int>& weight,
                          const std::vector<Obj>& value) {
  Obj out = M.top;
  for (size_t i = 0; i < weight.size(); ++i)
    if (weight[i] > 0) out = M.meet(out, value[i]);
  return out;
}

// Latching and matching of a diagram at r; X holds lattice elements indexed
// by the objects of R, with only the entries of degree below deg(r) read.
inline Obj latching(const ReedyCat& R, const FinLattice& M, Obj r, const std::vector<Obj>& X) {
  std::vector<int> w;
  std::vector<Obj> v;
  for (Obj s = 0; s < R.cat->num_objects(); ++s)
    if (R.degree[s] < R.degree[r]) {
      w.push_back((int)R.cat->hom(s, r).size());
      v.push_back(X[s]);
    }
  return weighted_colimit(M, w, v);
}

inline Obj matching(const ReedyCat& R, const FinLattice& M, Obj r, const std::vector<Obj>& X) {
  std::vector<int> w;
  std::vector<Obj> v;
  for (Obj s = 0; s < R.cat->num_objects(); ++s)
    if (R.degree[s] < R.degree[r]) {
      w.push_back((int)R.cat->hom(r, s).size());
      v.push_back(X[s]);
    }
  return weighted_limit(M, w, v);
}

inline Mor canonical_alpha(const ReedyCat& R, const FinLattice& M, Obj r,
                           const std::vector<Obj>& X) {
  Obj l = latching(R, M, r, X), m = matching(R, M, r, X);
  if (!M.le(l, m))
    throw AlphaMissing("canonical_alpha: latching not below matching at " +
                       R.cat->obj_name[r]);
  return M.arrow(l, m);
}

// ---------------------------------------------------------------------------
// Extensions of a stage-mu diagram correspond to families of elements
// between latching and matching, one per degree-mu object. Both sides are
// enumerated and matched by explicit round-trips.

inline Verdict extension_bijection(const ReedyCat& R, int mu, const std::vector<Obj>& X,
                                   const FinLattice& M, int size_guard = kDefaultSizeGuard) {
  Subcat up = reedy_stage(R, mu + 1);
  Subcat lo = reedy_stage(R, mu);
  FunctorCat fc = functor_category(up.cat, M.cat, size_guard);
  std::vector<Obj> level;
  for (Obj x = 0; x < R.cat->num_objects(); ++x)
    if (R.degree[x] == mu) level.push_back(x);

  std::vector<int> exts;
  for (int i = 0; i < (int)fc.objects.size(); ++i) {
    bool ok = true;
    for (Obj g : lo.obj_global)
      if (fc.objects[i].ob[up.obj_local[g]] != X[g]) ok = false;
    if (ok) exts.push_back(i);
  }

  std::vector<std::vector<Obj>> choices;
  long long fam = 1;
  for (Obj r : level) {
    Obj lb = latching(R, M, r, X), ub = matching(R, M, r, X);
    if (!M.le(lb, ub))
      throw AlphaMissing("extension_bijection: latching not below matching at " +
                         R.cat->obj_name[r]);
    std::vector<Obj> c;
    for (Obj y = 0; y < M.cat->num_objects(); ++y)
      if (M.le(lb, y) && M.le(y, ub)) c.push_back(y);
    choices.push_back(std::move(c));
    fam *= (long long)choices.back().size();
  }
  if ((long long)exts.size() != fam)
    throw CheckFailure("extension_bijection: " + std::to_string(exts.size()) +
                       " extensions against " + std::to_string(fam) + " families");

  // family -> extension: each choice assembles to a functor that must exist
  std::vector<int> pick(level.size(), 0);
  std::vector<char> hit(fc.objects.size(), 0);
  for (long long step = 0; step < fam; ++step) {
    std::vector<Obj> ob(up.cat->num_objects());
    for (Obj g : lo.obj_global) ob[up.obj_local[g]] = X[g];
    for (size_t i = 0; i < level.size(); ++i) ob[up.obj_local[level[i]]] = choices[i][pick[i]];
    std::vector<Mor> mor(up.cat->num_morphisms());
    for (Mor k = 0; k < up.cat->num_morphisms(); ++k) {
      Obj a = ob[up.cat->src(k)], b = ob[up.cat->tgt(k)];
      if (!M.le(a, b))
        throw CheckFailure("extension_bijection: family does not assemble to a diagram");
      mor[k] = M.arrow(a, b);
    }
    int idx = fc.find_object(Functor{up.cat, M.cat, ob, mor});
    if (idx < 0 || hit[idx])
      throw CheckFailure("extension_bijection: family round-trip failed");
    hit[idx] = 1;
    for (size_t i = 0; i < level.size(); ++i) {
      if (++pick[i] < (int)choices[i].size()) break;
      pick[i] = 0;
    }
  }

  // extension -> family: values at degree mu must land in the intervals
  for (int i : exts) {
    if (!hit[i]) throw CheckFailure("extension_bijection: extension missed by the families");
    for (size_t r = 0; r < level.size(); ++r) {
      Obj y = fc.objects[i].ob[up.obj_local[level[r]]];
      if (!M.le(latching(R, M, level[r], X), y) || !M.le(y, matching(R, M, level[r], X)))
        throw CheckFailure("extension_bijection: extension escapes the interval");
    }
  }

  Verdict out = Verdict::ok("extension_bijection");
  out.witness.add("extensions", (long long)exts.size());
  out.witness.add("families", fam);
  return out;
}

// ---------------------------------------------------------------------------
// The restriction [R_{<mu+1}, M] -> [R_{<mu}, M] with its cleavage. The
// cartesian morphisms are exactly those whose degree-mu components are the
// matching pullbacks, and dually; both characterizations are cross-checked
// against the generic cleavage.

struct ReedyStep {
  Subcat up_stage, lo_stage;
  FunctorCat upper, lower;
  Functor res;
  Bifibration bb;
  std::vector<Obj> level;  // objects of degree mu, global in R
};

inline ReedyStep restriction_bifibration(const ReedyCat& R, int mu, const FinLattice& M,
                                         int size_guard = kDefaultSizeGuard) {
  ReedyStep st;
  st.up_stage = reedy_stage(R, mu + 1);
  st.lo_stage = reedy_stage(R, mu);
  st.upper = functor_category(st.up_stage.cat, M.cat, size_guard);
  st.lower = functor_category(st.lo_stage.cat, M.cat, size_guard);
  for (Obj x = 0; x < R.cat->num_objects(); ++x)
    if (R.degree[x] == mu) st.level.push_back(x);

  int nLo = st.lo_stage.cat->num_objects();
  int mLo = st.lo_stage.cat->num_morphisms();
  std::vector<Obj> rob(st.upper.objects.size());
  for (size_t i = 0; i < st.upper.objects.size(); ++i) {
    const Functor& F = st.upper.objects[i];
    std::vector<Obj> ob(nLo);
    std::vector<Mor> mo(mLo);
    for (int l = 0; l < nLo; ++l) ob[l] = F.ob[st.up_stage.obj_local[st.lo_stage.obj_global[l]]];
    for (int k = 0; k < mLo; ++k)
      mo[k] = F.mor[st.up_stage.mor_local[st.lo_stage.mor_global[k]]];
    int idx = st.lower.find_object(Functor{st.lo_stage.cat, M.cat, std::move(ob), std::move(mo)});
    if (idx < 0) throw CheckFailure("restriction_bifibration: restricted functor not found");
    rob[i] = idx;
  }
  std::vector<Mor> rmo(st.upper.cat->num_morphisms());
  for (Mor f = 0; f < st.upper.cat->num_morphisms(); ++f) {
    std::vector<Mor> comp(nLo);
    for (int l = 0; l < nLo; ++l)
      comp[l] = st.upper.morphisms[f].at[st.up_stage.obj_local[st.lo_stage.obj_global[l]]];
    int idx = st.lower.find_morphism(rob[st.upper.cat->src(f)], rob[st.upper.cat->tgt(f)], comp);
    if (idx < 0) throw CheckFailure("restriction_bifibration: restricted transformation not found");
    rmo[f] = idx;
  }
  st.res = validate_functor(st.upper.cat, st.lower.cat, std::move(rob), std::move(rmo));

  auto bb = build_cleavage(st.res);
  if (!bb.ok())
    throw CheckFailure("restriction_bifibration: cleavage refused: " + bb.refusal->reason);
  st.bb = std::move(*bb);

  int nR = R.cat->num_objects();
  for (Mor f = 0; f < st.upper.cat->num_morphisms(); ++f) {
    const Functor& X = st.upper.objects[st.upper.cat->src(f)];
    const Functor& Y = st.upper.objects[st.upper.cat->tgt(f)];
    std::vector<Obj> XV(nR, -1), YV(nR, -1);
    for (Obj g : st.up_stage.obj_global) {
      XV[g] = X.ob[st.up_stage.obj_local[g]];
      YV[g] = Y.ob[st.up_stage.obj_local[g]];
    }
    bool cart = true, cocart = true;
    for (Obj r : st.level) {
      Obj xr = XV[r], yr = YV[r];
      if (xr != M.meet(yr, matching(R, M, r, XV))) cart = false;
      if (yr != M.join(xr, latching(R, M, r, YV))) cocart = false;
    }
    if (st.bb.cartesian.test(f) != cart || st.bb.cocartesian.test(f) != cocart)
      throw CheckFailure("restriction_bifibration: matching/latching criterion disagrees "
                         "with the cleavage at morphism " + std::to_string(f));
  }

  // identification (I): the fiber over A multievaluates to the product of
  // the intervals [L_r A, M_r A]
  for (size_t a = 0; a < st.lower.objects.size(); ++a) {
    std::vector<Obj> AV(nR, -1);
    for (Obj g : st.lo_stage.obj_global)
      AV[g] = st.lower.objects[a].ob[st.lo_stage.obj_local[g]];
    long long want = 1;
    for (Obj r : st.level) {
      Obj lb = latching(R, M, r, AV), ub = matching(R, M, r, AV);
      long long cnt = 0;
      for (Obj y = 0; y < M.cat->num_objects(); ++y)
        if (M.le(lb, y) && M.le(y, ub)) ++cnt;
      want *= cnt;
    }
    if ((long long)st.bb.fibers[a].cat->num_objects() != want)
      throw CheckFailure("restriction_bifibration: fiber is not the interval product");
  }
  return st;
}

// ---------------------------------------------------------------------------
// The Reedy triple on [R, M], straight from the definition: relative
// latching maps are cofibrations, components are weak equivalences,
// relative matching maps are fibrations. Joins and meets realize the
// pushout and pullback corners.

struct ReedyTriple {
  FunctorCat fc;
  ModelStructure model;
};

inline ReedyTriple reedy_triple(const ReedyCat& R, const FinLattice& M, const ModelStructure& m,
                                int size_guard = kDefaultSizeGuard) {
  if (m.cat().get() != M.cat.get())
    throw CheckFailure("reedy_triple: structure lives on another category");
  ReedyTriple out{functor_category(R.cat, M.cat, size_guard), ModelStructure{}};
  MorClass C(out.fc.cat), W(out.fc.cat), F(out.fc.cat);
  int nR = R.cat->num_objects();
  for (Mor f = 0; f < out.fc.cat->num_morphisms(); ++f) {
    const std::vector<Obj>& XV = out.fc.objects[out.fc.cat->src(f)].ob;
    const std::vector<Obj>& YV = out.fc.objects[out.fc.cat->tgt(f)].ob;
    bool c = true, w = true, fb = true;
    for (Obj r = 0; r < nR; ++r) {
      if (!m.cof.test(M.arrow(M.join(XV[r], latching(R, M, r, YV)), YV[r]))) c = false;
      if (!m.weq.test(M.arrow(XV[r], YV[r]))) w = false;
      if (!m.fib.test(M.arrow(XV[r], M.meet(YV[r], matching(R, M, r, XV))))) fb = false;
    }
    C.set(f, c), W.set(f, w), F.set(f, fb);
  }
  out.model = ModelStructure{C, W, F};
  return out;
}

// ---------------------------------------------------------------------------
// Degreewise construction: each stage extends the previous one through the
// restriction bifibration, whose fibers carry the interval-product
// structures; the Grothendieck construction must reproduce the Reedy triple
// of the stage.

struct ReedyModel {
  FunctorCat fc;
  std::optional<ModelStructure> model;
  Verdict refusal;

  bool ok() const { return model.has_value(); }
  const ModelStructure& operator*() const { return *model; }
  const ModelStructure* operator->() const { return &*model; }
};

inline ReedyModel reedy_construct(const ReedyCat& R, const FinLattice& M,
                                  const ModelStructure& m, int size_guard = kDefaultSizeGuard) {
  if (m.cat().get() != M.cat.get())
    throw CheckFailure("reedy_construct: structure lives on another category");
  int maxdeg = -1;
  for (int d : R.degree) maxdeg = std::max(maxdeg, d);

  Subcat prev_stage = reedy_stage(R, 0);
  FunctorCat prev = functor_category(prev_stage.cat, M.cat, size_guard);
  ModelStructure prev_model{class_all(prev.cat), class_all(prev.cat), class_all(prev.cat)};

  for (int mu = 0; mu <= maxdeg; ++mu) {
    ReedyStep st = restriction_bifibration(R, mu, M, size_guard);
    if (!table_equal(*prev.cat, *st.lower.cat))
      throw CheckFailure("reedy_construct: stage does not match the previous one");
    MorClass bc(st.lower.cat), bw(st.lower.cat), bf(st.lower.cat);
    bc.bits = prev_model.cof.bits;
    bw.bits = prev_model.weq.bits;
    bf.bits = prev_model.fib.bits;

    std::vector<ModelStructure> fms;
    for (size_t a = 0; a < st.lower.objects.size(); ++a) {
      const FiberView& fv = st.bb.fibers[a];
      MorClass C(fv.cat), W(fv.cat), F(fv.cat);
      for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
        Mor g = fv.mor_global[k];
        const Functor& X = st.upper.objects[st.upper.cat->src(g)];
        const Functor& Y = st.upper.objects[st.upper.cat->tgt(g)];
        bool c = true, w = true, fb = true;
        for (Obj r : st.level) {
          Mor comp = M.arrow(X.ob[st.up_stage.obj_local[r]], Y.ob[st.up_stage.obj_local[r]]);
          c = c && m.cof.test(comp);
          w = w && m.weq.test(comp);
          fb = fb && m.fib.test(comp);
        }
        C.set(k, c), W.set(k, w), F.set(k, fb);
      }
      fms.push_back(ModelStructure{C, W, F});
    }

    QuillenSetup s = make_setup(st.bb, ModelStructure{bc, bw, bf}, std::move(fms));
    TotalModel tm = grothendieck_model(s);
    if (!tm.ok()) {
      ReedyModel out{functor_category(R.cat, M.cat, size_guard), std::nullopt, Verdict{}};
      out.refusal = tm.refusal;
      out.refusal.condition = "step_refused";
      out.refusal.witness.add("degree", mu);
      out.refusal.trace.push_back(to_string(tm.refusal));
      return out;
    }

    ReedyTriple tr = reedy_triple(stage_reedy(R, mu + 1), M, m, size_guard);
    if (!table_equal(*tr.fc.cat, *st.upper.cat))
      throw CheckFailure("reedy_construct: stage functor categories differ");
    if (tm->cof.bits != tr.model.cof.bits || tm->weq.bits != tr.model.weq.bits ||
        tm->fib.bits != tr.model.fib.bits)
      throw CheckFailure("reedy_construct: degree " + std::to_string(mu) +
                         " differs from the Reedy triple");

    prev = std::move(st.upper);
    ModelStructure next{MorClass(prev.cat), MorClass(prev.cat), MorClass(prev.cat)};
    next.cof.bits = tm->cof.bits;
    next.weq.bits = tm->weq.bits;
    next.fib.bits = tm->fib.bits;
    prev_model = std::move(next);
  }

  ReedyModel out{functor_category(R.cat, M.cat, size_guard), std::nullopt, Verdict{}};
  if (!table_equal(*out.fc.cat, *prev.cat))
    throw CheckFailure("reedy_construct: final stage is not the whole diagram category");
  ModelStructure fin{MorClass(out.fc.cat), MorClass(out.fc.cat), MorClass(out.fc.cat)};
  fin.cof.bits = prev_model.cof.bits;
  fin.weq.bits = prev_model.weq.bits;
  fin.fib.bits = prev_model.fib.bits;
  Verdict ax = check_model_structure(fin);
  if (!ax.pass) throw CheckFailure("reedy_construct: output fails the axioms: " + to_string(ax));
  out.model = std::move(fin);
  return out;
}

// ---------------------------------------------------------------------------
// Bigluing of a natural transformation alpha: F => G between M -> N:
// objects are factorizations F m -> n -> G m of the components, morphisms
// are the commuting ladders. The category is rebuilt independently and must
// agree with the pullback of diagram categories on the nose.

struct Bigluing {
  CatPtr cat;
  Functor q;                      // first projection, to M
  std::vector<Obj> mcomp, ncomp;  // object decomposition
  std::vector<Mor> fpart, gpart;
  std::vector<Mor> hcomp, kcomp;  // morphism decomposition
};

inline Bigluing bigluing(const Functor& F, const Functor& G, const NatTransformation& alpha,
                         int size_guard = kDefaultSizeGuard) {
  if (F.dom.get() != G.dom.get() || F.cod.get() != G.cod.get())
    throw CheckFailure("bigluing: functors are not parallel");
  if (alpha.F.ob != F.ob || alpha.F.mor != F.mor || alpha.G.ob != G.ob || alpha.G.mor != G.mor)
    throw CheckFailure("bigluing: transformation does not connect the given functors");
  const CatPtr& Mc = F.dom;
  const CatPtr& Nc = F.cod;
  const FinCat& N = *Nc;

  auto d1 = chain_category(2);
  auto d2 = chain_category(3);
  FunctorCat AN = functor_category(d1, Nc, size_guard);
  FunctorCat PN = functor_category(d2, Nc, size_guard);
  Mor a01 = d1->hom(0, 1)[0];
  Mor b01 = d2->hom(0, 1)[0], b12 = d2->hom(1, 2)[0], b02 = d2->hom(0, 2)[0];

  auto arrow_object = [&](Obj x, Obj y, Mor k) {
    std::vector<Mor> mo(d1->num_morphisms());
    mo[d1->id(0)] = N.id(x);
    mo[d1->id(1)] = N.id(y);
    mo[a01] = k;
    int idx = AN.find_object(Functor{d1, Nc, {x, y}, std::move(mo)});
    if (idx < 0) throw CheckFailure("bigluing: arrow object not found");
    return idx;
  };

  // alpha as a functor into the arrow category
  std::vector<Obj> aob(Mc->num_objects());
  for (Obj x = 0; x < Mc->num_objects(); ++x)
    aob[x] = arrow_object(F.ob[x], G.ob[x], alpha.at[x]);
  std::vector<Mor> amo(Mc->num_morphisms());
  for (Mor h = 0; h < Mc->num_morphisms(); ++h) {
    int idx = AN.find_morphism(aob[Mc->src(h)], aob[Mc->tgt(h)], {F.mor[h], G.mor[h]});
    if (idx < 0) throw CheckFailure("bigluing: component square is not natural");
    amo[h] = idx;
  }
  Functor alphaF = validate_functor(Mc, AN.cat, std::move(aob), std::move(amo));

  // outer-composite restriction of composable pairs
  std::vector<Obj> rob(PN.objects.size());
  for (size_t i = 0; i < PN.objects.size(); ++i)
    rob[i] = arrow_object(PN.objects[i].ob[0], PN.objects[i].ob[2], PN.objects[i].mor[b02]);
  std::vector<Mor> rmo(PN.cat->num_morphisms());
  for (Mor f = 0; f < PN.cat->num_morphisms(); ++f) {
    const NatTransformation& kappa = PN.morphisms[f];
    int idx = AN.find_morphism(rob[PN.cat->src(f)], rob[PN.cat->tgt(f)],
                               {kappa.at[0], kappa.at[2]});
    if (idx < 0) throw CheckFailure("bigluing: outer square not found");
    rmo[f] = idx;
  }
  Functor resF = validate_functor(PN.cat, AN.cat, std::move(rob), std::move(rmo));

  PullbackCat pb = category_pullback(alphaF, resF);

  // the factorizations counted from first principles
  long long nobj = 0;
  for (Obj x = 0; x < Mc->num_objects(); ++x)
    for (Obj n = 0; n < N.num_objects(); ++n)
      for (Mor f : N.hom(F.ob[x], n))
        for (Mor g : N.hom(n, G.ob[x]))
          if (N.compose(g, f) == alpha.at[x]) ++nobj;
  if (nobj != (long long)pb.objects.size())
    throw CheckFailure("bigluing: object count differs from the pullback");

  Bigluing out;
  for (auto& [x, d] : pb.objects) {
    const Functor& D = PN.objects[d];
    Mor f = D.mor[b01], g = D.mor[b12];
    if (D.ob[0] != F.ob[x] || D.ob[2] != G.ob[x] || N.compose(g, f) != alpha.at[x])
      throw CheckFailure("bigluing: pullback object is not a factorization");
    out.mcomp.push_back(x);
    out.ncomp.push_back(D.ob[1]);
    out.fpart.push_back(f);
    out.gpart.push_back(g);
  }

  // the ladders counted from first principles
  auto ladder = [&](int i, int j, Mor h, Mor k) {
    return N.compose(k, out.fpart[i]) == N.compose(out.fpart[j], F.mor[h]) &&
           N.compose(out.gpart[j], k) == N.compose(G.mor[h], out.gpart[i]);
  };
  long long nmor = 0;
  for (size_t i = 0; i < pb.objects.size(); ++i)
    for (size_t j = 0; j < pb.objects.size(); ++j)
      for (Mor h : Mc->hom(out.mcomp[i], out.mcomp[j]))
        for (Mor k : N.hom(out.ncomp[i], out.ncomp[j]))
          if (ladder((int)i, (int)j, h, k)) ++nmor;
  if (nmor != (long long)pb.morphisms.size())
    throw CheckFailure("bigluing: ladder count differs from the pullback");

  RawCat raw;
  raw.objects = (int)pb.objects.size();
  std::map<std::tuple<Obj, Obj, Mor, Mor>, Mor> midx;
  for (size_t t = 0; t < pb.morphisms.size(); ++t) {
    auto [h, e] = pb.morphisms[t];
    const NatTransformation& kappa = PN.morphisms[e];
    Obj i = pb.cat->src((Mor)t), j = pb.cat->tgt((Mor)t);
    Mor k = kappa.at[1];
    if (kappa.at[0] != F.mor[h] || kappa.at[2] != G.mor[h] || !ladder(i, j, h, k))
      throw CheckFailure("bigluing: pullback morphism is not a ladder");
    out.hcomp.push_back(h);
    out.kcomp.push_back(k);
    raw.mor.push_back({i, j});
    raw.mor_name.push_back(pb.cat->mor_name[t]);
    midx[{i, j, h, k}] = (Mor)t;
  }
  raw.identity.resize(raw.objects);
  for (Obj o = 0; o < raw.objects; ++o) {
    raw.identity[o] = midx.at({o, o, Mc->id(out.mcomp[o]), N.id(out.ncomp[o])});
    raw.obj_name.push_back(pb.cat->obj_name[o]);
  }
  for (Mor g2 = 0; g2 < (Mor)raw.mor.size(); ++g2)
    for (Mor f2 = 0; f2 < (Mor)raw.mor.size(); ++f2) {
      if (raw.mor[f2].second != raw.mor[g2].first) continue;
      auto it = midx.find({raw.mor[f2].first, raw.mor[g2].second,
                           Mc->compose(out.hcomp[g2], out.hcomp[f2]),
                           N.compose(out.kcomp[g2], out.kcomp[f2])});
      if (it == midx.end()) throw CheckFailure("bigluing: ladders not closed under composition");
      raw.compositions.push_back({g2, f2, it->second});
    }
  out.cat = validate_category(raw);
  if (!table_equal(*out.cat, *pb.cat))
    throw CheckFailure("bigluing: direct construction differs from the pullback");
  out.q = validate_functor(out.cat, Mc, out.mcomp, out.hcomp);
  return out;
}

// ---------------------------------------------------------------------------
// Shulman's bigluing theorem, decided exhaustively: F must send acyclic
// cofibrations to couniversal weak equivalences and G acyclic fibrations to
// universal ones; the model structure then arises through the projection
// to M with interval fibers, and its classes must match the displayed
// descriptions.

inline Verdict check_shulman(const Functor& F, const Functor& G, const NatTransformation& alpha,
                             const ModelStructure& mM, const FinLattice& NL,
                             const ModelStructure& mN, int size_guard = kDefaultSizeGuard) {
  if (mM.cat().get() != F.dom.get() || mN.cat().get() != NL.cat.get() ||
      F.cod.get() != NL.cat.get())
    throw CheckFailure("check_shulman: structures live on the wrong categories");
  const FinCat& N = *NL.cat;
  Verdict out;
  out.condition = "shulman";

  MorClass macof = mM.acof(), mafib = mM.afib();
  constexpr auto npos = boost::dynamic_bitset<>::npos;
  for (size_t a = macof.bits.find_first(); a != npos; a = macof.bits.find_next(a)) {
    Obj x = N.src(F.mor[(Mor)a]), y = N.tgt(F.mor[(Mor)a]);
    for (Obj z = 0; z < N.num_objects(); ++z) {
      if (!NL.le(x, z)) continue;
      if (!mN.weq.test(NL.arrow(z, NL.join(y, z)))) {
        out.witness.add("acof", (long long)a);
        out.witness.add("pushout_along", z);
        out.witness.note = "image pushout is not a weak equivalence";
        return out;
      }
    }
  }
  for (size_t a = mafib.bits.find_first(); a != npos; a = mafib.bits.find_next(a)) {
    Obj x = N.src(G.mor[(Mor)a]), y = N.tgt(G.mor[(Mor)a]);
    for (Obj z = 0; z < N.num_objects(); ++z) {
      if (!NL.le(z, y)) continue;
      if (!mN.weq.test(NL.arrow(NL.meet(x, z), z))) {
        out.witness.add("afib", (long long)a);
        out.witness.add("pullback_along", z);
        out.witness.note = "image pullback is not a weak equivalence";
        return out;
      }
    }
  }

  Bigluing gl = bigluing(F, G, alpha, size_guard);
  auto bbr = build_cleavage(gl.q);
  if (!bbr.ok()) throw CheckFailure("check_shulman: projection is not a bifibration");
  Bifibration bb = std::move(*bbr);

  std::vector<ModelStructure> fms;
  for (Obj A = 0; A < bb.base().num_objects(); ++A) {
    const FiberView& fv = bb.fibers[A];
    MorClass C(fv.cat), W(fv.cat), Fb(fv.cat);
    for (Mor k = 0; k < fv.cat->num_morphisms(); ++k) {
      Mor g = gl.kcomp[fv.mor_global[k]];
      C.set(k, mN.cof.test(g));
      W.set(k, mN.weq.test(g));
      Fb.set(k, mN.fib.test(g));
    }
    fms.push_back(ModelStructure{C, W, Fb});
  }
  QuillenSetup s = make_setup(std::move(bb), mM, std::move(fms));
  TotalModel tm = grothendieck_model(s);
  if (!tm.ok())
    throw CheckFailure("check_shulman: construction refused despite the hypotheses: " +
                       to_string(tm.refusal));

  // the theorem's three classes
  for (Mor t = 0; t < gl.cat->num_morphisms(); ++t) {
    Mor h = gl.hcomp[t], k = gl.kcomp[t];
    Obj i = gl.cat->src(t), j = gl.cat->tgt(t);
    bool cof = mM.cof.test(h) &&
               mN.cof.test(NL.arrow(NL.join(N.tgt(F.mor[h]), gl.ncomp[i]), gl.ncomp[j]));
    bool fib = mM.fib.test(h) &&
               mN.fib.test(NL.arrow(gl.ncomp[i], NL.meet(N.src(G.mor[h]), gl.ncomp[j])));
    bool weq = mM.weq.test(h) && mN.weq.test(k);
    if (tm->cof.test(t) != cof || tm->fib.test(t) != fib || tm->weq.test(t) != weq)
      throw CheckFailure("check_shulman: classes differ from the theorem at morphism " +
                         std::to_string(t));
  }
  out.pass = true;
  out.witness.add("objects", (long long)gl.cat->num_objects());
  out.witness.add("morphisms", (long long)gl.cat->num_morphisms());
  return out;
}

}  // namespace quillen
