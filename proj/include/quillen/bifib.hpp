#pragma once
// Grothendieck bifibrations presented by a total functor p: E -> B.
// Cartesian and cocartesian morphisms are detected by checking the universal
// property exhaustively; a cleavage is a deterministic choice of lifts, and
// everything else (fibers, push/pull functors, adjunctions, vertical and
// middle factorizations, pseudo-functoriality isomorphisms, mates) is
// computed from the cleavage by unique-factorization searches.

#include "fincat.hpp"
#include "model.hpp"
#include "verdict.hpp"

namespace quillen {

struct Refusal {
  std::string reason;
  Witness witness;
};

template <typename T>
struct OrRefusal {
  std::optional<T> value;
  std::optional<Refusal> refusal;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }

  static OrRefusal yes(T v) {
    OrRefusal r;
    r.value = std::move(v);
    return r;
  }
  static OrRefusal no(Refusal rf) {
    OrRefusal r;
    r.refusal = std::move(rf);
    return r;
  }
};

inline bool is_cartesian(const Functor& p, Mor f) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  Obj X = E.src(f), Y = E.tgt(f);
  Mor u = p.mor[f];
  for (Obj Z = 0; Z < E.num_objects(); ++Z)
    for (Mor v : B.hom(p.ob[Z], p.ob[X])) {
      Mor uv = B.compose(u, v);
      for (Mor g : E.hom(Z, Y)) {
        if (p.mor[g] != uv) continue;
        int count = 0;
        for (Mor h : E.hom(Z, X))
          if (p.mor[h] == v && E.compose(f, h) == g) ++count;
        if (count != 1) return false;
      }
    }
  return true;
}

inline bool is_cocartesian(const Functor& p, Mor f) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  Obj X = E.src(f), Y = E.tgt(f);
  Mor u = p.mor[f];
  for (Obj Z = 0; Z < E.num_objects(); ++Z)
    for (Mor v : B.hom(p.ob[Y], p.ob[Z])) {
      Mor vu = B.compose(v, u);
      for (Mor g : E.hom(X, Z)) {
        if (p.mor[g] != vu) continue;
        int count = 0;
        for (Mor h : E.hom(Y, Z))
          if (p.mor[h] == v && E.compose(h, f) == g) ++count;
        if (count != 1) return false;
      }
    }
  return true;
}

struct FiberView {
  Obj base = -1;
  CatPtr cat;
  Functor embed;
  std::vector<Obj> obj_global;
  std::vector<Mor> mor_global;
  std::vector<int> obj_local, mor_local;  // -1 where absent
};

enum class TieBreak { smallest, largest };

struct Bifibration {
  Functor p;
  TieBreak tie = TieBreak::smallest;
  MorClass cartesian, cocartesian;         // all such morphisms of the total category
  std::vector<std::vector<Mor>> cart;      // [u][Y above tgt u] = chosen rho, else -1
  std::vector<std::vector<Mor>> cocart;    // [u][X above src u] = chosen lambda, else -1
  std::vector<FiberView> fibers;           // per base object

  const FinCat& total() const { return *p.dom; }
  const FinCat& base() const { return *p.cod; }
  Mor above(Mor f) const { return p.mor[f]; }
  bool vertical(Mor f) const { return p.cod->is_id(p.mor[f]); }

  Mor rho(Mor u, Obj Y) const {
    Mor r = cart[u][Y];
    if (r < 0) throw CheckFailure("rho: no cleavage entry");
    return r;
  }
  Mor lambda(Mor u, Obj X) const {
    Mor l = cocart[u][X];
    if (l < 0) throw CheckFailure("lambda: no cleavage entry");
    return l;
  }
  Obj pull_obj(Mor u, Obj Y) const { return total().src(rho(u, Y)); }
  Obj push_obj(Mor u, Obj X) const { return total().tgt(lambda(u, X)); }
};

// The subcategory above a base object: objects over A, morphisms over id_A.
inline FiberView make_fiber(const Functor& p, Obj A) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  FiberView fv;
  fv.base = A;
  fv.obj_local.assign(E.num_objects(), -1);
  fv.mor_local.assign(E.num_morphisms(), -1);
  auto cat = std::make_shared<FinCat>();
  for (Obj X = 0; X < E.num_objects(); ++X)
    if (p.ob[X] == A) {
      fv.obj_local[X] = (int)fv.obj_global.size();
      fv.obj_global.push_back(X);
      cat->obj_name.push_back(E.obj_name[X]);
    }
  for (Mor f = 0; f < E.num_morphisms(); ++f)
    if (p.mor[f] == B.id(A)) {
      fv.mor_local[f] = (int)fv.mor_global.size();
      fv.mor_global.push_back(f);
      cat->mor_src.push_back(fv.obj_local[E.src(f)]);
      cat->mor_tgt.push_back(fv.obj_local[E.tgt(f)]);
      cat->mor_name.push_back(E.mor_name[f]);
    }
  cat->obj_id.resize(fv.obj_global.size());
  for (size_t i = 0; i < fv.obj_global.size(); ++i)
    cat->obj_id[i] = fv.mor_local[E.id(fv.obj_global[i])];
  int M = (int)fv.mor_global.size();
  cat->table.assign((size_t)M * M, -1);
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f)
      if (cat->mor_tgt[f] == cat->mor_src[g])
        cat->table[(size_t)g * M + f] =
            fv.mor_local[E.compose(fv.mor_global[g], fv.mor_global[f])];
  cat->finalize();
  fv.cat = cat;
  fv.embed = validate_functor(cat, p.dom, fv.obj_global, fv.mor_global);
  return fv;
}

inline OrRefusal<Bifibration> build_cleavage(const Functor& p,
                                             TieBreak tie = TieBreak::smallest) {
  const FinCat& E = *p.dom;
  const FinCat& B = *p.cod;
  Bifibration bb;
  bb.p = p;
  bb.tie = tie;
  bb.cartesian = MorClass(p.dom);
  bb.cocartesian = MorClass(p.dom);
  for (Mor f = 0; f < E.num_morphisms(); ++f) {
    if (is_cartesian(p, f)) bb.cartesian.set(f);
    if (is_cocartesian(p, f)) bb.cocartesian.set(f);
  }
  bb.cart.assign(B.num_morphisms(), std::vector<Mor>(E.num_objects(), -1));
  bb.cocart.assign(B.num_morphisms(), std::vector<Mor>(E.num_objects(), -1));
  for (Mor u = 0; u < B.num_morphisms(); ++u) {
    for (Obj Y = 0; Y < E.num_objects(); ++Y) {
      if (p.ob[Y] != B.tgt(u)) continue;
      Mor pick = -1;
      for (Mor f = 0; f < E.num_morphisms(); ++f) {
        if (E.tgt(f) != Y || p.mor[f] != u || !bb.cartesian.test(f)) continue;
        if (pick < 0 || (tie == TieBreak::largest ? f > pick : f < pick)) pick = f;
      }
      if (pick < 0) {
        Refusal r;
        r.reason = "NotBifibration";
        r.witness.add("base_morphism", u);
        r.witness.add("object", Y);
        r.witness.note = "no cartesian lift";
        return OrRefusal<Bifibration>::no(std::move(r));
      }
      bb.cart[u][Y] = pick;
    }
    for (Obj X = 0; X < E.num_objects(); ++X) {
      if (p.ob[X] != B.src(u)) continue;
      Mor pick = -1;
      for (Mor f = 0; f < E.num_morphisms(); ++f) {
        if (E.src(f) != X || p.mor[f] != u || !bb.cocartesian.test(f)) continue;
        if (pick < 0 || (tie == TieBreak::largest ? f > pick : f < pick)) pick = f;
      }
      if (pick < 0) {
        Refusal r;
        r.reason = "NotBifibration";
        r.witness.add("base_morphism", u);
        r.witness.add("object", X);
        r.witness.note = "no cocartesian lift";
        return OrRefusal<Bifibration>::no(std::move(r));
      }
      bb.cocart[u][X] = pick;
    }
  }
  for (Obj A = 0; A < B.num_objects(); ++A) bb.fibers.push_back(make_fiber(p, A));
  return OrRefusal<Bifibration>::yes(std::move(bb));
}

inline const FiberView& fiber(const Bifibration& bb, Obj A) { return bb.fibers[A]; }

// ---------------------------------------------------------------------------
// Unique factorizations through chosen lifts. Uniqueness is part of the
// universal property; the searches assert it.

// Unique h above w with h ∘ e = g, for cocartesian e.
inline Mor factor_through_cocartesian(const Bifibration& bb, Mor e, Mor g, Mor w) {
  const FinCat& E = bb.total();
  if (!bb.cocartesian.test(e)) throw CheckFailure("factor_through_cocartesian: e not cocartesian");
  if (bb.above(g) != bb.base().compose(w, bb.above(e)))
    throw FactorizationMismatch("factor_through_cocartesian: base mismatch");
  Mor found = -1;
  int count = 0;
  for (Mor h : E.hom(E.tgt(e), E.tgt(g)))
    if (bb.above(h) == w && E.compose(h, e) == g) {
      found = h;
      ++count;
    }
  if (count != 1) throw CheckFailure("factor_through_cocartesian: expected a unique filler");
  return found;
}

// Unique h above w with e ∘ h = g, for cartesian e.
inline Mor factor_through_cartesian(const Bifibration& bb, Mor e, Mor g, Mor w) {
  const FinCat& E = bb.total();
  if (!bb.cartesian.test(e)) throw CheckFailure("factor_through_cartesian: e not cartesian");
  if (bb.above(g) != bb.base().compose(bb.above(e), w))
    throw FactorizationMismatch("factor_through_cartesian: base mismatch");
  Mor found = -1;
  int count = 0;
  for (Mor h : E.hom(E.src(g), E.src(e)))
    if (bb.above(h) == w && E.compose(e, h) == g) {
      found = h;
      ++count;
    }
  if (count != 1) throw CheckFailure("factor_through_cartesian: expected a unique filler");
  return found;
}

struct VerticalFactors {
  Mor pushfact;  // u_!X -> Y, vertical, pushfact ∘ lambda = f
  Mor pullfact;  // X -> u*Y, vertical, rho ∘ pullfact = f
};

inline VerticalFactors vertical_factors(const Bifibration& bb, Mor f) {
  const FinCat& E = bb.total();
  const FinCat& B = bb.base();
  Mor u = bb.above(f);
  Mor lam = bb.lambda(u, E.src(f));
  Mor rho = bb.rho(u, E.tgt(f));
  VerticalFactors out;
  out.pushfact = factor_through_cocartesian(bb, lam, f, B.id(B.tgt(u)));
  out.pullfact = factor_through_cartesian(bb, rho, f, B.id(B.src(u)));
  return out;
}

// The unique vertical m: j_!X -> q*Y with rho_q ∘ m ∘ lambda_j = f, for a
// base factorization p(f) = q ∘ j. Both routes (through the cocartesian lift
// first, or through the cartesian lift first) are computed and must agree.
inline Mor middle_factor(const Bifibration& bb, Mor f, Mor j, Mor q) {
  const FinCat& E = bb.total();
  const FinCat& B = bb.base();
  if (!B.composable(q, j) || bb.above(f) != B.compose(q, j))
    throw FactorizationMismatch("middle_factor: p(f) != q ∘ j");
  Mor lam = bb.lambda(j, E.src(f));
  Mor rho = bb.rho(q, E.tgt(f));
  Mor k = factor_through_cocartesian(bb, lam, f, q);
  Mor m1 = factor_through_cartesian(bb, rho, k, B.id(B.tgt(j)));
  Mor ell = factor_through_cartesian(bb, rho, f, j);
  Mor m2 = factor_through_cocartesian(bb, lam, ell, B.id(B.tgt(j)));
  if (m1 != m2) throw CheckFailure("middle_factor: the two routes disagree");
  return m1;
}

// ---------------------------------------------------------------------------
// Push and pull functors between fibers, and their adjunction.

inline Functor push_functor(const Bifibration& bb, Mor u) {
  const FinCat& B = bb.base();
  const FiberView& src = bb.fibers[B.src(u)];
  const FiberView& tgt = bb.fibers[B.tgt(u)];
  std::vector<Obj> ob(src.cat->num_objects());
  std::vector<Mor> mor(src.cat->num_morphisms());
  for (Obj x = 0; x < src.cat->num_objects(); ++x)
    ob[x] = tgt.obj_local[bb.push_obj(u, src.obj_global[x])];
  const FinCat& E = bb.total();
  for (Mor k = 0; k < src.cat->num_morphisms(); ++k) {
    Mor gk = src.mor_global[k];
    Mor lam = bb.lambda(u, E.tgt(gk));
    Mor t = factor_through_cocartesian(bb, bb.lambda(u, E.src(gk)), E.compose(lam, gk),
                                       B.id(B.tgt(u)));
    mor[k] = tgt.mor_local[t];
  }
  return validate_functor(src.cat, tgt.cat, std::move(ob), std::move(mor));
}

inline Functor pull_functor(const Bifibration& bb, Mor u) {
  const FinCat& B = bb.base();
  const FiberView& src = bb.fibers[B.tgt(u)];
  const FiberView& tgt = bb.fibers[B.src(u)];
  std::vector<Obj> ob(src.cat->num_objects());
  std::vector<Mor> mor(src.cat->num_morphisms());
  for (Obj y = 0; y < src.cat->num_objects(); ++y)
    ob[y] = tgt.obj_local[bb.pull_obj(u, src.obj_global[y])];
  const FinCat& E = bb.total();
  for (Mor k = 0; k < src.cat->num_morphisms(); ++k) {
    Mor gk = src.mor_global[k];
    Mor rho = bb.rho(u, E.src(gk));
    Mor s = factor_through_cartesian(bb, bb.rho(u, E.tgt(gk)), E.compose(gk, rho),
                                     B.id(B.src(u)));
    mor[k] = tgt.mor_local[s];
  }
  return validate_functor(src.cat, tgt.cat, std::move(ob), std::move(mor));
}

// Transposition hom(u_!X, Y) ≅ hom(X, u*Y) through the chosen lifts.
inline OrRefusal<AdjunctionData> adjunction_check(const Bifibration& bb, Mor u) {
  const FinCat& B = bb.base();
  const FinCat& E = bb.total();
  const FiberView& fA = bb.fibers[B.src(u)];
  const FiberView& fB = bb.fibers[B.tgt(u)];
  AdjunctionData adj;
  adj.left = push_functor(bb, u);
  adj.right = pull_functor(bb, u);
  adj.transpose.resize((size_t)fA.cat->num_objects() * fB.cat->num_objects());
  for (Obj X = 0; X < fA.cat->num_objects(); ++X)
    for (Obj Y = 0; Y < fB.cat->num_objects(); ++Y) {
      Obj gX = fA.obj_global[X], gY = fB.obj_global[Y];
      Mor lam = bb.lambda(u, gX);
      for (Mor g : fB.cat->hom(adj.left.ob[X], Y)) {
        Mor composite = E.compose(fB.mor_global[g], lam);  // X -> Y above u
        Mor s = factor_through_cartesian(bb, bb.rho(u, gY), composite, B.id(B.src(u)));
        adj.transpose[(size_t)X * fB.cat->num_objects() + Y][g] = fA.mor_local[s];
      }
    }
  Verdict v = adjunction_check(adj);
  if (!v.pass) {
    Refusal r;
    r.reason = "AdjunctionCheckFailed";
    r.witness = v.witness;
    return OrRefusal<AdjunctionData>::no(std::move(r));
  }
  return OrRefusal<AdjunctionData>::yes(std::move(adj));
}

// ---------------------------------------------------------------------------
// Pseudo-functoriality isomorphisms.

// The unique vertical iso (vu)_!X -> v_!u_!X commuting with the chosen
// cocartesian lifts.
inline Mor pseudo_iso_push(const Bifibration& bb, Mor u, Mor v, Obj X) {
  const FinCat& E = bb.total();
  const FinCat& B = bb.base();
  if (!B.composable(v, u)) throw FactorizationMismatch("pseudo_iso_push: not composable");
  Mor vu = B.compose(v, u);
  Mor lam_u = bb.lambda(u, X);
  Mor lam_v = bb.lambda(v, E.tgt(lam_u));
  Mor phi = factor_through_cocartesian(bb, bb.lambda(vu, X), E.compose(lam_v, lam_u),
                                       B.id(B.tgt(v)));
  if (!is_iso(E, phi)) throw CheckFailure("pseudo_iso_push: factor is not an isomorphism");
  return phi;
}

// The unique vertical iso (vu)*Y -> u*v*Y commuting with the chosen
// cartesian lifts.
inline Mor pseudo_iso_pull(const Bifibration& bb, Mor u, Mor v, Obj Y) {
  const FinCat& E = bb.total();
  const FinCat& B = bb.base();
  if (!B.composable(v, u)) throw FactorizationMismatch("pseudo_iso_pull: not composable");
  Mor vu = B.compose(v, u);
  Mor rho_v = bb.rho(v, Y);
  Mor rho_u = bb.rho(u, E.src(rho_v));
  Mor composite = E.compose(rho_v, rho_u);  // u*v*Y -> Y, cartesian
  if (!bb.cartesian.test(composite))
    throw CheckFailure("pseudo_iso_pull: composite of cartesian lifts is not cartesian");
  Mor psi = factor_through_cartesian(bb, composite, bb.rho(vu, Y), B.id(B.src(u)));
  if (!is_iso(E, psi)) throw CheckFailure("pseudo_iso_pull: factor is not an isomorphism");
  return psi;
}

// ---------------------------------------------------------------------------
// The mate of a commutative base square (right ∘ top = bottom ∘ left):
//
//        A --top--> C                  u'_! v*  ==>  v'* u_!
//   left |          | right
//        v          v
//        B -bottom-> D
//
// a natural transformation between functors E_C -> E_B.
inline NatTransformation mate(const Bifibration& bb, const CommSquare& sq) {
  const FinCat& E = bb.total();
  const FinCat& B = bb.base();
  Mor v = sq.top, uprime = sq.left, u = sq.right, vprime = sq.bottom;
  if (B.compose(u, v) != B.compose(vprime, uprime))
    throw FactorizationMismatch("mate: base square does not commute");
  const FiberView& fC = bb.fibers[B.tgt(v)];
  const FiberView& fB = bb.fibers[B.tgt(uprime)];
  Functor F = compose_functor(push_functor(bb, uprime), pull_functor(bb, v));
  Functor G = compose_functor(pull_functor(bb, vprime), push_functor(bb, u));
  std::vector<Mor> at(fC.cat->num_objects());
  for (Obj Z = 0; Z < fC.cat->num_objects(); ++Z) {
    Obj gZ = fC.obj_global[Z];
    Mor rho_v = bb.rho(v, gZ);                    // v*Z -> Z
    Mor lam_u = bb.lambda(u, gZ);                 // Z -> u_!Z
    Mor c = E.compose(lam_u, rho_v);              // v*Z -> u_!Z above u∘v
    Mor rho_vp = bb.rho(vprime, E.tgt(lam_u));    // v'*u_!Z -> u_!Z
    Mor d = factor_through_cartesian(bb, rho_vp, c, uprime);
    Mor lam_up = bb.lambda(uprime, E.src(rho_v)); // v*Z -> u'_!v*Z
    Mor mu = factor_through_cocartesian(bb, lam_up, d, B.id(B.tgt(uprime)));
    at[Z] = fB.mor_local[mu];
  }
  return validate_nat(std::move(F), std::move(G), std::move(at));
}

}  // namespace quillen
