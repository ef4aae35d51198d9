#pragma once
// Model structures on finite categories: the 2-out-of-3 axiom on top of a
// pair of intertwined weak factorization systems, plus Quillen adjunctions
// between them. Enumeration works through wfs pairs: a model structure is
// determined by its cofibrations and fibrations, since the acyclic classes
// are lifting complements and every weak equivalence is an acyclic
// cofibration followed by an acyclic fibration.

#include <cstdint>

#include "fincat.hpp"
#include "lifting.hpp"
#include "verdict.hpp"

namespace quillen {

struct NotIntertwined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelStructure {
  MorClass cof, weq, fib;

  CatPtr cat() const { return cof.cat; }
  MorClass acof() const { return cof & weq; }
  MorClass afib() const { return fib & weq; }
  Wfs cof_wfs() const { return {cof, afib()}; }    // (C, F ∩ W)
  Wfs acof_wfs() const { return {acof(), fib}; }   // (C ∩ W, F)
};

inline Verdict check_two_of_three(const MorClass& W) {
  const FinCat& c = *W.cat;
  Verdict v;
  v.condition = "two_of_three";
  for (Mor g = 0; g < c.num_morphisms(); ++g)
    for (Mor f = 0; f < c.num_morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      Mor gf = c.compose(g, f);
      int n = (int)W.test(f) + (int)W.test(g) + (int)W.test(gf);
      if (n == 2) {
        v.witness.add("f", f);
        v.witness.add("g", g);
        v.witness.add("gf", gf);
        v.witness.note = "exactly two of f, g, g∘f are weak equivalences";
        return v;
      }
    }
  v.pass = true;
  return v;
}

inline Verdict check_model_structure(const MorClass& C, const MorClass& W, const MorClass& F) {
  Verdict v;
  v.condition = "model_structure";
  Verdict t = check_two_of_three(W);
  if (!t.pass) {
    v.witness = t.witness;
    v.trace.push_back("2-out-of-3 fails");
    return v;
  }
  Verdict w1 = check_wfs(C, F & W);
  if (!w1.pass) {
    v.witness = w1.witness;
    v.trace.push_back("(cof, acyclic fib) is not a wfs");
    return v;
  }
  Verdict w2 = check_wfs(C & W, F);
  if (!w2.pass) {
    v.witness = w2.witness;
    v.trace.push_back("(acyclic cof, fib) is not a wfs");
    return v;
  }
  v.pass = true;
  v.witness.add("cof_size", (long long)C.count());
  v.witness.add("weq_size", (long long)W.count());
  v.witness.add("fib_size", (long long)F.count());
  return v;
}

inline Verdict check_model_structure(const ModelStructure& ms) {
  return check_model_structure(ms.cof, ms.weq, ms.fib);
}

// Build the model structure candidate determined by an intertwined pair of
// wfs: the first provides (acyclic cof, fib), the second (cof, acyclic fib).
// Weak equivalences are the composites of the acyclic classes; the axioms
// except 2-out-of-3 hold by construction.
inline ModelStructure model_from_intertwined(const Wfs& acof_fib, const Wfs& cof_afib) {
  Verdict v1 = check_wfs(acof_fib);
  if (!v1.pass) throw HypothesisNotMet("model_from_intertwined: first pair is not a wfs");
  Verdict v2 = check_wfs(cof_afib);
  if (!v2.pass) throw HypothesisNotMet("model_from_intertwined: second pair is not a wfs");
  Verdict in = check_intertwined(acof_fib, cof_afib);
  if (!in.pass) throw NotIntertwined("model_from_intertwined: " + to_string(in));
  MorClass W = class_composite(cof_afib.right, acof_fib.left);
  // Intertwined wfs force W ∩ cof = acof and W ∩ fib = afib.
  if (!((W & cof_afib.left) == acof_fib.left) || !((W & acof_fib.right) == cof_afib.right))
    throw CheckFailure("model_from_intertwined: acyclic class identities fail");
  return ModelStructure{cof_afib.left, W, acof_fib.right};
}

// A functor preserves and reflects weak equivalences.
inline Verdict is_homotopically_conservative(const Functor& F, const MorClass& Wdom,
                                             const MorClass& Wcod) {
  Verdict v;
  v.condition = "homotopically_conservative";
  for (Mor f = 0; f < F.dom->num_morphisms(); ++f)
    if (Wdom.test(f) != Wcod.test(F.mor[f])) {
      v.witness.add("morphism", f);
      v.witness.add("image", F.mor[f]);
      v.witness.note = Wdom.test(f) ? "weak equivalence with non-equivalence image"
                                    : "image is a weak equivalence but the morphism is not";
      return v;
    }
  v.pass = true;
  return v;
}

// ---------------------------------------------------------------------------
// Adjunctions with explicit transposition tables. The transpose of
// g: left(X) -> Y is a morphism X -> right(Y); the table is indexed by the
// pair (X, Y) since the object maps need not be injective.

struct AdjunctionData {
  Functor left, right;  // left: M -> N, right: N -> M
  std::vector<std::map<Mor, Mor>> transpose;  // [X * nN + Y]: g -> f

  Obj nN() const { return left.cod->num_objects(); }
  Mor transpose_right(Obj X, Obj Y, Mor g) const {
    auto& t = transpose[(size_t)X * nN() + Y];
    auto it = t.find(g);
    if (it == t.end()) throw CheckFailure("transpose_right: no entry");
    return it->second;
  }
  Mor transpose_left(Obj X, Obj Y, Mor f) const {
    auto& t = transpose[(size_t)X * nN() + Y];
    for (auto& [g, ff] : t)
      if (ff == f) return g;
    throw CheckFailure("transpose_left: no entry");
  }
};

inline AdjunctionData identity_adjunction(const CatPtr& c) {
  AdjunctionData a;
  a.left = identity_functor(c);
  a.right = identity_functor(c);
  a.transpose.resize((size_t)c->num_objects() * c->num_objects());
  for (Obj x = 0; x < c->num_objects(); ++x)
    for (Obj y = 0; y < c->num_objects(); ++y)
      for (Mor g : c->hom(x, y)) a.transpose[(size_t)x * c->num_objects() + y][g] = g;
  return a;
}

inline Verdict adjunction_check(const AdjunctionData& a) {
  Verdict v;
  v.condition = "adjunction";
  const FinCat& M = *a.left.dom;
  const FinCat& N = *a.left.cod;
  if (a.right.dom.get() != a.left.cod.get() || a.right.cod.get() != a.left.dom.get()) {
    v.witness.note = "functors are not a matching pair";
    return v;
  }
  if (a.transpose.size() != (size_t)M.num_objects() * N.num_objects()) {
    v.witness.note = "transpose table has wrong shape";
    return v;
  }
  for (Obj X = 0; X < M.num_objects(); ++X)
    for (Obj Y = 0; Y < N.num_objects(); ++Y) {
      auto& t = a.transpose[(size_t)X * N.num_objects() + Y];
      auto& homN = N.hom(a.left.ob[X], Y);
      auto& homM = M.hom(X, a.right.ob[Y]);
      if (t.size() != homN.size() || t.size() != homM.size()) {
        v.witness.add("X", X);
        v.witness.add("Y", Y);
        v.witness.note = "transposition is not a bijection";
        return v;
      }
      boost::dynamic_bitset<> seen(M.num_morphisms());
      for (Mor g : homN) {
        auto it = t.find(g);
        if (it == t.end() || M.src(it->second) != X || M.tgt(it->second) != a.right.ob[Y] ||
            seen.test(it->second)) {
          v.witness.add("X", X);
          v.witness.add("Y", Y);
          v.witness.add("g", g);
          v.witness.note = "transposition is not a bijection";
          return v;
        }
        seen.set(it->second);
      }
    }
  // Naturality in both variables.
  for (Obj X = 0; X < M.num_objects(); ++X)
    for (Obj Y = 0; Y < N.num_objects(); ++Y)
      for (Mor g : N.hom(a.left.ob[X], Y)) {
        Mor f = a.transpose_right(X, Y, g);
        for (Mor h = 0; h < M.num_morphisms(); ++h) {
          if (M.tgt(h) != X) continue;
          Mor lhs = a.transpose_right(M.src(h), Y, N.compose(g, a.left.mor[h]));
          if (lhs != M.compose(f, h)) {
            v.witness.add("g", g);
            v.witness.add("h", h);
            v.witness.note = "naturality in the domain variable fails";
            return v;
          }
        }
        for (Mor k = 0; k < N.num_morphisms(); ++k) {
          if (N.src(k) != Y) continue;
          Mor lhs = a.transpose_right(X, N.tgt(k), N.compose(k, g));
          if (lhs != M.compose(a.right.mor[k], f)) {
            v.witness.add("g", g);
            v.witness.add("k", k);
            v.witness.note = "naturality in the codomain variable fails";
            return v;
          }
        }
      }
  v.pass = true;
  return v;
}

struct QuillenStatus {
  Verdict left_side;   // left adjoint preserves cofibrations and acyclic ones
  Verdict right_side;  // right adjoint preserves fibrations and acyclic ones
  bool quillen = false;
};

namespace detail {

inline Verdict functor_preserves(const Functor& F, const MorClass& from, const MorClass& to,
                                 const std::string& what) {
  Verdict v;
  v.condition = what;
  for (size_t f = from.bits.find_first(); f != boost::dynamic_bitset<>::npos;
       f = from.bits.find_next(f))
    if (!to.test(F.mor[f])) {
      v.witness.add("morphism", (long long)f);
      v.witness.add("image", F.mor[f]);
      v.witness.note = "image leaves the class";
      return v;
    }
  v.pass = true;
  return v;
}

}  // namespace detail

inline QuillenStatus quillen_status(const AdjunctionData& a, const ModelStructure& mDom,
                                    const ModelStructure& mCod) {
  QuillenStatus s;
  Verdict c = detail::functor_preserves(a.left, mDom.cof, mCod.cof, "left_preserves_cof");
  Verdict ac = detail::functor_preserves(a.left, mDom.acof(), mCod.acof(), "left_preserves_acof");
  s.left_side = c.pass ? ac : c;
  s.left_side.condition = "left_quillen";
  Verdict f = detail::functor_preserves(a.right, mCod.fib, mDom.fib, "right_preserves_fib");
  Verdict af = detail::functor_preserves(a.right, mCod.afib(), mDom.afib(), "right_preserves_afib");
  s.right_side = f.pass ? af : f;
  s.right_side.condition = "right_quillen";
  s.quillen = s.left_side.pass;
  return s;
}

// For a genuine adjunction between genuine model structures the two sides are
// equivalent characterizations; a disagreement means the inputs are broken.
inline Verdict is_quillen_adjunction(const AdjunctionData& a, const ModelStructure& mDom,
                                     const ModelStructure& mCod) {
  QuillenStatus s = quillen_status(a, mDom, mCod);
  if (s.left_side.pass != s.right_side.pass)
    throw CheckFailure("is_quillen_adjunction: left and right characterizations disagree");
  Verdict v = s.left_side;
  v.condition = "quillen_adjunction";
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration. Left classes of wfs contain the isomorphisms and are closed
// under composition; those two cheap filters cut the mask space before the
// lifting complements run.

inline std::vector<Wfs> enumerate_wfs(const CatPtr& cat, int max_free_bits = 16) {
  const FinCat& c = *cat;
  MorClass isos = class_isos(cat);
  std::vector<int> free;
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if (!isos.test(f)) free.push_back(f);
  if ((int)free.size() > max_free_bits)
    throw BudgetExceeded("wfs enumeration over " + std::to_string(free.size()) +
                         " non-isomorphisms exceeds the budget");
  std::vector<Wfs> out;
  uint64_t total = 1ull << free.size();
  for (uint64_t sub = 0; sub < total; ++sub) {
    MorClass L = isos;
    for (size_t i = 0; i < free.size(); ++i)
      if ((sub >> i) & 1ull) L.set(free[i]);
    bool closed = true;
    for (size_t g = L.bits.find_first(); closed && g != boost::dynamic_bitset<>::npos;
         g = L.bits.find_next(g))
      for (size_t f = L.bits.find_first(); closed && f != boost::dynamic_bitset<>::npos;
           f = L.bits.find_next(f))
        if (c.composable((Mor)g, (Mor)f) && !L.test(c.compose((Mor)g, (Mor)f))) closed = false;
    if (!closed) continue;
    MorClass R = right_complement(L);
    if (check_wfs(L, R).pass) out.push_back(Wfs{L, R});
  }
  return out;
}

inline std::vector<ModelStructure> enumerate_model_structures(const CatPtr& cat,
                                                              int max_free_bits = 16) {
  std::vector<Wfs> ws = enumerate_wfs(cat, max_free_bits);
  std::vector<ModelStructure> out;
  for (auto& cof_side : ws)      // (C, F ∩ W)
    for (auto& acof_side : ws) { // (C ∩ W, F)
      if (!acof_side.left.subset_of(cof_side.left)) continue;
      MorClass W = class_composite(cof_side.right, acof_side.left);
      if (!((W & cof_side.left) == acof_side.left)) throw CheckFailure("enumeration: W ∩ C != acof");
      if (!((W & acof_side.right) == cof_side.right)) throw CheckFailure("enumeration: W ∩ F != afib");
      if (!check_two_of_three(W).pass) continue;
      out.push_back(ModelStructure{cof_side.left, W, acof_side.right});
    }
  return out;
}

}  // namespace quillen
