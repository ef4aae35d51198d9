#pragma once
// Lifting properties and weak factorization systems over a finite category.
// All notions are computed by exhaustive search against the hom tables.

#include "fincat.hpp"
#include "verdict.hpp"

namespace quillen {

inline std::optional<Mor> find_lift(const FinCat& c, const CommSquare& s) {
  for (Mor h : c.hom(c.tgt(s.left), c.tgt(s.top)))
    if (c.compose(h, s.left) == s.top && c.compose(s.right, h) == s.bottom) return h;
  return std::nullopt;
}

inline bool has_lift(const FinCat& c, const CommSquare& s) { return find_lift(c, s).has_value(); }

// j has the left lifting property against q: every commutative square with j
// on the left and q on the right admits a diagonal filler.
inline bool lifts_against(const FinCat& c, Mor j, Mor q) {
  for (Mor top : c.hom(c.src(j), c.src(q))) {
    Mor diag = c.compose(q, top);
    for (Mor bottom : c.hom(c.tgt(j), c.tgt(q))) {
      if (c.compose(bottom, j) != diag) continue;
      if (!has_lift(c, CommSquare{top, j, q, bottom})) return false;
    }
  }
  return true;
}

inline MorClass right_complement(const MorClass& L) {
  const FinCat& c = *L.cat;
  MorClass out(L.cat);
  for (Mor q = 0; q < c.num_morphisms(); ++q) {
    bool ok = true;
    for (size_t j = L.bits.find_first(); ok && j != boost::dynamic_bitset<>::npos;
         j = L.bits.find_next(j))
      ok = lifts_against(c, (Mor)j, q);
    if (ok) out.set(q);
  }
  return out;
}

inline MorClass left_complement(const MorClass& R) {
  const FinCat& c = *R.cat;
  MorClass out(R.cat);
  for (Mor j = 0; j < c.num_morphisms(); ++j) {
    bool ok = true;
    for (size_t q = R.bits.find_first(); ok && q != boost::dynamic_bitset<>::npos;
         q = R.bits.find_next(q))
      ok = lifts_against(c, j, (Mor)q);
    if (ok) out.set(j);
  }
  return out;
}

struct Wfs {
  MorClass left, right;
  CatPtr cat() const { return left.cat; }
};

// Every composite a∘b with a in A, b in B; "A after B".
inline MorClass class_composite(const MorClass& A, const MorClass& B) {
  if (A.cat.get() != B.cat.get()) throw CheckFailure("class_composite: categories differ");
  const FinCat& c = *A.cat;
  MorClass out(A.cat);
  for (size_t a = A.bits.find_first(); a != boost::dynamic_bitset<>::npos; a = A.bits.find_next(a))
    for (size_t b = B.bits.find_first(); b != boost::dynamic_bitset<>::npos;
         b = B.bits.find_next(b))
      if (c.composable((Mor)a, (Mor)b)) out.set(c.compose((Mor)a, (Mor)b));
  return out;
}

// First factorization f = r∘l with l in the left class and r in the right
// class, in the deterministic order of factorizations().
inline std::pair<Mor, Mor> wfs_factor(const FinCat& c, Mor f, const Wfs& w) {
  for (auto& [l, r] : factorizations(c, f))
    if (w.left.test(l) && w.right.test(r)) return {l, r};
  throw CheckFailure("wfs_factor: no factorization through the given classes");
}

inline Verdict check_wfs(const MorClass& L, const MorClass& R) {
  if (L.cat.get() != R.cat.get()) throw CheckFailure("check_wfs: categories differ");
  const FinCat& c = *L.cat;
  Verdict v;
  v.condition = "wfs";

  MorClass lc = left_complement(R);
  if (!(lc == L)) {
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      if (lc.test(f) != L.test(f)) {
        v.witness.add("morphism", f);
        v.witness.note = lc.test(f)
                             ? "lifts against every right morphism but is not in the left class"
                             : "in the left class but fails to lift against the right class";
        return v;
      }
  }
  MorClass rc = right_complement(L);
  if (!(rc == R)) {
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      if (rc.test(f) != R.test(f)) {
        v.witness.add("morphism", f);
        v.witness.note = rc.test(f)
                             ? "has the right lifting property but is not in the right class"
                             : "in the right class but fails the right lifting property";
        return v;
      }
  }
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    bool ok = false;
    for (auto& [l, r] : factorizations(c, f))
      if (L.test(l) && R.test(r)) {
        ok = true;
        break;
      }
    if (!ok) {
      v.witness.add("morphism", f);
      v.witness.note = "admits no (left, right) factorization";
      return v;
    }
  }
  v.pass = true;
  v.witness.add("left_size", (long long)L.count());
  v.witness.add("right_size", (long long)R.count());
  return v;
}

inline Verdict check_wfs(const Wfs& w) { return check_wfs(w.left, w.right); }

// Two weak factorization systems are intertwined when L1 ⊆ L2, equivalently
// R2 ⊆ R1. Both inclusions are checked; for genuine wfs inputs they agree.
inline Verdict check_intertwined(const Wfs& one, const Wfs& two) {
  Verdict v;
  v.condition = "intertwined";
  bool left_inc = one.left.subset_of(two.left);
  bool right_inc = two.right.subset_of(one.right);
  if (left_inc && right_inc) {
    v.pass = true;
    return v;
  }
  const FinCat& c = *one.cat();
  if (!left_inc) {
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      if (one.left.test(f) && !two.left.test(f)) {
        v.witness.add("morphism", f);
        v.witness.note = "in the first left class but not the second";
        break;
      }
  } else {
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      if (two.right.test(f) && !one.right.test(f)) {
        v.witness.add("morphism", f);
        v.witness.note = "in the second right class but not the first";
        break;
      }
  }
  if (left_inc != right_inc)
    v.trace.push_back("the two inclusions disagree; the inputs are not both wfs");
  return v;
}

}  // namespace quillen
