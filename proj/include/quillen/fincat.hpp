#pragma once
// Finite categories presented by explicit tables: an indexed object set, an
// indexed morphism set with endpoints, identities, and a total composition
// table on composable pairs. Everything downstream (lifting, model
// structures, bifibrations) reduces to loops and bitsets over these tables.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <tuple>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace quillen {

using Obj = int;
using Mor = int;

struct ValidationError : std::runtime_error {
  std::string kind;
  ValidationError(std::string k, const std::string& what)
      : std::runtime_error(k + ": " + what), kind(std::move(k)) {}
};

struct SizeGuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisNotMet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FactorizationMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematically guaranteed search came up empty or ambiguous; that is an
// implementation bug, never a property of the input.
struct CheckFailure : std::logic_error {
  using std::logic_error::logic_error;
};

inline constexpr int kDefaultSizeGuard = 5000;

class FinCat {
 public:
  std::vector<Obj> mor_src, mor_tgt;
  std::vector<Mor> obj_id;
  std::vector<int32_t> table;  // table[g*m+f] = g∘f, -1 when not composable
  std::vector<std::string> obj_name, mor_name;

  int num_objects() const { return (int)obj_id.size(); }
  int num_morphisms() const { return (int)mor_src.size(); }
  Obj src(Mor f) const { return mor_src[f]; }
  Obj tgt(Mor f) const { return mor_tgt[f]; }
  Mor id(Obj x) const { return obj_id[x]; }
  bool is_id(Mor f) const { return obj_id[mor_src[f]] == f && mor_src[f] == mor_tgt[f]; }
  bool composable(Mor g, Mor f) const { return mor_tgt[f] == mor_src[g]; }

  Mor compose(Mor g, Mor f) const {  // g after f
    int32_t r = table[(size_t)g * num_morphisms() + f];
    if (r < 0) throw CheckFailure("compose on non-composable pair");
    return r;
  }

  const std::vector<Mor>& hom(Obj x, Obj y) const { return hom_[(size_t)x * num_objects() + y]; }

  // Fill hom-sets and default names; call once after the tables are set.
  void finalize() {
    int n = num_objects(), m = num_morphisms();
    hom_.assign((size_t)n * n, {});
    for (Mor f = 0; f < m; ++f) hom_[(size_t)mor_src[f] * n + mor_tgt[f]].push_back(f);
    if ((int)obj_name.size() != n) {
      obj_name.resize(n);
      for (Obj x = 0; x < n; ++x)
        if (obj_name[x].empty()) obj_name[x] = "o" + std::to_string(x);
    }
    if ((int)mor_name.size() != m) {
      mor_name.resize(m);
      for (Mor f = 0; f < m; ++f)
        if (mor_name[f].empty()) mor_name[f] = "m" + std::to_string(f);
    }
  }

 private:
  std::vector<std::vector<Mor>> hom_;
};

using CatPtr = std::shared_ptr<const FinCat>;

inline bool table_equal(const FinCat& a, const FinCat& b) {
  return a.num_objects() == b.num_objects() && a.mor_src == b.mor_src &&
         a.mor_tgt == b.mor_tgt && a.obj_id == b.obj_id && a.table == b.table;
}

// ---------------------------------------------------------------------------
// Validation from a raw description.

struct RawCat {
  int objects = 0;
  std::vector<std::pair<Obj, Obj>> mor;          // endpoints of every morphism
  std::vector<Mor> identity;                     // per object
  std::vector<std::array<Mor, 3>> compositions;  // {g, f, g∘f}
  std::vector<std::string> obj_name, mor_name;
};

inline CatPtr validate_category(const RawCat& raw) {
  int n = raw.objects, m = (int)raw.mor.size();
  auto cat = std::make_shared<FinCat>();
  for (auto& [s, t] : raw.mor) {
    if (s < 0 || s >= n || t < 0 || t >= n)
      throw ValidationError("DanglingEndpoint", "morphism endpoint out of range");
    cat->mor_src.push_back(s);
    cat->mor_tgt.push_back(t);
  }
  if ((int)raw.identity.size() != n)
    throw ValidationError("IdentityLawViolated", "one identity required per object");
  for (Obj x = 0; x < n; ++x) {
    Mor i = raw.identity[x];
    if (i < 0 || i >= m || cat->mor_src[i] != x || cat->mor_tgt[i] != x)
      throw ValidationError("IdentityLawViolated",
                            "identity of object " + std::to_string(x) + " is not an endomorphism");
  }
  cat->obj_id = raw.identity;
  cat->table.assign((size_t)m * m, -1);
  auto put = [&](Mor g, Mor f, Mor gf, const char* who) {
    if (!cat->composable(g, f))
      throw ValidationError("DanglingEndpoint",
                            std::string(who) + " assigns a composite to a non-composable pair");
    if (gf < 0 || gf >= m || cat->mor_src[gf] != cat->mor_src[f] ||
        cat->mor_tgt[gf] != cat->mor_tgt[g])
      throw ValidationError("DanglingEndpoint", std::string(who) + " composite has wrong endpoints");
    int32_t& slot = cat->table[(size_t)g * m + f];
    if (slot >= 0 && slot != gf)
      throw ValidationError("ConflictingComposite", "two composites assigned to one pair");
    slot = gf;
  };
  // Identity composites are forced by the identity laws.
  for (Mor f = 0; f < m; ++f) {
    put(cat->obj_id[cat->mor_tgt[f]], f, f, "identity law");
    put(f, cat->obj_id[cat->mor_src[f]], f, "identity law");
  }
  for (auto& t : raw.compositions) {
    auto [g, f, gf] = t;
    if (g < 0 || g >= m || f < 0 || f >= m || gf < 0 || gf >= m)
      throw ValidationError("DanglingEndpoint", "composition triple out of range");
    bool idpair = cat->is_id(g) || cat->is_id(f);
    int32_t& slot = cat->table[(size_t)g * m + f];
    if (!cat->composable(g, f))
      throw ValidationError("DanglingEndpoint", "composition triple on non-composable pair");
    if (slot >= 0 && slot != gf)
      throw ValidationError(idpair ? "IdentityLawViolated" : "ConflictingComposite",
                            "composite disagrees with a forced or previous assignment");
    if (cat->mor_src[gf] != cat->mor_src[f] || cat->mor_tgt[gf] != cat->mor_tgt[g])
      throw ValidationError("DanglingEndpoint", "composite has wrong endpoints");
    slot = gf;
  }
  for (Mor g = 0; g < m; ++g)
    for (Mor f = 0; f < m; ++f)
      if (cat->composable(g, f) && cat->table[(size_t)g * m + f] < 0)
        throw ValidationError("MissingComposite", "no composite assigned to (" +
                                                       std::to_string(g) + ", " + std::to_string(f) + ")");
  for (Mor h = 0; h < m; ++h)
    for (Mor g = 0; g < m; ++g) {
      if (!cat->composable(h, g)) continue;
      Mor hg = cat->table[(size_t)h * m + g];
      for (Mor f = 0; f < m; ++f) {
        if (!cat->composable(g, f)) continue;
        Mor gf = cat->table[(size_t)g * m + f];
        if (cat->table[(size_t)h * m + gf] != cat->table[(size_t)hg * m + f])
          throw ValidationError("AssociativityViolated",
                                "h(gf) != (hg)f at (" + std::to_string(h) + ", " +
                                    std::to_string(g) + ", " + std::to_string(f) + ")");
      }
    }
  cat->obj_name = raw.obj_name;
  cat->mor_name = raw.mor_name;
  cat->finalize();
  return cat;
}

// ---------------------------------------------------------------------------
// Stock categories.

// A preorder given by a reflexive-transitive relation: one morphism per
// related pair, indexed lexicographically.
inline CatPtr poset_category(int n, const std::vector<uint8_t>& le,
                             std::vector<std::string> names = {}) {
  for (int x = 0; x < n; ++x) {
    if (!le[(size_t)x * n + x]) throw ValidationError("DanglingEndpoint", "relation not reflexive");
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (le[(size_t)x * n + y] && le[(size_t)y * n + z] && !le[(size_t)x * n + z])
          throw ValidationError("MissingComposite", "relation not transitive");
  }
  RawCat raw;
  raw.objects = n;
  raw.identity.assign(n, -1);
  std::vector<std::vector<int>> at((size_t)n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (le[(size_t)x * n + y]) {
        at[x][y] = (int)raw.mor.size();
        raw.mor.push_back({x, y});
        if (x == y) raw.identity[x] = at[x][y];
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (at[x][y] >= 0 && at[y][z] >= 0)
          raw.compositions.push_back({at[y][z], at[x][y], at[x][z]});
  raw.obj_name = std::move(names);
  raw.obj_name.resize(n);
  for (int x = 0; x < n; ++x)
    if (raw.obj_name[x].empty()) raw.obj_name[x] = "o" + std::to_string(x);
  raw.mor_name.resize(raw.mor.size());
  for (size_t f = 0; f < raw.mor.size(); ++f)
    raw.mor_name[f] = raw.obj_name[raw.mor[f].first] + ">" + raw.obj_name[raw.mor[f].second];
  return validate_category(raw);
}

inline CatPtr chain_category(int n) {
  std::vector<uint8_t> le((size_t)n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) le[(size_t)x * n + y] = 1;
  return poset_category(n, le);
}

inline CatPtr terminal_category() { return chain_category(1); }

inline CatPtr empty_category() {
  RawCat raw;
  return validate_category(raw);
}

// ---------------------------------------------------------------------------
// Functors and natural transformations.

struct Functor {
  CatPtr dom, cod;
  std::vector<Obj> ob;
  std::vector<Mor> mor;

  Obj on_ob(Obj x) const { return ob[x]; }
  Mor on_mor(Mor f) const { return mor[f]; }
};

inline Functor validate_functor(CatPtr dom, CatPtr cod, std::vector<Obj> ob,
                                std::vector<Mor> mor) {
  if ((int)ob.size() != dom->num_objects() || (int)mor.size() != dom->num_morphisms())
    throw ValidationError("EndpointMismatch", "object/morphism map has wrong size");
  for (Obj x : ob)
    if (x < 0 || x >= cod->num_objects())
      throw ValidationError("EndpointMismatch", "object image out of range");
  for (Mor f = 0; f < dom->num_morphisms(); ++f) {
    Mor g = mor[f];
    if (g < 0 || g >= cod->num_morphisms())
      throw ValidationError("EndpointMismatch", "morphism image out of range");
    if (cod->src(g) != ob[dom->src(f)] || cod->tgt(g) != ob[dom->tgt(f)])
      throw ValidationError("EndpointMismatch",
                            "image of morphism " + std::to_string(f) + " has wrong endpoints");
  }
  for (Obj x = 0; x < dom->num_objects(); ++x)
    if (mor[dom->id(x)] != cod->id(ob[x]))
      throw ValidationError("IdentityNotPreserved", "identity of object " + std::to_string(x));
  for (Mor g = 0; g < dom->num_morphisms(); ++g)
    for (Mor f = 0; f < dom->num_morphisms(); ++f)
      if (dom->composable(g, f) && mor[dom->compose(g, f)] != cod->compose(mor[g], mor[f]))
        throw ValidationError("CompositionNotPreserved",
                              "at pair (" + std::to_string(g) + ", " + std::to_string(f) + ")");
  return Functor{std::move(dom), std::move(cod), std::move(ob), std::move(mor)};
}

inline Functor identity_functor(CatPtr c) {
  std::vector<Obj> ob(c->num_objects());
  std::vector<Mor> mor(c->num_morphisms());
  for (size_t i = 0; i < ob.size(); ++i) ob[i] = (Obj)i;
  for (size_t i = 0; i < mor.size(); ++i) mor[i] = (Mor)i;
  return Functor{c, c, std::move(ob), std::move(mor)};
}

inline Functor compose_functor(const Functor& G, const Functor& F) {
  if (F.cod.get() != G.dom.get()) throw CheckFailure("compose_functor: categories do not match");
  std::vector<Obj> ob(F.ob.size());
  std::vector<Mor> mor(F.mor.size());
  for (size_t i = 0; i < ob.size(); ++i) ob[i] = G.ob[F.ob[i]];
  for (size_t i = 0; i < mor.size(); ++i) mor[i] = G.mor[F.mor[i]];
  return Functor{F.dom, G.cod, std::move(ob), std::move(mor)};
}

inline bool same_functor(const Functor& F, const Functor& G) {
  return F.dom.get() == G.dom.get() && F.cod.get() == G.cod.get() && F.ob == G.ob &&
         F.mor == G.mor;
}

struct NatTransformation {
  Functor F, G;           // parallel functors
  std::vector<Mor> at;    // component per dom-object, a cod-morphism
};

inline NatTransformation validate_nat(Functor F, Functor G, std::vector<Mor> at) {
  if (F.dom.get() != G.dom.get() || F.cod.get() != G.cod.get())
    throw ValidationError("EndpointMismatch", "natural transformation between non-parallel functors");
  const FinCat& J = *F.dom;
  const FinCat& C = *F.cod;
  if ((int)at.size() != J.num_objects())
    throw ValidationError("EndpointMismatch", "one component required per object");
  for (Obj x = 0; x < J.num_objects(); ++x)
    if (C.src(at[x]) != F.ob[x] || C.tgt(at[x]) != G.ob[x])
      throw ValidationError("EndpointMismatch", "component at object " + std::to_string(x));
  for (Mor f = 0; f < J.num_morphisms(); ++f) {
    Obj x = J.src(f), y = J.tgt(f);
    if (C.compose(G.mor[f], at[x]) != C.compose(at[y], F.mor[f]))
      throw ValidationError("NaturalityViolated", "at morphism " + std::to_string(f));
  }
  return NatTransformation{std::move(F), std::move(G), std::move(at)};
}

// ---------------------------------------------------------------------------
// Classes of morphisms as bitsets.

struct MorClass {
  CatPtr cat;
  boost::dynamic_bitset<> bits;

  MorClass() = default;
  explicit MorClass(CatPtr c, bool fill = false)
      : cat(std::move(c)), bits(cat->num_morphisms()) {
    if (fill) bits.set();
  }

  bool test(Mor f) const { return bits.test(f); }
  MorClass& set(Mor f, bool v = true) {
    bits.set(f, v);
    return *this;
  }
  size_t count() const { return bits.count(); }

  bool same_bits(const MorClass& o) const { return bits == o.bits; }
  bool operator==(const MorClass& o) const { return cat.get() == o.cat.get() && bits == o.bits; }
  bool subset_of(const MorClass& o) const { return bits.is_subset_of(o.bits); }

  friend MorClass operator&(const MorClass& a, const MorClass& b) {
    MorClass r = a;
    r.bits &= b.bits;
    return r;
  }
  friend MorClass operator|(const MorClass& a, const MorClass& b) {
    MorClass r = a;
    r.bits |= b.bits;
    return r;
  }
  friend MorClass operator~(const MorClass& a) {
    MorClass r = a;
    r.bits.flip();
    return r;
  }
};

inline MorClass class_none(CatPtr c) { return MorClass(std::move(c)); }
inline MorClass class_all(CatPtr c) { return MorClass(std::move(c), true); }

inline MorClass class_identities(CatPtr c) {
  MorClass r(c);
  for (Obj x = 0; x < c->num_objects(); ++x) r.set(c->id(x));
  return r;
}

inline bool is_iso(const FinCat& c, Mor f) {
  for (Mor g : c.hom(c.tgt(f), c.src(f)))
    if (c.compose(g, f) == c.id(c.src(f)) && c.compose(f, g) == c.id(c.tgt(f))) return true;
  return false;
}

inline MorClass class_isos(CatPtr c) {
  MorClass r(c);
  for (Mor f = 0; f < c->num_morphisms(); ++f)
    if (is_iso(*c, f)) r.set(f);
  return r;
}

// All two-step factorizations h∘g = f, ordered by (g, h).
inline std::vector<std::pair<Mor, Mor>> factorizations(const FinCat& c, Mor f) {
  std::vector<std::pair<Mor, Mor>> out;
  for (Mor g = 0; g < c.num_morphisms(); ++g) {
    if (c.src(g) != c.src(f)) continue;
    for (Mor h : c.hom(c.tgt(g), c.tgt(f)))
      if (c.compose(h, g) == f) out.push_back({g, h});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commutative squares: right∘top = bottom∘left.

struct CommSquare {
  Mor top, left, right, bottom;
};

inline std::vector<CommSquare> commutative_squares(const FinCat& c,
                                                   const MorClass* top_in = nullptr,
                                                   const MorClass* left_in = nullptr,
                                                   const MorClass* right_in = nullptr,
                                                   const MorClass* bottom_in = nullptr) {
  std::vector<CommSquare> out;
  for (Mor t = 0; t < c.num_morphisms(); ++t) {
    if (top_in && !top_in->test(t)) continue;
    for (Mor l = 0; l < c.num_morphisms(); ++l) {
      if (c.src(l) != c.src(t)) continue;
      if (left_in && !left_in->test(l)) continue;
      for (Obj b = 0; b < c.num_objects(); ++b) {
        for (Mor r : c.hom(c.tgt(t), b)) {
          if (right_in && !right_in->test(r)) continue;
          Mor diag = c.compose(r, t);
          for (Mor bo : c.hom(c.tgt(l), b)) {
            if (bottom_in && !bottom_in->test(bo)) continue;
            if (c.compose(bo, l) == diag) out.push_back({t, l, r, bo});
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Opposite category: same indices, reversed tables.

inline CatPtr opposite(const CatPtr& c) {
  auto op = std::make_shared<FinCat>();
  op->mor_src = c->mor_tgt;
  op->mor_tgt = c->mor_src;
  op->obj_id = c->obj_id;
  int m = c->num_morphisms();
  op->table.assign((size_t)m * m, -1);
  for (Mor g = 0; g < m; ++g)
    for (Mor f = 0; f < m; ++f)
      op->table[(size_t)g * m + f] = c->table[(size_t)f * m + g];
  op->obj_name = c->obj_name;
  op->mor_name = c->mor_name;
  op->finalize();
  return op;
}

// ---------------------------------------------------------------------------
// Product category with its projections.

struct ProductCat {
  CatPtr cat;
  Functor proj1, proj2;
  int nB, mB;  // index strides: object (a,b) -> a*nB+b, morphism (f,g) -> f*mB+g

  Obj pair_ob(Obj a, Obj b) const { return a * nB + b; }
  Mor pair_mor(Mor f, Mor g) const { return f * mB + g; }
};

inline ProductCat product_category(CatPtr A, CatPtr B, int size_guard = kDefaultSizeGuard) {
  long long mm = (long long)A->num_morphisms() * B->num_morphisms();
  if (mm > size_guard)
    throw SizeGuardExceeded("product category would have " + std::to_string(mm) + " morphisms");
  auto cat = std::make_shared<FinCat>();
  int nA = A->num_objects(), nB = B->num_objects();
  int mA = A->num_morphisms(), mB = B->num_morphisms();
  cat->obj_id.resize((size_t)nA * nB);
  for (Obj a = 0; a < nA; ++a)
    for (Obj b = 0; b < nB; ++b) {
      cat->obj_name.push_back("(" + A->obj_name[a] + "," + B->obj_name[b] + ")");
    }
  cat->mor_src.resize((size_t)mA * mB);
  cat->mor_tgt.resize((size_t)mA * mB);
  for (Mor f = 0; f < mA; ++f)
    for (Mor g = 0; g < mB; ++g) {
      Mor i = f * mB + g;
      cat->mor_src[i] = A->src(f) * nB + B->src(g);
      cat->mor_tgt[i] = A->tgt(f) * nB + B->tgt(g);
      cat->mor_name.push_back("(" + A->mor_name[f] + "," + B->mor_name[g] + ")");
    }
  for (Obj a = 0; a < nA; ++a)
    for (Obj b = 0; b < nB; ++b) cat->obj_id[(size_t)a * nB + b] = A->id(a) * mB + B->id(b);
  cat->table.assign((size_t)mA * mB * mA * mB, -1);
  for (Mor g1 = 0; g1 < mA; ++g1)
    for (Mor g2 = 0; g2 < mB; ++g2)
      for (Mor f1 = 0; f1 < mA; ++f1) {
        if (!A->composable(g1, f1)) continue;
        Mor c1 = A->compose(g1, f1);
        for (Mor f2 = 0; f2 < mB; ++f2) {
          if (!B->composable(g2, f2)) continue;
          Mor g = g1 * mB + g2, f = f1 * mB + f2;
          cat->table[(size_t)g * (mA * mB) + f] = c1 * mB + B->compose(g2, f2);
        }
      }
  cat->finalize();
  ProductCat out;
  out.cat = cat;
  out.nB = nB;
  out.mB = mB;
  std::vector<Obj> ob1((size_t)nA * nB), ob2((size_t)nA * nB);
  std::vector<Mor> mo1((size_t)mA * mB), mo2((size_t)mA * mB);
  for (Obj a = 0; a < nA; ++a)
    for (Obj b = 0; b < nB; ++b) ob1[(size_t)a * nB + b] = a, ob2[(size_t)a * nB + b] = b;
  for (Mor f = 0; f < mA; ++f)
    for (Mor g = 0; g < mB; ++g) mo1[(size_t)f * mB + g] = f, mo2[(size_t)f * mB + g] = g;
  out.proj1 = validate_functor(cat, A, std::move(ob1), std::move(mo1));
  out.proj2 = validate_functor(cat, B, std::move(ob2), std::move(mo2));
  return out;
}

// ---------------------------------------------------------------------------
// Functor categories.

struct FunctorCat {
  CatPtr cat;
  CatPtr J, C;
  std::vector<Functor> objects;            // the functors J -> C
  std::vector<NatTransformation> morphisms;
  std::vector<Functor> eval;               // evaluation functor per J-object

  int find_object(const Functor& F) const {
    auto it = index_.find({F.ob, F.mor});
    return it == index_.end() ? -1 : it->second;
  }
  int find_morphism(int srcF, int tgtF, const std::vector<Mor>& components) const {
    auto it = mor_index_.find(std::make_tuple(srcF, tgtF, components));
    return it == mor_index_.end() ? -1 : it->second;
  }

  std::map<std::pair<std::vector<Obj>, std::vector<Mor>>, int> index_;
  std::map<std::tuple<int, int, std::vector<Mor>>, int> mor_index_;
};

namespace detail {

inline void enumerate_functors(const CatPtr& J, const CatPtr& C, int size_guard,
                               std::vector<Functor>& out) {
  int nJ = J->num_objects();
  if (nJ == 0) {
    out.push_back(Functor{J, C, {}, {}});
    return;
  }
  double predicted = 1;
  for (int i = 0; i < nJ; ++i) {
    predicted *= C->num_objects();
    if (predicted > 4e7) throw SizeGuardExceeded("functor enumeration space too large");
  }
  std::vector<Obj> ob(nJ, 0);
  std::vector<Mor> nonid;
  for (Mor f = 0; f < J->num_morphisms(); ++f)
    if (!J->is_id(f)) nonid.push_back(f);
  std::vector<Mor> mor(J->num_morphisms(), -1);
  // Assign images to non-identity generators depth-first. Partial composition
  // checks prune; the leaf check over all composable pairs is authoritative.
  auto assign = [&](auto&& self, size_t k) -> void {
    if (k == nonid.size()) {
      std::vector<Mor> full = mor;
      for (Obj x = 0; x < nJ; ++x) full[J->id(x)] = C->id(ob[x]);
      for (Mor g2 = 0; g2 < J->num_morphisms(); ++g2)
        for (Mor f2 = 0; f2 < J->num_morphisms(); ++f2)
          if (J->composable(g2, f2) &&
              full[J->compose(g2, f2)] != C->compose(full[g2], full[f2]))
            return;
      if ((int)out.size() >= size_guard)
        throw SizeGuardExceeded("functor category exceeds object guard");
      out.push_back(Functor{J, C, ob, std::move(full)});
      return;
    }
    Mor f = nonid[k];
    for (Mor g : C->hom(ob[J->src(f)], ob[J->tgt(f)])) {
      mor[f] = g;
      bool ok = true;
      for (size_t a = 0; a <= k && ok; ++a) {
        Mor u = nonid[a];
        if (J->composable(u, f)) {
          Mor c = J->compose(u, f);
          Mor cimg = J->is_id(c) ? C->id(ob[J->src(f)]) : mor[c];
          if (cimg >= 0 && C->compose(mor[u], g) != cimg) ok = false;
        }
        if (ok && J->composable(f, u)) {
          Mor c = J->compose(f, u);
          Mor cimg = J->is_id(c) ? C->id(ob[J->src(u)]) : mor[c];
          if (cimg >= 0 && C->compose(g, mor[u]) != cimg) ok = false;
        }
      }
      if (ok) self(self, k + 1);
      mor[f] = -1;
    }
  };
  auto walk = [&](auto&& self, Obj x) -> void {
    if (x == nJ) {
      assign(assign, 0);
      return;
    }
    for (Obj y = 0; y < C->num_objects(); ++y) {
      ob[x] = y;
      self(self, x + 1);
    }
  };
  walk(walk, 0);
}

}  // namespace detail

inline FunctorCat functor_category(CatPtr J, CatPtr C, int size_guard = kDefaultSizeGuard) {
  FunctorCat fc;
  fc.J = J;
  fc.C = C;
  detail::enumerate_functors(J, C, size_guard, fc.objects);
  int N = (int)fc.objects.size();
  for (int i = 0; i < N; ++i) fc.index_[{fc.objects[i].ob, fc.objects[i].mor}] = i;

  auto cat = std::make_shared<FinCat>();
  cat->obj_id.assign(N, -1);
  for (int i = 0; i < N; ++i) {
    std::string nm = "[";
    for (Obj x = 0; x < J->num_objects(); ++x) {
      if (x) nm += " ";
      nm += C->obj_name[fc.objects[i].ob[x]];
    }
    nm += "]";
    cat->obj_name.push_back(nm);
  }
  int nJ = J->num_objects();
  // Natural transformations per ordered pair, components found depth-first.
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const Functor& F = fc.objects[a];
      const Functor& G = fc.objects[b];
      std::vector<Mor> comp(nJ, -1);
      auto rec = [&](auto&& self, Obj x) -> void {
        if (x == nJ) {
          int idx = (int)cat->mor_src.size();
          if (idx >= size_guard) throw SizeGuardExceeded("functor category exceeds morphism guard");
          cat->mor_src.push_back(a);
          cat->mor_tgt.push_back(b);
          fc.morphisms.push_back(NatTransformation{F, G, comp});
          fc.mor_index_[std::make_tuple(a, b, comp)] = idx;
          if (a == b) {
            bool isid = true;
            for (Obj y = 0; y < nJ; ++y)
              if (comp[y] != C->id(F.ob[y])) isid = false;
            if (isid) cat->obj_id[a] = idx;
          }
          return;
        }
        for (Mor c : C->hom(F.ob[x], G.ob[x])) {
          comp[x] = c;
          bool ok = true;
          for (Mor f = 0; f < J->num_morphisms() && ok; ++f) {
            Obj s = J->src(f), t = J->tgt(f);
            if (s > x || t > x) continue;
            if (C->compose(G.mor[f], comp[s]) != C->compose(comp[t], F.mor[f])) ok = false;
          }
          if (ok) self(self, x + 1);
        }
        comp[x] = -1;
      };
      if (nJ == 0) {
        // unique empty transformation
        int idx = (int)cat->mor_src.size();
        cat->mor_src.push_back(a);
        cat->mor_tgt.push_back(b);
        fc.morphisms.push_back(NatTransformation{F, G, {}});
        fc.mor_index_[std::make_tuple(a, b, std::vector<Mor>{})] = idx;
        if (a == b) cat->obj_id[a] = idx;
      } else {
        rec(rec, 0);
      }
    }

  int M = (int)cat->mor_src.size();
  for (int i = 0; i < N; ++i)
    if (cat->obj_id[i] < 0) throw CheckFailure("functor category object without identity");
  cat->table.assign((size_t)M * M, -1);
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (cat->mor_tgt[f] != cat->mor_src[g]) continue;
      std::vector<Mor> comp(nJ);
      for (Obj x = 0; x < nJ; ++x)
        comp[x] = C->compose(fc.morphisms[g].at[x], fc.morphisms[f].at[x]);
      int idx = fc.find_morphism(cat->mor_src[f], cat->mor_tgt[g], comp);
      if (idx < 0) throw CheckFailure("functor category not closed under composition");
      cat->table[(size_t)g * M + f] = idx;
    }
  for (int f = 0; f < M; ++f) cat->mor_name.push_back("n" + std::to_string(f));
  cat->finalize();
  fc.cat = cat;

  for (Obj j = 0; j < nJ; ++j) {
    std::vector<Obj> ob(N);
    std::vector<Mor> mo(M);
    for (int i = 0; i < N; ++i) ob[i] = fc.objects[i].ob[j];
    for (int f = 0; f < M; ++f) mo[f] = fc.morphisms[f].at[j];
    fc.eval.push_back(validate_functor(cat, C, std::move(ob), std::move(mo)));
  }
  return fc;
}

// ---------------------------------------------------------------------------
// Strict pullback of categories along a cospan of functors.

struct PullbackCat {
  CatPtr cat;
  Functor proj1, proj2;
  std::vector<std::pair<Obj, Obj>> objects;   // (c, d) pairs
  std::vector<std::pair<Mor, Mor>> morphisms; // (f, g) pairs
};

inline PullbackCat category_pullback(const Functor& F, const Functor& G) {
  if (F.cod.get() != G.cod.get()) throw CheckFailure("category_pullback: codomains differ");
  const CatPtr& C = F.dom;
  const CatPtr& D = G.dom;
  PullbackCat out;
  auto cat = std::make_shared<FinCat>();
  std::map<std::pair<Obj, Obj>, Obj> oidx;
  for (Obj c = 0; c < C->num_objects(); ++c)
    for (Obj d = 0; d < D->num_objects(); ++d)
      if (F.ob[c] == G.ob[d]) {
        oidx[{c, d}] = (Obj)out.objects.size();
        out.objects.push_back({c, d});
        cat->obj_name.push_back("(" + C->obj_name[c] + "," + D->obj_name[d] + ")");
      }
  std::map<std::pair<Mor, Mor>, Mor> midx;
  for (Mor f = 0; f < C->num_morphisms(); ++f)
    for (Mor g = 0; g < D->num_morphisms(); ++g)
      if (F.mor[f] == G.mor[g]) {
        midx[{f, g}] = (Mor)out.morphisms.size();
        out.morphisms.push_back({f, g});
        cat->mor_src.push_back(oidx.at({C->src(f), D->src(g)}));
        cat->mor_tgt.push_back(oidx.at({C->tgt(f), D->tgt(g)}));
        cat->mor_name.push_back("(" + C->mor_name[f] + "," + D->mor_name[g] + ")");
      }
  cat->obj_id.assign(out.objects.size(), -1);
  for (size_t i = 0; i < out.objects.size(); ++i)
    cat->obj_id[i] = midx.at({C->id(out.objects[i].first), D->id(out.objects[i].second)});
  int M = (int)out.morphisms.size();
  cat->table.assign((size_t)M * M, -1);
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (cat->mor_tgt[f] != cat->mor_src[g]) continue;
      auto [g1, g2] = out.morphisms[g];
      auto [f1, f2] = out.morphisms[f];
      cat->table[(size_t)g * M + f] = midx.at({C->compose(g1, f1), D->compose(g2, f2)});
    }
  cat->finalize();
  out.cat = cat;
  std::vector<Obj> ob1, ob2;
  std::vector<Mor> mo1, mo2;
  for (auto& [c, d] : out.objects) ob1.push_back(c), ob2.push_back(d);
  for (auto& [f, g] : out.morphisms) mo1.push_back(f), mo2.push_back(g);
  out.proj1 = validate_functor(cat, C, std::move(ob1), std::move(mo1));
  out.proj2 = validate_functor(cat, D, std::move(ob2), std::move(mo2));
  return out;
}

// ---------------------------------------------------------------------------
// Full subcategory on a list of objects.

struct Subcat {
  CatPtr cat;
  Functor embed;
  std::vector<Obj> obj_global;
  std::vector<Mor> mor_global;
  std::vector<int> obj_local, mor_local;  // -1 where absent
};

inline Subcat full_subcategory(const CatPtr& C, const std::vector<Obj>& objs) {
  Subcat out;
  out.obj_global = objs;
  out.obj_local.assign(C->num_objects(), -1);
  for (size_t i = 0; i < objs.size(); ++i) out.obj_local[objs[i]] = (int)i;
  out.mor_local.assign(C->num_morphisms(), -1);
  auto cat = std::make_shared<FinCat>();
  for (Mor f = 0; f < C->num_morphisms(); ++f)
    if (out.obj_local[C->src(f)] >= 0 && out.obj_local[C->tgt(f)] >= 0) {
      out.mor_local[f] = (int)out.mor_global.size();
      out.mor_global.push_back(f);
      cat->mor_src.push_back(out.obj_local[C->src(f)]);
      cat->mor_tgt.push_back(out.obj_local[C->tgt(f)]);
      cat->mor_name.push_back(C->mor_name[f]);
    }
  cat->obj_id.resize(objs.size());
  for (size_t i = 0; i < objs.size(); ++i) {
    cat->obj_id[i] = out.mor_local[C->id(objs[i])];
    cat->obj_name.push_back(C->obj_name[objs[i]]);
  }
  int M = (int)out.mor_global.size();
  cat->table.assign((size_t)M * M, -1);
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f)
      if (cat->mor_tgt[f] == cat->mor_src[g])
        cat->table[(size_t)g * M + f] =
            out.mor_local[C->compose(out.mor_global[g], out.mor_global[f])];
  cat->finalize();
  out.cat = cat;
  out.embed = validate_functor(cat, C, out.obj_global, out.mor_global);
  return out;
}

}  // namespace quillen
