#include <catch2/catch_amalgamated.hpp>

#include <quillen/fincat.hpp>

#include "frozen.hpp"
#include "naive_oracle.hpp"

using namespace quillen;

namespace {

CatPtr diamond() {
  // 0 = bottom, 1 and 2 incomparable, 3 = top
  std::vector<uint8_t> le(16, 0);
  auto rel = [&](int x, int y) { le[(size_t)x * 4 + y] = 1; };
  for (int i = 0; i < 4; ++i) rel(i, i);
  rel(0, 1), rel(0, 2), rel(0, 3), rel(1, 3), rel(2, 3);
  return poset_category(4, le, {"bot", "x", "y", "top"});
}

// Two objects, one isomorphism each way.
CatPtr iso_pair() {
  RawCat raw;
  raw.objects = 2;
  raw.mor = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  raw.identity = {0, 1};
  raw.compositions = {{3, 2, 0}, {2, 3, 1}};
  return validate_category(raw);
}

// One object, identity plus two absorbing endomorphisms: g∘f = g whenever
// neither factor is an identity. Non-thin, useful for negative tests.
CatPtr left_zero_monoid() {
  RawCat raw;
  raw.objects = 1;
  raw.mor = {{0, 0}, {0, 0}, {0, 0}};
  raw.identity = {0};
  raw.compositions = {{1, 1, 1}, {1, 2, 1}, {2, 1, 2}, {2, 2, 2}};
  raw.mor_name = {"id", "a", "b"};
  return validate_category(raw);
}

}  // namespace

TEST_CASE("stock categories have expected tables", "[fincat]") {
  auto c3 = chain_category(3);
  REQUIRE(c3->num_objects() == 3);
  REQUIRE(c3->num_morphisms() == frozen::kMorphisms3Chain);
  auto t = terminal_category();
  REQUIRE(t->num_objects() == 1);
  REQUIRE(t->num_morphisms() == 1);

  naive::Poset nc = naive::Poset::chain(3);
  for (int f = 0; f < c3->num_morphisms(); ++f) {
    REQUIRE(c3->src(f) == nc.mor[f].first);
    REQUIRE(c3->tgt(f) == nc.mor[f].second);
  }
  naive::Poset nd = naive::Poset::diamond();
  auto d = diamond();
  REQUIRE(d->num_morphisms() == (int)nd.mor.size());
  for (int f = 0; f < d->num_morphisms(); ++f) {
    REQUIRE(d->src(f) == nd.mor[f].first);
    REQUIRE(d->tgt(f) == nd.mor[f].second);
  }
}

TEST_CASE("validate_category rejects malformed input", "[fincat]") {
  SECTION("missing composite") {
    RawCat raw;
    raw.objects = 3;
    raw.mor = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}};
    raw.identity = {0, 1, 2};
    REQUIRE_THROWS_MATCHES(validate_category(raw), ValidationError,
                           Catch::Matchers::Predicate<ValidationError>(
                               [](const ValidationError& e) { return e.kind == "MissingComposite"; }));
  }
  SECTION("identity law violated") {
    RawCat raw;
    raw.objects = 1;
    raw.mor = {{0, 0}, {0, 0}};
    raw.identity = {0};
    raw.compositions = {{1, 0, 0}, {1, 1, 1}};  // e∘id claimed to be id
    REQUIRE_THROWS_MATCHES(validate_category(raw), ValidationError,
                           Catch::Matchers::Predicate<ValidationError>(
                               [](const ValidationError& e) { return e.kind == "IdentityLawViolated"; }));
  }
  SECTION("associativity violated") {
    RawCat raw;
    raw.objects = 1;
    raw.mor = {{0, 0}, {0, 0}, {0, 0}};
    raw.identity = {0};
    raw.compositions = {{1, 1, 2}, {1, 2, 2}, {2, 1, 1}, {2, 2, 2}};
    REQUIRE_THROWS_MATCHES(validate_category(raw), ValidationError,
                           Catch::Matchers::Predicate<ValidationError>([](const ValidationError& e) {
                             return e.kind == "AssociativityViolated";
                           }));
  }
  SECTION("dangling endpoint") {
    RawCat raw;
    raw.objects = 1;
    raw.mor = {{0, 5}};
    raw.identity = {0};
    REQUIRE_THROWS_MATCHES(validate_category(raw), ValidationError,
                           Catch::Matchers::Predicate<ValidationError>(
                               [](const ValidationError& e) { return e.kind == "DanglingEndpoint"; }));
  }
}

TEST_CASE("validate_functor accepts and rejects correctly", "[fincat]") {
  auto c2 = chain_category(2);
  auto c3 = chain_category(3);

  auto idf = identity_functor(c3);
  REQUIRE_NOTHROW(validate_functor(c3, c3, idf.ob, idf.mor));

  // order-reversing object map admits no morphism assignment
  REQUIRE_THROWS_MATCHES(validate_functor(c2, c2, {1, 0}, {2, 0, 0}), ValidationError,
                         Catch::Matchers::Predicate<ValidationError>(
                             [](const ValidationError& e) { return e.kind == "EndpointMismatch"; }));

  auto m = left_zero_monoid();
  // chain 0<1<2 into the monoid: u -> a, v -> b forces (v∘u) -> b∘a = b
  REQUIRE_NOTHROW(validate_functor(c3, m, {0, 0, 0}, {0, 1, 2, 0, 2, 0}));
  REQUIRE_THROWS_MATCHES(validate_functor(c3, m, {0, 0, 0}, {0, 1, 1, 0, 2, 0}), ValidationError,
                         Catch::Matchers::Predicate<ValidationError>([](const ValidationError& e) {
                           return e.kind == "CompositionNotPreserved";
                         }));

  auto g = compose_functor(identity_functor(c2), identity_functor(c2));
  REQUIRE(same_functor(g, identity_functor(c2)));
}

TEST_CASE("natural transformations are validated", "[fincat]") {
  auto c2 = chain_category(2);
  auto c3 = chain_category(3);
  auto F = validate_functor(c2, c3, {0, 1}, {0, 1, 3});
  auto G = validate_functor(c2, c3, {1, 2}, {3, 4, 5});
  REQUIRE_NOTHROW(validate_nat(F, G, {1, 4}));

  auto m = left_zero_monoid();
  auto Fa = validate_functor(c2, m, {0, 0}, {0, 1, 0});
  REQUIRE_NOTHROW(validate_nat(Fa, Fa, {0, 0}));
  // component pair (id, b) breaks naturality: a∘id = a but b∘a = b
  REQUIRE_THROWS_MATCHES(validate_nat(Fa, Fa, {0, 2}), ValidationError,
                         Catch::Matchers::Predicate<ValidationError>(
                             [](const ValidationError& e) { return e.kind == "NaturalityViolated"; }));
}

TEST_CASE("morphism classes support set algebra", "[fincat]") {
  auto c3 = chain_category(3);
  auto all = class_all(c3);
  auto ids = class_identities(c3);
  REQUIRE(all.count() == 6);
  REQUIRE(ids.count() == 3);
  REQUIRE(ids.subset_of(all));
  REQUIRE(((all & ids) == ids));
  REQUIRE(((ids | ~ids) == all));
  REQUIRE(class_isos(c3).same_bits(ids));
  auto ip = iso_pair();
  REQUIRE(class_isos(ip).count() == 4);
  REQUIRE(is_iso(*ip, 2));
  REQUIRE(!is_iso(*chain_category(2), 1));
}

TEST_CASE("factorizations enumerate two-step decompositions", "[fincat]") {
  auto c3 = chain_category(3);
  Mor f02 = 2;  // 0 -> 2 in lexicographic order
  REQUIRE(c3->src(f02) == 0);
  REQUIRE(c3->tgt(f02) == 2);
  auto fac = factorizations(*c3, f02);
  REQUIRE((int)fac.size() == frozen::kFactorizations3Chain02);
  bool has_left_id = false, has_right_id = false;
  for (auto& [g, h] : fac) {
    REQUIRE(c3->compose(h, g) == f02);
    if (c3->is_id(g)) has_left_id = true;
    if (c3->is_id(h)) has_right_id = true;
  }
  REQUIRE(has_left_id);
  REQUIRE(has_right_id);
}

TEST_CASE("commutative squares match the reference counts", "[fincat]") {
  REQUIRE((int)commutative_squares(*terminal_category()).size() == frozen::kSquaresTerminal);
  REQUIRE((int)commutative_squares(*chain_category(2)).size() == frozen::kSquares2Chain);
  REQUIRE((int)commutative_squares(*chain_category(3)).size() == frozen::kSquares3Chain);
  REQUIRE((int)commutative_squares(*diamond()).size() == frozen::kSquaresDiamond);

  auto c2 = chain_category(2);
  auto ids = class_identities(c2);
  auto filtered = commutative_squares(*c2, nullptr, &ids, &ids, nullptr);
  REQUIRE(filtered.size() == 3);
  for (auto& s : filtered) REQUIRE(s.top == s.bottom);

  for (auto& s : commutative_squares(*diamond())) {
    auto d = diamond();
    REQUIRE(d->compose(s.right, s.top) == d->compose(s.bottom, s.left));
  }
}

TEST_CASE("opposite is an involution on tables", "[fincat]") {
  for (auto c : {chain_category(3), diamond(), iso_pair(), left_zero_monoid()}) {
    auto opop = opposite(opposite(c));
    REQUIRE(table_equal(*c, *opop));
  }
  auto c2op = opposite(chain_category(2));
  REQUIRE(c2op->src(1) == 1);
  REQUIRE(c2op->tgt(1) == 0);
}

TEST_CASE("product categories multiply tables", "[fincat]") {
  auto c2 = chain_category(2);
  auto p = product_category(c2, c2);
  REQUIRE(p.cat->num_objects() == 4);
  REQUIRE(p.cat->num_morphisms() == frozen::kMorphismsProduct2x2);

  auto c3 = chain_category(3);
  auto right_unit = product_category(c3, terminal_category());
  REQUIRE(table_equal(*right_unit.cat, *c3));
  auto left_unit = product_category(terminal_category(), c3);
  REQUIRE(table_equal(*left_unit.cat, *c3));

  REQUIRE_THROWS_AS(product_category(chain_category(4), chain_category(4), 5), SizeGuardExceeded);
}

TEST_CASE("functor categories enumerate functors and naturals", "[fincat]") {
  auto c2 = chain_category(2);
  auto c3 = chain_category(3);

  auto fc1 = functor_category(terminal_category(), c3);
  REQUIRE((int)fc1.objects.size() == 3);
  REQUIRE(table_equal(*fc1.cat, *c3));

  auto fc23 = functor_category(c2, c3);
  REQUIRE((int)fc23.objects.size() == frozen::kObjectsFunctorCat_2_3chain);
  REQUIRE(fc23.cat->num_morphisms() == frozen::kSquares3Chain);

  auto fc22 = functor_category(c2, c2);
  REQUIRE((int)fc22.objects.size() == frozen::kObjectsFunctorCat_2_2);
  REQUIRE(fc22.cat->num_morphisms() == frozen::kSquares2Chain);

  auto fcd = functor_category(c2, diamond());
  REQUIRE((int)fcd.objects.size() == 9);
  REQUIRE(fcd.cat->num_morphisms() == frozen::kSquaresDiamond);

  // evaluation functors are functorial by construction; spot-check images
  auto F = validate_functor(c2, c3, {0, 2}, {0, 2, 5});
  int idx = fc23.find_object(F);
  REQUIRE(idx >= 0);
  REQUIRE(fc23.eval[0].ob[idx] == 0);
  REQUIRE(fc23.eval[1].ob[idx] == 2);

  REQUIRE_THROWS_AS(functor_category(c2, diamond(), 5), SizeGuardExceeded);
}

TEST_CASE("functor categories handle non-thin targets", "[fincat]") {
  auto m = left_zero_monoid();
  auto fc = functor_category(m, m);

  // independent brute force over endomorphism maps of the monoid
  int expected = 0;
  for (int ia = 0; ia < 3; ++ia)
    for (int ib = 0; ib < 3; ++ib) {
      std::vector<Mor> mm = {0, ia, ib};
      bool ok = true;
      for (Mor g = 0; g < 3 && ok; ++g)
        for (Mor f = 0; f < 3 && ok; ++f)
          if (mm[m->compose(g, f)] != m->compose(mm[g], mm[f])) ok = false;
      if (ok) ++expected;
    }
  REQUIRE((int)fc.objects.size() == expected);

  // the enumerated category must itself validate
  RawCat raw;
  raw.objects = fc.cat->num_objects();
  for (int f = 0; f < fc.cat->num_morphisms(); ++f) raw.mor.push_back({fc.cat->src(f), fc.cat->tgt(f)});
  raw.identity = fc.cat->obj_id;
  for (Mor g = 0; g < fc.cat->num_morphisms(); ++g)
    for (Mor f = 0; f < fc.cat->num_morphisms(); ++f)
      if (fc.cat->composable(g, f)) raw.compositions.push_back({g, f, fc.cat->compose(g, f)});
  REQUIRE_NOTHROW(validate_category(raw));
}

TEST_CASE("category pullbacks agree with products over the point", "[fincat]") {
  auto c2 = chain_category(2);
  auto pb_id = category_pullback(identity_functor(c2), identity_functor(c2));
  REQUIRE(table_equal(*pb_id.cat, *c2));

  auto t = terminal_category();
  auto bang2 = validate_functor(c2, t, {0, 0}, {0, 0, 0});
  auto pb = category_pullback(bang2, bang2);
  auto prod = product_category(c2, c2);
  REQUIRE(table_equal(*pb.cat, *prod.cat));
  REQUIRE(pb.proj1.ob == prod.proj1.ob);
  REQUIRE(pb.proj2.mor == prod.proj2.mor);
}

TEST_CASE("full subcategories restrict tables", "[fincat]") {
  auto c3 = chain_category(3);
  auto sub = full_subcategory(c3, {0, 2});
  REQUIRE(table_equal(*sub.cat, *chain_category(2)));
  REQUIRE(sub.embed.ob == std::vector<Obj>{0, 2});
  REQUIRE(sub.mor_global == std::vector<Mor>{0, 2, 5});
}
