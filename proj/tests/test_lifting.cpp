#include <catch2/catch_amalgamated.hpp>

#include <quillen/lifting.hpp>

#include "frozen.hpp"
#include "naive_oracle.hpp"

using namespace quillen;

namespace {

CatPtr diamond() {
  std::vector<uint8_t> le(16, 0);
  auto rel = [&](int x, int y) { le[(size_t)x * 4 + y] = 1; };
  for (int i = 0; i < 4; ++i) rel(i, i);
  rel(0, 1), rel(0, 2), rel(0, 3), rel(1, 3), rel(2, 3);
  return poset_category(4, le);
}

uint32_t to_mask(const MorClass& c) {
  uint32_t m = 0;
  for (size_t i = 0; i < c.bits.size(); ++i)
    if (c.bits.test(i)) m |= 1u << i;
  return m;
}

MorClass from_mask(const CatPtr& cat, uint32_t mask) {
  MorClass c(cat);
  for (int i = 0; i < cat->num_morphisms(); ++i)
    if ((mask >> i) & 1u) c.set(i);
  return c;
}

}  // namespace

TEST_CASE("lifting relation agrees with the raw search", "[lifting]") {
  struct Case {
    CatPtr cat;
    naive::Poset poset;
  };
  std::vector<Case> cases = {{chain_category(3), naive::Poset::chain(3)},
                             {diamond(), naive::Poset::diamond()}};
  for (auto& cs : cases) {
    naive::LiftTable lt(cs.poset);
    for (int j = 0; j < cs.cat->num_morphisms(); ++j)
      for (int q = 0; q < cs.cat->num_morphisms(); ++q)
        REQUIRE(lifts_against(*cs.cat, j, q) == lt(j, q));
  }
}

TEST_CASE("find_lift returns a genuine filler", "[lifting]") {
  auto c2 = chain_category(2);
  // left = right = the arrow, top and bottom identities: no filler
  REQUIRE(!has_lift(*c2, CommSquare{0, 1, 1, 2}));
  // identity on the left always lifts via the top edge
  auto lift = find_lift(*c2, CommSquare{1, 0, 2, 1});
  REQUIRE(lift.has_value());
  REQUIRE(*lift == 1);
}

TEST_CASE("check_wfs agrees with the oracle on every pair over the 3-chain", "[lifting]") {
  auto cat = chain_category(3);
  naive::Poset P = naive::Poset::chain(3);
  naive::LiftTable lt(P);
  int agree = 0;
  for (uint32_t L = 0; L < 64; ++L)
    for (uint32_t R = 0; R < 64; ++R) {
      bool mine = check_wfs(from_mask(cat, L), from_mask(cat, R)).pass;
      bool ref = naive::is_wfs(P, lt, L, R);
      REQUIRE(mine == ref);
      if (mine) ++agree;
    }
  REQUIRE(agree >= 2);  // at least (all, isos) and (isos, all)
}

TEST_CASE("complement-generated pairs agree with the oracle on the diamond", "[lifting]") {
  auto cat = diamond();
  naive::Poset P = naive::Poset::diamond();
  naive::LiftTable lt(P);
  for (uint32_t L = 0; L < (1u << 12); L += 7) {  // strided sweep
    MorClass Lc = from_mask(cat, L);
    MorClass R = right_complement(Lc);
    bool mine = check_wfs(Lc, R).pass;
    bool ref = naive::is_wfs(P, lt, L, to_mask(R));
    REQUIRE(mine == ref);
  }
}

TEST_CASE("stock wfs on the 2-chain", "[lifting]") {
  auto c2 = chain_category(2);
  auto all = class_all(c2);
  auto isos = class_isos(c2);
  REQUIRE(check_wfs(all, isos).pass);
  REQUIRE(check_wfs(isos, all).pass);
  auto bad = check_wfs(all, all);
  REQUIRE(!bad.pass);
  REQUIRE(!bad.witness.data.empty());

  REQUIRE(to_mask(right_complement(all)) == to_mask(isos));
  REQUIRE(to_mask(left_complement(all)) == to_mask(isos));
}

TEST_CASE("class_composite composes pairwise", "[lifting]") {
  auto c3 = chain_category(3);
  // morphisms: 0:id0 1:0>1 2:0>2 3:id1 4:1>2 5:id2
  MorClass A(c3), B(c3);
  A.set(3).set(4).set(5);  // id1, 1>2, id2
  B.set(0).set(1).set(3);  // id0, 0>1, id1
  auto comp = class_composite(A, B);
  REQUIRE(to_mask(comp) == ((1u << 1) | (1u << 2) | (1u << 3) | (1u << 4)));
}

TEST_CASE("check_intertwined detects inclusion and its failure", "[lifting]") {
  auto c2 = chain_category(2);
  Wfs cofTrivfib{class_isos(c2), class_all(c2)};
  Wfs trivcofFib{class_all(c2), class_isos(c2)};
  // left classes grow from isos to all, right classes shrink accordingly
  REQUIRE(check_intertwined(cofTrivfib, trivcofFib).pass);
  auto swapped = check_intertwined(trivcofFib, cofTrivfib);
  REQUIRE(!swapped.pass);
  REQUIRE(!swapped.witness.data.empty());
}

TEST_CASE("wfs_factor picks the first admissible factorization", "[lifting]") {
  auto c3 = chain_category(3);
  Wfs w{class_all(c3), class_isos(c3)};
  auto [l, r] = wfs_factor(*c3, 2, w);
  REQUIRE(c3->compose(r, l) == 2);
  REQUIRE(w.left.test(l));
  REQUIRE(w.right.test(r));
  REQUIRE(r == 5);  // identity on the target, the only iso finishing 0>2

  Wfs empty{class_none(c3), class_none(c3)};
  REQUIRE_THROWS_AS(wfs_factor(*c3, 2, empty), CheckFailure);
}
