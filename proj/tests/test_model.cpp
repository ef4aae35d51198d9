#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <quillen/model.hpp>

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

std::string ms_key(const naive::Poset& P, const ModelStructure& ms) {
  naive::Triple t{to_mask(ms.cof), to_mask(ms.weq), to_mask(ms.fib)};
  return naive::triple_key(P, t);
}

CatPtr left_zero_monoid() {
  RawCat raw;
  raw.objects = 1;
  raw.mor = {{0, 0}, {0, 0}, {0, 0}};
  raw.identity = {0};
  raw.compositions = {{1, 1, 1}, {1, 2, 1}, {2, 1, 2}, {2, 2, 2}};
  return validate_category(raw);
}

}  // namespace

TEST_CASE("enumeration agrees with the oracle instance by instance", "[model]") {
  struct Case {
    CatPtr cat;
    naive::Poset poset;
    int expected;
    bool prune;
  };
  std::vector<Case> cases = {
      {terminal_category(), naive::Poset::chain(1), frozen::kModelsTerminal, false},
      {chain_category(2), naive::Poset::chain(2), frozen::kModels2Chain, false},
      {chain_category(3), naive::Poset::chain(3), frozen::kModels3Chain, false},
      {chain_category(4), naive::Poset::chain(4), frozen::kModels4Chain, true},
  };
  for (auto& cs : cases) {
    auto mine = enumerate_model_structures(cs.cat);
    REQUIRE((int)mine.size() == cs.expected);
    auto ref = naive::enumerate_models(cs.poset, cs.prune);
    REQUIRE(mine.size() == ref.size());
    std::set<std::string> mk, rk;
    for (auto& ms : mine) mk.insert(ms_key(cs.poset, ms));
    for (auto& t : ref) rk.insert(naive::triple_key(cs.poset, t));
    REQUIRE(mk == rk);
  }
}

TEST_CASE("diamond enumeration matches the frozen census", "[model]") {
  auto cat = diamond();
  naive::Poset P = naive::Poset::diamond();
  naive::LiftTable lt(P);
  auto mine = enumerate_model_structures(cat);
  REQUIRE((int)mine.size() == frozen::kModelsDiamond);
  for (auto& ms : mine)
    REQUIRE(naive::is_model(P, lt, to_mask(ms.cof), to_mask(ms.weq), to_mask(ms.fib)));

  // the separation witness: everything is a cofibration, the only non-trivial
  // weak equivalence is x -> top
  uint32_t C = (1u << P.m()) - 1;
  uint32_t ids = 0;
  for (int x = 0; x < 4; ++x) ids |= 1u << P.at(x, x);
  uint32_t W = ids | (1u << P.at(1, 3));
  uint32_t F = C & ~(1u << P.at(1, 3));
  bool found = false;
  for (auto& ms : mine)
    if (to_mask(ms.cof) == C && to_mask(ms.weq) == W && to_mask(ms.fib) == F) found = true;
  REQUIRE(found);
}

TEST_CASE("check_model_structure agrees with the oracle on random triples", "[model]") {
  auto cat = diamond();
  naive::Poset P = naive::Poset::diamond();
  naive::LiftTable lt(P);
  std::mt19937_64 rng(20260814);
  const uint32_t full = (1u << P.m()) - 1;
  int models_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    uint32_t C = (uint32_t)rng() & full, W = (uint32_t)rng() & full, F = (uint32_t)rng() & full;
    bool mine =
        check_model_structure(from_mask(cat, C), from_mask(cat, W), from_mask(cat, F)).pass;
    REQUIRE(mine == naive::is_model(P, lt, C, W, F));
    if (mine) ++models_seen;
  }
  // also the known 3-chain example: W = identities plus the first step
  auto c3 = chain_category(3);
  REQUIRE(check_model_structure(from_mask(c3, 63), from_mask(c3, 0b101011),
                                from_mask(c3, 0b111001))
              .pass);
  (void)models_seen;
}

TEST_CASE("model_from_intertwined reconstructs enumerated structures", "[model]") {
  auto c2 = chain_category(2);
  Wfs acof_fib{class_isos(c2), class_all(c2)};
  Wfs cof_afib{class_all(c2), class_isos(c2)};
  auto ms = model_from_intertwined(acof_fib, cof_afib);
  REQUIRE(to_mask(ms.cof) == 0b111);
  REQUIRE(to_mask(ms.weq) == 0b101);
  REQUIRE(to_mask(ms.fib) == 0b111);
  REQUIRE(check_model_structure(ms).pass);

  REQUIRE_THROWS_AS(model_from_intertwined(cof_afib, acof_fib), NotIntertwined);
  Wfs junk{class_all(c2), class_all(c2)};
  REQUIRE_THROWS_AS(model_from_intertwined(junk, cof_afib), HypothesisNotMet);

  // wfs pairs of every enumerated structure round-trip
  for (auto cat : {chain_category(3), diamond()})
    for (auto& m : enumerate_model_structures(cat)) {
      REQUIRE(check_wfs(m.cof_wfs()).pass);
      REQUIRE(check_wfs(m.acof_wfs()).pass);
      REQUIRE(check_intertwined(m.acof_wfs(), m.cof_wfs()).pass);
      auto back = model_from_intertwined(m.acof_wfs(), m.cof_wfs());
      REQUIRE(back.cof == m.cof);
      REQUIRE(back.weq == m.weq);
      REQUIRE(back.fib == m.fib);
    }
}

TEST_CASE("enumeration throws past the budget", "[model]") {
  auto big = functor_category(chain_category(2), diamond()).cat;
  REQUIRE_THROWS_AS(enumerate_model_structures(big), BudgetExceeded);
}

TEST_CASE("adjunction_check validates transposition tables", "[model]") {
  auto m = left_zero_monoid();
  auto adj = identity_adjunction(m);
  REQUIRE(adjunction_check(adj).pass);

  auto broken = adj;
  std::swap(broken.transpose[0][1], broken.transpose[0][2]);
  auto v = adjunction_check(broken);
  REQUIRE(!v.pass);
  REQUIRE(v.witness.note.find("naturality") != std::string::npos);

  auto nonbij = adj;
  nonbij.transpose[0].erase(1);
  REQUIRE(!adjunction_check(nonbij).pass);
}

TEST_CASE("quillen adjunction detection on the 2-chain", "[model]") {
  auto c2 = chain_category(2);
  auto adj = identity_adjunction(c2);
  REQUIRE(adjunction_check(adj).pass);

  ModelStructure trivial{class_all(c2), class_isos(c2), class_all(c2)};
  ModelStructure weq_all{class_isos(c2), class_all(c2), class_all(c2)};
  REQUIRE(is_quillen_adjunction(adj, trivial, trivial).pass);

  auto status = quillen_status(adj, trivial, weq_all);
  REQUIRE(!status.quillen);  // cof = all cannot land in cof = isos
  REQUIRE(!status.left_side.pass);
  REQUIRE(!status.right_side.pass);
  REQUIRE(!is_quillen_adjunction(adj, trivial, weq_all).pass);
  REQUIRE(is_quillen_adjunction(adj, weq_all, trivial).pass);
}

TEST_CASE("homotopical conservativity checks both directions", "[model]") {
  auto c2 = chain_category(2);
  auto t = terminal_category();
  REQUIRE(is_homotopically_conservative(identity_functor(c2), class_isos(c2), class_isos(c2))
              .pass);
  auto bang = validate_functor(c2, t, {0, 0}, {0, 0, 0});
  REQUIRE(!is_homotopically_conservative(bang, class_isos(c2), class_all(t)).pass);
  REQUIRE(is_homotopically_conservative(bang, class_all(c2), class_all(t)).pass);
  // preservation direction: identity on the 2-chain, shrinking weq class
  REQUIRE(!is_homotopically_conservative(identity_functor(c2), class_all(c2), class_isos(c2))
               .pass);
}
