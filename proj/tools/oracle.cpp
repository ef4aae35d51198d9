// Reference-value generator: runs the naive brute-force checks on the small
// posets the test suite freezes values for, and prints everything needed to
// pin expected results. Independent of the main library by design.

#include <cstdio>
#include <string>

#include "../tests/naive_oracle.hpp"

using naive::Poset;

static void report(const char* name, const Poset& P, bool prune) {
  auto models = naive::enumerate_models(P, prune);
  std::printf("== %s: %d objects, %d morphisms, %d commutative squares\n", name, P.n,
              P.m(), naive::count_squares(P));
  std::printf("model structures: %zu%s\n", models.size(),
              prune ? " (identities pre-pinned in all classes)" : "");
  for (auto& t : models) std::printf("  %s\n", naive::triple_key(P, t).c_str());
}

int main() {
  report("terminal", Poset::chain(1), false);
  report("2-chain", Poset::chain(2), false);
  report("3-chain", Poset::chain(3), false);
  report("4-chain", Poset::chain(4), true);
  report("diamond", Poset::diamond(), true);

  // The separation candidate on the diamond: C = all, W = ids + (1>3),
  // F = everything except (1>3). Object order: 0=bot, 1=x, 2=y, 3=top.
  {
    Poset P = Poset::diamond();
    naive::LiftTable lt(P);
    uint32_t all = (1u << P.m()) - 1;
    uint32_t W = 0;
    for (int x = 0; x < P.n; ++x) W |= 1u << P.at(x, x);
    W |= 1u << P.at(1, 3);
    uint32_t F = all & ~(1u << P.at(1, 3));
    std::printf("== diamond witness (C=all, W=ids+{1>3}, F=all-{1>3}): %s\n",
                naive::is_model(P, lt, all, W, F) ? "model structure" : "NOT a model structure");
  }

  // Factorization counts on the 3-chain (0>2 must have three).
  {
    Poset P = Poset::chain(3);
    int f02 = P.at(0, 2);
    int cnt = 0;
    for (int g = 0; g < P.m(); ++g)
      for (int h = 0; h < P.m(); ++h)
        if (P.src(g) == 0 && P.composable(h, g) && P.tgt(h) == 2 && P.comp(h, g) == f02)
          ++cnt;
    std::printf("== 3-chain factorizations of 0>2: %d\n", cnt);
  }
  return 0;
}
