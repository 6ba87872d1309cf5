// Prints the constituents of U^e_d from the closed formula and from the MeatAxe.

#include <cstdio>
#include <cstdlib>

#include "weightred/weightred.hpp"

int main(int argc, char** argv) {
  using namespace weightred;
  const int p = argc > 1 ? std::atoi(argv[1]) : 5;
  const std::int64_t d = argc > 2 ? std::atoll(argv[2]) : 7;
  const std::int64_t e = argc > 3 ? std::atoll(argv[3]) : 0;
  try {
    const TowerPtr T = make_tower(p);
    const auto [r, s] = degree_digits(p, d);
    std::printf("U^%lld_%lld at p=%d, dim %zu\n", static_cast<long long>(e), static_cast<long long>(d), p, proj_count(*T));
    std::printf("formula:");
    for (const auto& w : diamond_constituents(p, r, s, e)) std::printf(" %s", w.to_string(p).c_str());
    std::printf("\nmeataxe:");
    for (const auto& w : composition_factors(induced_module(T, d, e), 1).labels()) std::printf(" %s", w.to_string(p).c_str());
    std::printf("\n");
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
