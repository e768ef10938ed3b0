#pragma once

// Property checks shared by the unit tests and the acceptance binary. Each
// returns the number of cases examined and the first counterexample found.

#include <cstdint>
#include <random>
#include <string>

#include "hpt/kernel.hpp"
#include "hpt/surface.hpp"

namespace hpt::test {

struct PropertyResult {
  bool ok = true;
  std::size_t cases = 0;
  std::string detail;

  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

SurfacePtr random_surface(std::mt19937& rng, int depth);

// The globals of `g` declared before position `count`.
GlobalEnv prefix(const GlobalEnv& g, std::size_t count);

PropertyResult roundtrip_generated(std::size_t n, std::uint32_t seed);
PropertyResult roundtrip_corpus();
PropertyResult readback_idempotent(const GlobalEnv& g);
PropertyResult conv_equivalence(const GlobalEnv& g, std::size_t samples,
                                std::uint32_t seed);
PropertyResult subject_reduction(const GlobalEnv& g);
PropertyResult j_beta(const GlobalEnv& g, std::size_t n, std::uint32_t seed);
PropertyResult core_recheck(const GlobalEnv& g);
PropertyResult mutation_robustness(const GlobalEnv& g, std::size_t n,
                                   std::uint32_t seed);

}  // namespace hpt::test
