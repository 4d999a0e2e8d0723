#pragma once

#include "walkgroup/walk_model.hpp"

#include <cstdint>

namespace walkgroup {

// Deterministic 64-bit generator (seeded splitmix-style) so batch runs are
// reproducible across platforms; std:: distributions are not portable.
class Rng64 {
 public:
  explicit Rng64(uint64_t seed) : state_(seed) {}
  uint64_t next();
  // uniform in {0, ..., n-1}; n must be small against 2^64 (it is here)
  int below(int n) { return static_cast<int>(next() % n); }

 private:
  uint64_t state_;
};

// Random nonsingular zero-drift walk with |R| < 1: six weights sampled on
// the grid {0..32}/64, the remaining two solved from the drift equations,
// candidates rejected until valid. Acceptance is below 1%, so expect a few
// hundred draws per walk.
StepWeights random_zero_drift_walk(Rng64& rng);

// Same, with the extra linear constraint Delta = 0 (order-4 family).
StepWeights random_delta0_walk(Rng64& rng);

}  // namespace walkgroup
