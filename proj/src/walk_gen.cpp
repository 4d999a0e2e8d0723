#include "walkgroup/walk_gen.hpp"

#include "walkgroup/kernel_algebra.hpp"

namespace walkgroup {

uint64_t Rng64::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

Rat grid(Rng64& rng) { return Rat(rng.below(33), 64); }

bool acceptable(StepWeights& w) {
  Rat sum(0);
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      if (i == 0 && j == 0) continue;
      if (w.at(i, j) < 0) return false;
      sum += w.at(i, j);
    }
  if (sum > 1 || sum == 0) return false;
  w.at(0, 0) = 1 - sum;
  try {
    w.validate();
    Moments m = moments(w);
    if (m.r_squared >= 1) return false;
    KernelData k = build_kernel(w);
    if (is_singular(k).singular) return false;
    if (genus_classify(k) != GenusClass::Genus0ZeroDrift) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

StepWeights random_zero_drift_walk(Rng64& rng) {
  for (;;) {
    StepWeights w;
    Rat p11 = grid(rng), pm11 = grid(rng), p1m1 = grid(rng);
    Rat pm1m1 = grid(rng), p10 = grid(rng), p01 = grid(rng);
    w.at(1, 1) = p11;
    w.at(-1, 1) = pm11;
    w.at(1, -1) = p1m1;
    w.at(-1, -1) = pm1m1;
    w.at(1, 0) = p10;
    w.at(0, 1) = p01;
    // drift_x = 0 and drift_y = 0 solved for the two western/southern steps
    w.at(-1, 0) = p10 + p11 + p1m1 - pm11 - pm1m1;
    w.at(0, -1) = p01 + p11 + pm11 - p1m1 - pm1m1;
    if (acceptable(w)) return w;
  }
}

StepWeights random_delta0_walk(Rng64& rng) {
  for (;;) {
    StepWeights w;
    Rat p11 = grid(rng), pm11 = grid(rng), p1m1 = grid(rng);
    Rat p10 = grid(rng), p01 = grid(rng);
    w.at(1, 1) = p11;
    w.at(-1, 1) = pm11;
    w.at(1, -1) = p1m1;
    w.at(1, 0) = p10;
    w.at(0, 1) = p01;
    // mixed moment zero plus zero drift: Delta factors through and vanishes
    w.at(-1, -1) = p1m1 + pm11 - p11;
    w.at(-1, 0) = p10 + 2 * p11 - 2 * pm11;
    w.at(0, -1) = p01 + 2 * p11 - 2 * p1m1;
    if (acceptable(w)) return w;
  }
}

}  // namespace walkgroup
