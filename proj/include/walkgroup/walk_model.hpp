#pragma once

#include "walkgroup/exact.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace walkgroup {

struct DegenerateVariance : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateCorrelation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Small-step weights p_{i,j}, i,j in {-1,0,1}, stored exactly as rationals.
// `exact` records whether the rationals are the model itself or a
// high-precision stand-in for irrational weights (then downstream code must
// not trust algebraic identities beyond the stored precision).
struct StepWeights {
  std::array<std::array<Rat, 3>, 3> p{};  // p[i+1][j+1] = weight of step (i,j)
  bool exact = true;

  Rat& at(int i, int j) { return p[i + 1][j + 1]; }
  const Rat& at(int i, int j) const { return p[i + 1][j + 1]; }

  // Throws std::invalid_argument unless all weights are nonnegative, the sum
  // is 1 (exactly when exact, else within 1e-12) and some non-center weight
  // is positive.
  void validate() const;

  StepWeights transpose() const;  // swap the roles of i and j
  StepWeights mirror_x() const;   // i -> -i
  StepWeights mirror_y() const;   // j -> -j

  static StepWeights from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct Moments {
  Rat drift_x, drift_y;  // sum i*p, sum j*p
  Rat var_x, var_y;      // sum i^2*p, sum j^2*p
  Rat mixed;             // sum i*j*p
  Rat r_squared;         // mixed^2 / (var_x * var_y)
  double r;              // mixed / sqrt(var_x * var_y)
};

enum class CosClass { RationalCos, QuadraticCos, NumericOnly };

struct AngleTheta {
  double theta;      // in (0, pi)
  double cos_theta;  // = -r
  CosClass exact_class;
  Rat cos2;      // exact cos^2(theta) = r_squared (meaningful when exact)
  int cos_sign;  // sign of cos(theta) in {-1, 0, +1}
  std::optional<Rat> cos_rational;  // set iff exact_class == RationalCos
};

struct DeltaDeterminant {
  Rat value;
  std::array<std::array<Rat, 3>, 3> matrix;  // center entry is p00 - 1
};

// Throws DegenerateVariance when var_x or var_y vanishes.
Moments moments(const StepWeights& w);

// Requires |r| < 1; throws DegenerateCorrelation otherwise.
AngleTheta angle_theta(const StepWeights& w);

DeltaDeterminant delta_determinant(const StepWeights& w);

}  // namespace walkgroup
