#pragma once

#include "walkgroup/exact.hpp"
#include "walkgroup/walk_model.hpp"

#include <array>
#include <string>
#include <vector>

namespace walkgroup {

struct RootFindingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SamplingDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// K(x,y) = a(x)y^2 + b(x)y + c(x) = at(y)x^2 + bt(y)x + ct(y), where
// K(x,y) = xy * (sum p_{ij} x^i y^j - 1).
struct KernelData {
  StepWeights w;
  Poly a, b, c;     // quadratics in x
  Poly at, bt, ct;  // quadratics in y
  Poly D, Dt;       // b^2 - 4ac and bt^2 - 4*at*ct
  Rat C, Ct;        // p10^2 - 4 p11 p1m1 and p01^2 - 4 p11 pm11
  std::array<Rat, 5> d;  // coefficients d0..d4 of D (d4 = C)
};

struct BranchRoot {
  cdouble value{0.0, 0.0};
  bool at_infinity = false;
  int multiplicity = 1;
};

struct BranchPoints {
  std::array<BranchRoot, 4> x;  // roots of D, ordered by modulus
  std::array<BranchRoot, 4> y;  // roots of Dt, same convention
  double residual = 0.0;        // worst relative |quartic(root)| after polish
};

enum class GenusClass {
  Singular,
  Genus1,
  Genus0ZeroDrift,
  Genus0Case2,
  Genus0Case3,
  Genus0Case4,
  Genus0Case5,
};

std::string to_string(GenusClass g);

struct SingularityReport {
  bool singular = false;
  std::string reason;
};

// One branch value of X(y) or Y(x); the leading coefficient of the quadratic
// can vanish, sending one root to infinity.
struct BranchValue {
  cdouble value{0.0, 0.0};
  bool at_infinity = false;
};

// Closed sample loops of the two real components of the quartic curve
// {K(x,y)=0} over the slits [y1,y2] and [y3,y4].
struct CurveSamples {
  std::vector<cdouble> m1, m2;
};

KernelData build_kernel(const StepWeights& w);

// Singular means deg_y K < 2, deg_x K < 2, or K reducible. Reducibility is
// decided exactly: a common factor of (a,b,c) or (at,bt,ct), or a
// discriminant whose monic part is a polynomial square (then the two
// y-branches are themselves polynomial and the kernel splits).
SingularityReport is_singular(const KernelData& k);

// Roots of D and Dt, polished to relative residual 1e-12. Double roots are
// located exactly through gcd(D, D') when the weights are rational; in
// particular zero drift pins x2 = x3 = 1 and y2 = y3 = 1 symbolically.
BranchPoints branch_points(const KernelData& k);

GenusClass genus_classify(const KernelData& k);

// The two roots of at(y)x^2 + bt(y)x + ct(y) (resp. a,b,c), ordered by
// modulus, ties by smaller real then smaller imaginary part. A vanishing
// leading coefficient yields the finite root plus an at-infinity marker.
std::pair<BranchValue, BranchValue> branch_X(const KernelData& k, cdouble y);
std::pair<BranchValue, BranchValue> branch_Y(const KernelData& k, cdouble x);

// Samples X0 along both edges of each slit; the loops close up because the
// two edges carry complex-conjugate branch values. Throws SamplingDegenerate
// when a slit has zero length. An unbounded slit (y4 at infinity) is
// truncated for sampling purposes.
CurveSamples curve_M(const KernelData& k, int n_samples);

// Zero drift forces D(1) = 0 twice; this peels the double root off exactly:
// D(x) = (x-1)^2 * (C x^2 + e x + f). Throws std::logic_error when the
// division is inexact (nonzero drift).
struct DeflatedQuadratic {
  Rat f, e, C;
};
DeflatedQuadratic deflate_double_root(const KernelData& k);

}  // namespace walkgroup
