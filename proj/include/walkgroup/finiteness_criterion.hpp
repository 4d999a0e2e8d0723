#pragma once

#include "walkgroup/kernel_algebra.hpp"
#include "walkgroup/walk_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace walkgroup {

struct SingularWalk : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateBranchPoints : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { Finite, ProvenInfinite, UndecidedUpToBound };

enum class ProofPathKind {
  ExactAlgebraic,
  NumericContinuedFraction,
  OrbitOracle,
  TheoremPartII,
};

struct ProofPath {
  ProofPathKind kind = ProofPathKind::ExactAlgebraic;
  long denominator = 0;    // denominator cap (continued-fraction path)
  double tolerance = 0.0;  // acceptance window used (continued-fraction path)
};

struct Fraction {
  long p = 0, q = 0;
};

struct GroupOrderResult {
  Verdict verdict = Verdict::UndecidedUpToBound;
  int order = 0;       // set when Finite (always even, >= 4)
  std::string reason;  // set when ProvenInfinite
  long bound = 0;      // set when UndecidedUpToBound
  ProofPath proof_path;
  std::optional<Fraction> theta_over_pi;  // lowest terms when known
};

std::string to_string(Verdict v);
std::string to_string(ProofPathKind k);

struct LambdaValue {
  double lambda = 0.0;
  double lambda_tilde = 0.0;  // same quantity for the transposed walk
};

struct RationalityResult {
  enum class Kind { Rational, Irrational, NumericUndecided };
  Kind kind = Kind::NumericUndecided;
  long p = 0, q = 0;     // set when Rational
  bool exact = false;    // true when settled by the algebraic table
  double tolerance = 0;  // window used on the numeric path
};

// Entry of the degree-<=2 table: cos(p*pi/q) has rational square cos2 and
// the given sign. Built once by brute-force scan of cos(p*pi/q), q <= 120,
// keeping angles whose cosine has algebraic degree <= 2.
struct CosTableEntry {
  Rat cos2;
  int sign = 0;  // -1, 0, +1
  long p = 0, q = 0;
};
const std::vector<CosTableEntry>& rational_cos2_table();

// Exact path when the angle carries an exact cos^2: a table hit gives
// theta/pi = p/q, a miss is a proof of irrationality (a rational angle whose
// cosine has degree <= 2 must be in the table). Inexact angles fall back to
// continued-fraction convergents with window |theta/pi - p/q| < 1e-9/q^2.
RationalityResult theta_rationality(const AngleTheta& t, long max_denominator);

// Best rational approximation p/q of x in (0,1) with q <= max_denominator
// and |x - p/q| < window_scale/q^2, via continued-fraction convergents.
std::optional<Fraction> cf_detect(double x, long max_denominator,
                                  double window_scale = 1e-9);

// Headline dispatch: singular -> throws SingularWalk; genus-0 drift cases ->
// ProvenInfinite; zero drift -> theta rationality; genus 1 -> period ratio.
GroupOrderResult decide(const StepWeights& w, long max_denominator = 10000);

// Zero-drift branch points off the double root at 1: the deflated quadratic
// Q = C x^2 + e x + f and its roots, x1 in [-1, 1) and x4 outside (infinite
// when C = 0). Throws DegenerateBranchPoints when the roots coincide or
// neither lands in [-1, 1).
struct ZeroDriftBranches {
  Rat f, e, C;
  double x1 = 0.0, x4 = 0.0;
  bool x4_infinite = false;
};
ZeroDriftBranches zero_drift_branches(const KernelData& k);

// X0(y1) = -bt(y1)/(2 at(y1)); the branch-point-at-infinity case at(y1) = 0
// is decided exactly (rational y1 directly, quadratic-irrational y1 through
// gcd with the deflated quadratic).
struct XAtY1 {
  double value = 0.0;
  bool infinite = false;
};
XAtY1 x_at_y1(const KernelData& k);

// Lambda for the walk and its transpose, from the deflated discriminant and
// X0(y1). Throws DegenerateBranchPoints when x1 = x4 or X(y1) = 1.
LambdaValue lambda_form(const KernelData& k);

// Lambda of a single kernel (the lambda_tilde of lambda_form(k) is the
// lambda of the transposed kernel).
double lambda_of_kernel(const KernelData& k);

// Delta = 0 exactly (order-4 criterion).
bool order4_test(const StepWeights& w);

}  // namespace walkgroup
