#pragma once

#include "walkgroup/finiteness_criterion.hpp"
#include "walkgroup/kernel_algebra.hpp"

#include <vector>

namespace walkgroup {

struct NormZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OrbitEscape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of Q(x) in canonical form: gcd(num, den) = 1, den monic and
// nonzero; the zero function has an empty numerator. Canonical form makes
// equality syntactic.
struct RationalFunction {
  Poly num{};
  Poly den{Rat(1)};

  static RationalFunction zero() { return {}; }
  static RationalFunction one() { return {{Rat(1)}, {Rat(1)}}; }
  static RationalFunction variable() { return {{Rat(0), Rat(1)}, {Rat(1)}}; }
  static RationalFunction from_poly(Poly p) { return make(std::move(p), {Rat(1)}); }
  static RationalFunction make(Poly n, Poly d);  // canonicalizes

  bool is_zero() const { return num.empty(); }
  int degree() const;  // max(deg num, deg den); 0 for the zero function

  friend bool operator==(const RationalFunction& a,
                         const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
  }
};

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a);

// alpha(x) + beta(x) * y, reduced modulo K: y^2 = -(b(x) y + c(x)) / a(x).
struct FieldElement {
  RationalFunction alpha, beta;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

// Arithmetic context of the quadratic extension Q(x)[y] / (K).
class CurveField {
 public:
  explicit CurveField(const KernelData& k);

  FieldElement x() const { return {RationalFunction::variable(), {}}; }
  FieldElement y() const { return {{}, RationalFunction::one()}; }

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  // Throws NormZero when the norm vanishes (element not invertible).
  FieldElement inverse(const FieldElement& a) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const;

  // p evaluated at a field element (Horner).
  FieldElement eval_poly(const Poly& p, const FieldElement& at) const;

  // a(X) Y^2 + b(X) Y + c(X); identically zero for curve automorphism images.
  FieldElement kernel_at(const FieldElement& X, const FieldElement& Y) const;

 private:
  Poly a_, b_, c_;
  RationalFunction b_over_a_, c_over_a_;
};

struct CurveAutomorphismState {
  FieldElement X, Y;
  int n = 0;           // delta iterations applied
  int max_degree = 0;  // largest rational-function degree seen
};

CurveAutomorphismState initial_state(const CurveField& f);

// xi: (X, Y) -> (X, -Y - b(X)/a(X));  eta: (X, Y) -> (-X - bt(Y)/at(Y), Y).
// Conjugation forms; on NormZero in the division the step retries through
// the product form (c/a divided by the conjugate) before giving up.
CurveAutomorphismState xi_step(const CurveField& f, const KernelData& k,
                               CurveAutomorphismState s);
CurveAutomorphismState eta_step(const CurveField& f, const KernelData& k,
                                CurveAutomorphismState s);

struct TraceRow {
  int n = 0;
  int deg_x = 0;        // degree of X_n
  int deg_y = 0;        // degree of Y_n
  long coeff_bits = 0;  // largest coefficient size in bits
};

// Iterate delta = eta . xi from (x, y); return to (x, y) at minimal n gives
// Finite(2n) with an exact proof. Exceeding any cap gives
// UndecidedUpToBound, never ProvenInfinite.
GroupOrderResult delta_order(const StepWeights& w, int max_iter = 64,
                             int max_degree = 200, long max_bits = 100000,
                             std::vector<TraceRow>* trace = nullptr);

struct NumericOrbitResult {
  bool returned = false;
  int period = 0;
  int iterations = 0;
};

// Floating shadow of delta_order: y -> c(x)/(a(x)y), then x -> ct(y)/(at(y)x),
// watching for a return to the start. Throws OrbitEscape on overflow or a
// pole, and std::invalid_argument when the start is not on the curve.
NumericOrbitResult numeric_orbit(const StepWeights& w, cdouble x0,
                                 int max_iter, double tol);

}  // namespace walkgroup
