#pragma once

#include "walkgroup/finiteness_criterion.hpp"
#include "walkgroup/kernel_algebra.hpp"
#include "walkgroup/quadrature.hpp"

#include <array>
#include <string>

namespace walkgroup {

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchCutViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RealRoots : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LimitPeriods {
  double alpha2 = 0.0;  // closed form pi/sqrt(C(x4-1)(1-x1))
  double alpha3 = 0.0;  // quadrature
  double tolerance = 0.0;
};

// Rational uniformization of the zero-drift (genus 0) curve:
//   x(u) = (u^2 - (z1+1/z1)u + 1) / (u^2 - (z0+1/z0)u + 1)
//   y(u) = same shape in rho*u with z3 over z2.
// The quadratic factors are invariant under z -> 1/z, so the +/- choices in
// the z formulas pair into reciprocal roots; the search over sign choices
// and over the two rho roots keeps the combinations that make K(x(u), y(u))
// vanish, then fixes arg(rho) in [0, pi].
struct RationalUniformization {
  cdouble z0, z1, z2, z3;
  cdouble rho;
  std::string sign_choices;
  std::array<cdouble, 3> f0, f1, f2, f3;  // quadratic coefficients, ascending

  cdouble x_of(cdouble u) const;
  cdouble y_of(cdouble u) const;
};

struct AutomorphismImages {
  cdouble xi, eta, delta;
};

LimitPeriods limit_periods(const KernelData& k);

RationalUniformization rational_uniformization(const KernelData& k);

// xi(u) = 1/u, eta(u) = 1/(rho^2 u), delta(u) = u/rho^2.
AutomorphismImages automorphisms(const RationalUniformization& ru, cdouble u);

// Order 2*inf{l >= 1 : rho^(2l) = 1}, via rationality of arg(rho)/pi.
GroupOrderResult group_order_from_rho(const RationalUniformization& ru,
                                      long max_denominator);

// Limit conformal gluing function u(t) through the sin^2/arcsin composition
// with f(t) = D''(x4)/6 + D'(x4)/(t-x4) (or the d4=0 variant).
cdouble limit_cgf(const KernelData& k, cdouble t);

// |arg| of a complex root of at(1)*t^2 + m*t + a(1), m = sum i*j*p_ij;
// equals theta exactly. Throws RealRoots when the roots are real (|R| >= 1).
double tangent_angle(const KernelData& k);

// Least-squares slope of log|u(t)| against -log(1-t) at t = 1-10^-k,
// k = 2..6; approaches pi/theta.
double corner_exponent(const KernelData& k);

}  // namespace walkgroup
