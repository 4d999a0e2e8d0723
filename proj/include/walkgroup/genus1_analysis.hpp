#pragma once

#include "walkgroup/finiteness_criterion.hpp"
#include "walkgroup/kernel_algebra.hpp"
#include "walkgroup/quadrature.hpp"

namespace walkgroup {

struct WrongGenus : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleAtLatticePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionNearZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Periods {
  cdouble omega1;        // purely imaginary
  double omega2 = 0.0;   // real period over [x2, x3]
  double omega3 = 0.0;   // over [X(y1), x1]
  double quadrature_error = 0.0;
};

// Lattice for the Weierstrass function: z = m*w1 + n*w2 with Im(w2/w1) > 0.
struct WeierstrassParams {
  cdouble w1, w2;
};

// Lattice spanned by (omega2, omega1) resp. (omega3, omega1).
WeierstrassParams wp_lattice_12(const Periods& p);
WeierstrassParams wp_lattice_13(const Periods& p);

// Periods by double-exponential quadrature on substituted (smooth)
// integrands; absolute error <= 1e-10 or QuadratureFailure. omega3 uses
// lower limit X(y1), which may be -infinity.
Periods periods(const KernelData& k, const BranchPoints& bp);

// Continued-fraction detection on omega3/omega2; never an exact proof.
GroupOrderResult group_order_genus1(const Periods& p, long max_denominator);

// Weierstrass elliptic function by cell reduction plus a cosecant series in
// lattice columns; relative error well under 1e-8 for the lattices here.
cdouble wp_eval(const WeierstrassParams& params, cdouble z);
cdouble wp_prime_eval(const WeierstrassParams& params, cdouble z);

struct CurvePoint {
  cdouble x, y, z;  // z = x'(omega), satisfies z^2 = D(x)
};

// Genus-1 uniformization on the lattice (omega2, omega1): the quartic form
// when d4 != 0, the cubic form when d4 = 0. y = (z - b(x))/(2a(x));
// DivisionNearZero when a(x(omega)) is too small to divide by.
CurvePoint uniformize(const KernelData& k, const BranchPoints& bp,
                      const Periods& per, cdouble omega);

// Conformal gluing spot value w(t): invert 4*wp_12 = f(t) for omega, then
// evaluate wp_13 at omega - omega2/2. Used for boundary-gluing checks only.
cdouble genus1_cgf(const KernelData& k, const BranchPoints& bp,
                   const Periods& per, cdouble t);

}  // namespace walkgroup
