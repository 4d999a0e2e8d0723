#include "doctest.h"
#include "test_walks.hpp"
#include "walkgroup/genus1_analysis.hpp"
#include "walkgroup/kernel_algebra.hpp"

#include <cmath>

using namespace walkgroup;

namespace {

double kernel_residual(const KernelData& k, cdouble x, cdouble y) {
  cdouble v = poly::eval(k.a, x) * y * y + poly::eval(k.b, x) * y +
              poly::eval(k.c, x);
  double n = std::max(1.0, std::abs(x)) * std::max(1.0, std::abs(x)) *
             std::max(1.0, std::abs(y)) * std::max(1.0, std::abs(y));
  return std::abs(v) / n;
}

}  // namespace

TEST_CASE("periods of the quartic genus-1 exemplar") {
  KernelData k = build_kernel(testwalks::g1ex());
  BranchPoints bp = branch_points(k);
  Periods per = periods(k, bp);
  CHECK(std::abs(per.omega2 - 12.69494277963333) <= 1e-7);
  CHECK(std::abs(per.omega1.imag() - 12.06444996991059) <= 1e-7);
  CHECK(std::abs(per.omega1.real()) <= 1e-12);
  CHECK(std::abs(per.omega3 - 6.347471389816665) <= 1e-7);
  CHECK(std::abs(per.omega3 / per.omega2 - 0.5) <= 1e-9);
  CHECK(per.quadrature_error <= 1e-9);

  GroupOrderResult g = group_order_genus1(per, 10000);
  CHECK(g.verdict == Verdict::Finite);
  CHECK(g.order == 4);
  CHECK(g.proof_path.kind == ProofPathKind::NumericContinuedFraction);
  REQUIRE(g.theta_over_pi.has_value());
  CHECK(g.theta_over_pi->p == 1);
  CHECK(g.theta_over_pi->q == 2);
}

TEST_CASE("periods of the cubic genus-1 exemplar") {
  KernelData k = build_kernel(testwalks::g1cub());
  CHECK(k.d[4] == 0);
  CHECK(k.d[3] == Rat(-21, 50));
  BranchPoints bp = branch_points(k);
  const double expect[3] = {0.0792221113647570, 0.663473148195239,
                            1.019209502344765};
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(bp.x[i].value - cdouble(expect[i], 0.0)) <= 1e-9);
  CHECK(bp.x[3].at_infinity);

  Periods per = periods(k, bp);
  CHECK(std::abs(per.omega2 - 11.222576693988977) <= 1e-7);
  CHECK(std::abs(per.omega1.imag() - 12.5639043002462) <= 1e-7);
  CHECK(per.omega3 > 0);
  CHECK(std::isfinite(per.omega3));
}

TEST_CASE("periods reject the wrong configuration") {
  // zero drift pins x2 = x3 = 1: not the genus-1 setting
  KernelData k = build_kernel(testwalks::gessel());
  CHECK_THROWS(periods(k, branch_points(k)));
}

TEST_CASE("Weierstrass function basics") {
  KernelData k = build_kernel(testwalks::g1ex());
  Periods per = periods(k, branch_points(k));
  WeierstrassParams wp = wp_lattice_12(per);

  cdouble z(0.3 * per.omega2, 0.2 * per.omega1.imag());
  cdouble p1 = wp_eval(wp, z);
  CHECK(std::abs(wp_eval(wp, -z) - p1) <= 1e-10 * (1.0 + std::abs(p1)));
  CHECK(std::abs(wp_eval(wp, z + wp.w1) - p1) <=
        1e-9 * (1.0 + std::abs(p1)));
  CHECK(std::abs(wp_eval(wp, z + wp.w2) - p1) <=
        1e-9 * (1.0 + std::abs(p1)));

  // (wp')^2 = 4 wp^3 - g2 wp - g3 cannot be checked without invariants, but
  // oddness and periodicity can
  cdouble d1 = wp_prime_eval(wp, z);
  CHECK(std::abs(wp_prime_eval(wp, -z) + d1) <= 1e-10 * (1.0 + std::abs(d1)));
  CHECK(std::abs(wp_prime_eval(wp, z + wp.w2) - d1) <=
        1e-9 * (1.0 + std::abs(d1)));

  CHECK_THROWS_AS(wp_eval(wp, cdouble(0.0, 0.0)), PoleAtLatticePoint);
  CHECK_THROWS_AS(wp_eval(wp, wp.w1 + wp.w2), PoleAtLatticePoint);

  // wp at a half period is real for this rectangular lattice
  cdouble half = wp_eval(wp, cdouble(0.5 * per.omega2, 0.0));
  CHECK(std::abs(half.imag()) <= 1e-9 * (1.0 + std::abs(half)));
}

TEST_CASE("uniformization hits the branch points at half periods") {
  KernelData k = build_kernel(testwalks::g1ex());
  BranchPoints bp = branch_points(k);
  Periods per = periods(k, bp);

  CurvePoint p2 = uniformize(k, bp, per, cdouble(0.5 * per.omega2, 0.0));
  CHECK(std::abs(p2.x - bp.x[0].value) <= 1e-7);

  CurvePoint p1 = uniformize(k, bp, per, 0.5 * per.omega1);
  CHECK(std::abs(p1.x - bp.x[2].value) <= 1e-7);

  CurvePoint p12 =
      uniformize(k, bp, per, 0.5 * (per.omega1 + cdouble(per.omega2, 0.0)));
  CHECK(std::abs(p12.x - bp.x[1].value) <= 1e-7);
}

TEST_CASE("uniformization satisfies the curve equations") {
  for (auto w : {testwalks::g1ex(), testwalks::g1cub()}) {
    KernelData k = build_kernel(w);
    BranchPoints bp = branch_points(k);
    Periods per = periods(k, bp);
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 3; ++j) {
        cdouble omega = (i / 5.0) * cdouble(per.omega2, 0.0) +
                        (j / 4.0) * per.omega1;
        CurvePoint pt;
        try {
          pt = uniformize(k, bp, per, omega);
        } catch (const DivisionNearZero&) {
          continue;  // pole of y(omega): nothing to check there
        }
        CHECK(kernel_residual(k, pt.x, pt.y) <= 1e-8);
        cdouble dx = poly::eval(k.D, pt.x);
        CHECK(std::abs(pt.z * pt.z - dx) <=
              1e-7 * (1.0 + std::abs(dx) + std::abs(pt.z * pt.z)));
      }
    }
  }
}

TEST_CASE("conformal gluing on the genus-1 curve") {
  KernelData k = build_kernel(testwalks::g1ex());
  BranchPoints bp = branch_points(k);
  Periods per = periods(k, bp);

  // w(x2) = wp_13(omega1 / 2): the image of x2 glues to the half period
  cdouble at_x2 = genus1_cgf(k, bp, per, bp.x[1].value);
  cdouble expect = wp_eval(wp_lattice_13(per), 0.5 * per.omega1);
  CHECK(std::abs(at_x2 - expect) <= 1e-6 * (1.0 + std::abs(expect)));
  CHECK(std::abs(at_x2.imag()) <= 1e-6 * (1.0 + std::abs(at_x2)));

  // the inversion step inside the gluing map round-trips through x(omega)
  for (double t : {0.3, 2.0}) {
    CHECK(std::isfinite(genus1_cgf(k, bp, per, cdouble(t, 0.0)).real()));
  }
}
