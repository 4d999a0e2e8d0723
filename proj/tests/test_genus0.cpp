#include "doctest.h"
#include "test_walks.hpp"
#include "walkgroup/genus0_analysis.hpp"
#include "walkgroup/genus1_analysis.hpp"
#include "walkgroup/kernel_algebra.hpp"
#include "walkgroup/walk_gen.hpp"

#include <cmath>

using namespace walkgroup;

namespace {

constexpr double kPi = 3.14159265358979323846;

double kernel_residual(const KernelData& k, cdouble x, cdouble y) {
  cdouble v = poly::eval(k.a, x) * y * y + poly::eval(k.b, x) * y +
              poly::eval(k.c, x);
  double n = std::max(1.0, std::abs(x)) * std::max(1.0, std::abs(x)) *
             std::max(1.0, std::abs(y)) * std::max(1.0, std::abs(y));
  return std::abs(v) / n;
}

}  // namespace

TEST_CASE("limit periods of the named walks") {
  LimitPeriods g = limit_periods(build_kernel(testwalks::gessel()));
  CHECK(std::abs(g.alpha2 - 2 * kPi) <= 1e-10);
  CHECK(std::abs(g.alpha3 - 1.5 * kPi) <= 1e-9);

  LimitPeriods k = limit_periods(build_kernel(testwalks::kreweras()));
  CHECK(std::abs(k.alpha2 - kPi * std::sqrt(3.0)) <= 1e-10);
  CHECK(std::abs(k.alpha3 - 2 * kPi / std::sqrt(3.0)) <= 1e-9);

  LimitPeriods s = limit_periods(build_kernel(testwalks::simple()));
  CHECK(std::abs(s.alpha2 - 2 * kPi) <= 1e-10);
  CHECK(std::abs(s.alpha3 - kPi) <= 1e-9);

  CHECK_THROWS_AS(limit_periods(build_kernel(testwalks::g1ex())), WrongGenus);
}

TEST_CASE("the period ratio recovers theta/pi") {
  Rng64 rng(501);
  for (int i = 0; i < 8; ++i) {
    StepWeights w = random_zero_drift_walk(rng);
    KernelData k = build_kernel(w);
    LimitPeriods lp = limit_periods(k);
    CHECK(std::abs(lp.alpha3 / lp.alpha2 - angle_theta(w).theta / kPi) <=
          1e-8);
  }
}

TEST_CASE("rational uniformization of the Gessel walk") {
  KernelData k = build_kernel(testwalks::gessel());
  RationalUniformization ru = rational_uniformization(k);

  double x1 = 3.0 - 2.0 * std::sqrt(2.0), x4 = 3.0 + 2.0 * std::sqrt(2.0);
  CHECK(std::abs(ru.x_of(cdouble(1.0, 0.0)) - cdouble(x1, 0.0)) <= 1e-10);
  CHECK(std::abs(ru.x_of(cdouble(-1.0, 0.0)) - cdouble(x4, 0.0)) <= 1e-10);
  CHECK(std::abs(ru.x_of(cdouble(0.0, 0.0)) - cdouble(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(std::arg(ru.rho) - 3 * kPi / 4) <= 1e-10);
  CHECK_FALSE(ru.sign_choices.empty());

  // u = 1/rho is the image of (X(y1), y1); here y1 = 0 and X escapes
  cdouble u = 1.0 / ru.rho;
  CHECK(std::abs(ru.y_of(u)) <= 1e-8);
}

TEST_CASE("rational uniformization of the Kreweras walk") {
  KernelData k = build_kernel(testwalks::kreweras());
  RationalUniformization ru = rational_uniformization(k);
  CHECK(std::abs(std::arg(ru.rho) - 2 * kPi / 3) <= 1e-10);
  cdouble u = 1.0 / ru.rho;
  CHECK(std::abs(ru.x_of(u) - cdouble(-2.0, 0.0)) <= 1e-8);
  CHECK(std::abs(ru.y_of(u) - cdouble(0.25, 0.0)) <= 1e-8);
}

TEST_CASE("the kernel vanishes along the uniformization") {
  for (auto w : {testwalks::gessel(), testwalks::kreweras(),
                 testwalks::simple(), testwalks::r13()}) {
    KernelData k = build_kernel(w);
    RationalUniformization ru = rational_uniformization(k);
    double worst = 0;
    for (int j = 0; j < 40; ++j) {
      double ang = 2 * kPi * (j + 0.5) / 40;
      cdouble u = 0.9 * cdouble(std::cos(ang), std::sin(ang));
      cdouble X = ru.x_of(u), Y = ru.y_of(u);
      if (!std::isfinite(std::abs(X)) || !std::isfinite(std::abs(Y))) continue;
      worst = std::max(worst, kernel_residual(k, X, Y));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("automorphisms act as expected on the u-plane") {
  KernelData k = build_kernel(testwalks::gessel());
  RationalUniformization ru = rational_uniformization(k);
  cdouble u(0.37, 0.19);

  AutomorphismImages im = automorphisms(ru, u);
  CHECK(std::abs(automorphisms(ru, im.xi).xi - u) <= 1e-12);
  CHECK(std::abs(automorphisms(ru, im.eta).eta - u) <= 1e-12);
  CHECK(std::abs(automorphisms(ru, im.xi).eta - im.delta) <= 1e-12);

  // order 8 group: delta^4 = id
  cdouble v = u;
  for (int i = 0; i < 4; ++i) v = automorphisms(ru, v).delta;
  CHECK(std::abs(v - u) <= 1e-9);

  // xi swaps the two y-branches over the same x
  cdouble X = ru.x_of(u);
  CHECK(std::abs(ru.x_of(im.xi) - X) <= 1e-9 * (1.0 + std::abs(X)));
  CHECK(std::abs(ru.y_of(im.eta) - ru.y_of(u)) <=
        1e-9 * (1.0 + std::abs(ru.y_of(u))));

  CHECK_THROWS_AS(automorphisms(ru, cdouble(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("group order from rho") {
  auto order_of = [](const StepWeights& w) {
    return group_order_from_rho(
        rational_uniformization(build_kernel(w)), 10000);
  };
  GroupOrderResult g = order_of(testwalks::gessel());
  CHECK(g.verdict == Verdict::Finite);
  CHECK(g.order == 8);
  GroupOrderResult k = order_of(testwalks::kreweras());
  CHECK(k.order == 6);
  GroupOrderResult s = order_of(testwalks::simple());
  CHECK(s.order == 4);
  GroupOrderResult r = order_of(testwalks::r13());
  CHECK(r.verdict == Verdict::UndecidedUpToBound);
}

TEST_CASE("limit gluing function") {
  for (auto w :
       {testwalks::gessel(), testwalks::kreweras(), testwalks::simple()}) {
    KernelData k = build_kernel(w);
    ZeroDriftBranches fr = zero_drift_branches(k);
    // S(x1) = 1 makes u(x1) = 0
    CHECK(std::abs(limit_cgf(k, cdouble(fr.x1, 0.0))) <= 1e-6);
    // S(1) = 0 blows u up near the corner
    CHECK(std::abs(limit_cgf(k, cdouble(1.0 - 1e-4, 0.0))) >= 100.0);
  }
  KernelData k = build_kernel(testwalks::gessel());
  ZeroDriftBranches fr = zero_drift_branches(k);
  CHECK_THROWS_AS(limit_cgf(k, cdouble(fr.x4, 0.0)), BranchCutViolation);
}

TEST_CASE("tangent angle") {
  CHECK(std::abs(tangent_angle(build_kernel(testwalks::gessel())) -
                 3 * kPi / 4) <= 1e-13);
  CHECK(std::abs(tangent_angle(build_kernel(testwalks::kreweras())) -
                 2 * kPi / 3) <= 1e-13);
  CHECK(std::abs(tangent_angle(build_kernel(testwalks::simple())) - kPi / 2) <=
        1e-13);
  CHECK_THROWS_AS(tangent_angle(build_kernel(testwalks::diagonal())),
                  RealRoots);
}

TEST_CASE("corner exponent of the simple walk") {
  double chi = corner_exponent(build_kernel(testwalks::simple()));
  CHECK(std::abs(chi - 2.0) <= 0.02);
}
