#include "doctest.h"
#include "test_walks.hpp"
#include "walkgroup/kernel_algebra.hpp"
#include "walkgroup/walk_gen.hpp"

#include <cmath>

using namespace walkgroup;

TEST_CASE("polynomial arithmetic") {
  Poly p{Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
  Poly d{Rat(-1), Rat(1)};          // x - 1
  CHECK(poly::degree(p) == 2);
  CHECK(poly::degree(Poly{}) == -1);

  Poly q = poly::div_exact(p, d);
  CHECK((q == Poly{Rat(1), Rat(1)}));
  Poly pp{Rat(1), Rat(0), Rat(1)};
  CHECK_THROWS(poly::div_exact(pp, d));

  auto [quot, rem] = poly::divmod(pp, d);
  CHECK(poly::add(poly::mul(quot, d), rem) == pp);
  CHECK(poly::degree(rem) < 1);

  Poly g = poly::gcd(p, Poly{Rat(1), Rat(-2), Rat(1)});
  CHECK((g == Poly{Rat(-1), Rat(1)}));  // monic x - 1

  auto [qq, r] = poly::div_linear(p, Rat(1));
  CHECK(r == 0);
  CHECK((qq == Poly{Rat(1), Rat(1)}));

  CHECK((poly::is_perfect_square(Poly{Rat(4), Rat(8), Rat(4)})));
  CHECK_FALSE((poly::is_perfect_square(Poly{Rat(1), Rat(1), Rat(1)})));
  CHECK(poly::is_perfect_square(Poly{}));

  CHECK(poly::eval(p, Rat(3)) == Rat(8));
  CHECK(std::abs(poly::eval_real(p, 3.0) - 8.0) <= 1e-15);
  CHECK(std::abs(poly::eval(p, cdouble(0.0, 1.0)) - cdouble(-2.0, 0.0)) <=
        1e-15);
  CHECK((poly::derivative(p) == Poly{Rat(0), Rat(2)}));
}

TEST_CASE("kernel coefficients of the Gessel walk") {
  KernelData k = build_kernel(testwalks::gessel());
  CHECK((k.a == Poly{Rat(0), Rat(0), Rat(1, 4)}));
  CHECK((k.b == Poly{Rat(1, 4), Rat(-1), Rat(1, 4)}));
  CHECK((k.c == Poly{Rat(1, 4)}));
  CHECK((k.at == Poly{Rat(0), Rat(1, 4), Rat(1, 4)}));
  CHECK((k.bt == Poly{Rat(0), Rat(-1)}));
  CHECK((k.ct == Poly{Rat(1, 4), Rat(1, 4)}));
  CHECK(k.C == Rat(1, 16));
  CHECK(k.Ct == 0);
  CHECK(k.d[4] == k.C);

  // D = (1/16)(x^2 - 6x + 1)(x - 1)^2
  Poly expect = poly::scale(
      poly::mul(Poly{Rat(1), Rat(-6), Rat(1)}, Poly{Rat(1), Rat(-2), Rat(1)}),
      Rat(1, 16));
  CHECK(k.D == expect);
}

TEST_CASE("D(1) = (a(1) - c(1))^2 whenever the weights sum to 1") {
  auto check_walk = [](const StepWeights& w) {
    KernelData k = build_kernel(w);
    Rat a1 = poly::eval(k.a, Rat(1));
    Rat c1 = poly::eval(k.c, Rat(1));
    CHECK(poly::eval(k.D, Rat(1)) == (a1 - c1) * (a1 - c1));
  };
  check_walk(testwalks::gessel());
  check_walk(testwalks::g1ex());
  check_walk(testwalks::case_pattern(2));
  Rng64 rng(11);
  for (int i = 0; i < 10; ++i) check_walk(random_zero_drift_walk(rng));
}

TEST_CASE("zero-drift determinant identity") {
  // Delta = -a(1) at(1) sum(i j p) whenever the drift vanishes
  Rng64 rng(12);
  for (int i = 0; i < 10; ++i) {
    StepWeights w = random_zero_drift_walk(rng);
    KernelData k = build_kernel(w);
    Rat mix(0);
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) mix += Rat(a * b) * w.at(a, b);
    CHECK(delta_determinant(w).value ==
          -poly::eval(k.a, Rat(1)) * poly::eval(k.at, Rat(1)) * mix);
  }
}

TEST_CASE("singularity detection") {
  CHECK_FALSE(is_singular(build_kernel(testwalks::gessel())).singular);
  CHECK_FALSE(is_singular(build_kernel(testwalks::kreweras())).singular);
  CHECK_FALSE(is_singular(build_kernel(testwalks::case_pattern(2))).singular);

  SingularityReport ne = is_singular(build_kernel(testwalks::singular_ne()));
  CHECK(ne.singular);
  CHECK_FALSE(ne.reason.empty());
  CHECK(is_singular(build_kernel(testwalks::singular_up())).singular);
}

TEST_CASE("branch points of the Gessel walk") {
  KernelData k = build_kernel(testwalks::gessel());
  BranchPoints bp = branch_points(k);
  double s = 2.0 * std::sqrt(2.0);
  CHECK(std::abs(bp.x[0].value - cdouble(3.0 - s, 0.0)) <= 1e-12);
  CHECK(std::abs(bp.x[1].value - cdouble(1.0, 0.0)) <= 1e-14);
  CHECK(std::abs(bp.x[2].value - cdouble(1.0, 0.0)) <= 1e-14);
  CHECK(std::abs(bp.x[3].value - cdouble(3.0 + s, 0.0)) <= 1e-12);
  for (int i = 0; i < 4; ++i) CHECK_FALSE(bp.x[i].at_infinity);

  // Dt = -(y/4)(y - 1)^2 has degree 3: one root escapes to infinity
  CHECK(std::abs(bp.y[0].value) <= 1e-14);
  CHECK(std::abs(bp.y[1].value - cdouble(1.0, 0.0)) <= 1e-14);
  CHECK(std::abs(bp.y[2].value - cdouble(1.0, 0.0)) <= 1e-14);
  CHECK(bp.y[3].at_infinity);
  CHECK(bp.residual <= 1e-10);
}

TEST_CASE("branch points of the genus-1 exemplar") {
  KernelData k = build_kernel(testwalks::g1ex());
  BranchPoints bp = branch_points(k);
  const double expect[4] = {0.138076245469127, 0.613268190392595,
                            1.087071981085287, 4.828250249719658};
  for (int i = 0; i < 4; ++i) {
    CHECK_FALSE(bp.x[i].at_infinity);
    CHECK(std::abs(bp.x[i].value - cdouble(expect[i], 0.0)) <= 1e-9);
  }
}

TEST_CASE("genus classification") {
  CHECK(genus_classify(build_kernel(testwalks::gessel())) ==
        GenusClass::Genus0ZeroDrift);
  CHECK(genus_classify(build_kernel(testwalks::kreweras())) ==
        GenusClass::Genus0ZeroDrift);
  CHECK(genus_classify(build_kernel(testwalks::g1ex())) == GenusClass::Genus1);
  CHECK(genus_classify(build_kernel(testwalks::g1cub())) == GenusClass::Genus1);
  CHECK(genus_classify(build_kernel(testwalks::case_pattern(2))) ==
        GenusClass::Genus0Case2);
  CHECK(genus_classify(build_kernel(testwalks::case_pattern(3))) ==
        GenusClass::Genus0Case3);
  CHECK(genus_classify(build_kernel(testwalks::case_pattern(4))) ==
        GenusClass::Genus0Case4);
  CHECK(genus_classify(build_kernel(testwalks::case_pattern(5))) ==
        GenusClass::Genus0Case5);
}

TEST_CASE("branch values satisfy the kernel") {
  KernelData k = build_kernel(testwalks::gessel());
  cdouble x0(0.31, 0.47);
  auto [y0, y1] = branch_Y(k, x0);
  REQUIRE_FALSE(y0.at_infinity);
  REQUIRE_FALSE(y1.at_infinity);
  CHECK(std::abs(y0.value) <= std::abs(y1.value));
  for (cdouble y : {y0.value, y1.value}) {
    cdouble r = poly::eval(k.a, x0) * y * y + poly::eval(k.b, x0) * y +
                poly::eval(k.c, x0);
    CHECK(std::abs(r) <= 1e-12);
  }

  cdouble yy(0.4, 0.1);
  auto [x0b, x1b] = branch_X(k, yy);
  for (cdouble x : {x0b.value, x1b.value}) {
    cdouble r = poly::eval(k.at, yy) * x * x + poly::eval(k.bt, yy) * x +
                poly::eval(k.ct, yy);
    CHECK(std::abs(r) <= 1e-12);
  }

  // at the double point y1 of the genus-1 exemplar both X branches agree
  KernelData kg = build_kernel(testwalks::g1ex());
  BranchPoints bpg = branch_points(kg);
  // the quadratic formula loses half the digits at a double root, so the
  // frozen value only holds to the square root of machine precision
  auto [b0, b1] = branch_X(kg, bpg.y[0].value);
  CHECK(std::abs(b0.value - cdouble(-0.816496580927726, 0.0)) <= 1e-6);
  CHECK(std::abs(b0.value - b1.value) <= 1e-6);
}

TEST_CASE("curve sample loops") {
  CurveSamples cs = curve_M(build_kernel(testwalks::gessel()), 32);
  CHECK(cs.m1.size() >= 8);
  CHECK(cs.m2.size() >= 8);
  for (const auto& v : cs.m1) {
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
  }
}

TEST_CASE("deflation of the zero-drift double root") {
  DeflatedQuadratic g = deflate_double_root(build_kernel(testwalks::gessel()));
  CHECK(g.C == Rat(1, 16));
  CHECK(g.e == Rat(-3, 8));
  CHECK(g.f == Rat(1, 16));

  DeflatedQuadratic kr =
      deflate_double_root(build_kernel(testwalks::kreweras()));
  CHECK(kr.C == 0);
  CHECK(kr.e == Rat(-4, 9));
  CHECK(kr.f == Rat(1, 9));

  CHECK_THROWS_AS(deflate_double_root(build_kernel(testwalks::g1ex())),
                  std::logic_error);
}
