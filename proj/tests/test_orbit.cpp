#include "doctest.h"
#include "test_walks.hpp"
#include "walkgroup/group_orbit_oracle.hpp"
#include "walkgroup/kernel_algebra.hpp"

#include <cmath>

using namespace walkgroup;

TEST_CASE("rational function canonical form") {
  // (x^2 - 1)/(x - 1) reduces to x + 1
  Poly num{Rat(-1), Rat(0), Rat(1)};
  Poly den{Rat(-1), Rat(1)};
  RationalFunction r = RationalFunction::make(num, den);
  Poly xp1{Rat(1), Rat(1)};
  CHECK(r.num == xp1);
  CHECK((r.den == Poly{Rat(1)}));

  // denominators are made monic
  RationalFunction half = RationalFunction::make({Rat(1)}, {Rat(0), Rat(2)});
  CHECK((half.num == Poly{Rat(1, 2)}));
  CHECK((half.den == Poly{Rat(0), Rat(1)}));

  CHECK_THROWS_AS(RationalFunction::make({Rat(1)}, {}),
                  std::invalid_argument);

  CHECK(RationalFunction::zero().is_zero());
  CHECK(RationalFunction::zero().degree() == 0);
  CHECK(RationalFunction::variable().degree() == 1);
  CHECK(r.degree() == 1);
}

TEST_CASE("rational function arithmetic") {
  RationalFunction x = RationalFunction::variable();
  RationalFunction one = RationalFunction::one();
  Poly xp1{Rat(1), Rat(1)};
  RationalFunction den = RationalFunction::from_poly(xp1);

  CHECK(x / den + one / den == (x + one) / den);
  CHECK((x + one) / den == one);
  CHECK(x - x == RationalFunction::zero());
  CHECK(-(-x) == x);
  CHECK(x * (one / x) == one);
}

TEST_CASE("curve field arithmetic") {
  CurveField f(build_kernel(testwalks::gessel()));
  FieldElement X = f.x(), Y = f.y();

  CHECK(f.kernel_at(X, Y).alpha.is_zero());
  CHECK(f.kernel_at(X, Y).beta.is_zero());

  FieldElement prod = f.mul(X, Y);
  CHECK(f.div(prod, Y) == X);
  CHECK(f.div(prod, X) == Y);

  FieldElement inv = f.inverse(Y);
  FieldElement unit = f.mul(inv, Y);
  CHECK(unit.alpha == RationalFunction::one());
  CHECK(unit.beta.is_zero());

  CHECK_THROWS_AS(f.inverse(FieldElement{}), NormZero);
}

TEST_CASE("xi and eta are involutions on the curve") {
  for (auto w : {testwalks::gessel(), testwalks::kreweras(),
                 testwalks::case_pattern(3)}) {
    KernelData k = build_kernel(w);
    CurveField f(k);
    CurveAutomorphismState s0 = initial_state(f);
    CurveAutomorphismState s2 = xi_step(f, k, xi_step(f, k, s0));
    CHECK(s2.X == s0.X);
    CHECK(s2.Y == s0.Y);
    CurveAutomorphismState t2 = eta_step(f, k, eta_step(f, k, s0));
    CHECK(t2.X == s0.X);
    CHECK(t2.Y == s0.Y);

    // each image still satisfies the kernel identically
    CurveAutomorphismState s1 = xi_step(f, k, s0);
    CHECK(f.kernel_at(s1.X, s1.Y).alpha.is_zero());
    CHECK(f.kernel_at(s1.X, s1.Y).beta.is_zero());
    CurveAutomorphismState u1 = eta_step(f, k, s0);
    CHECK(f.kernel_at(u1.X, u1.Y).alpha.is_zero());
    CHECK(f.kernel_at(u1.X, u1.Y).beta.is_zero());
  }
}

TEST_CASE("delta order on the finite walks") {
  GroupOrderResult g = delta_order(testwalks::gessel());
  CHECK(g.verdict == Verdict::Finite);
  CHECK(g.order == 8);
  CHECK(g.proof_path.kind == ProofPathKind::OrbitOracle);

  CHECK(delta_order(testwalks::simple()).order == 4);
  CHECK(delta_order(testwalks::kreweras()).order == 6);
  CHECK(delta_order(testwalks::g1ex()).order == 4);
}

TEST_CASE("delta order respects its caps") {
  GroupOrderResult capped = delta_order(testwalks::kreweras(), 2);
  CHECK(capped.verdict == Verdict::UndecidedUpToBound);
  CHECK(capped.bound == 2);
  CHECK_FALSE(capped.reason.empty());

  CHECK_THROWS_AS(delta_order(testwalks::singular_ne()), SingularWalk);
}

TEST_CASE("infinite-group orbit grows in coefficient size, not degree") {
  std::vector<TraceRow> trace;
  GroupOrderResult r = delta_order(testwalks::r13(), 40, 1000, 100000, &trace);
  CHECK(r.verdict == Verdict::UndecidedUpToBound);
  CHECK(r.bound == 40);
  REQUIRE(trace.size() == 40);
  for (const auto& row : trace) {
    CHECK(row.deg_x <= 2);
    CHECK(row.deg_y <= 2);
  }
  CHECK(trace.back().coeff_bits >= trace.front().coeff_bits + 100);
  // growth is steady: the second half strictly dominates the first
  CHECK(trace[39].coeff_bits > trace[20].coeff_bits);
  CHECK(trace[20].coeff_bits > trace[5].coeff_bits);
}

TEST_CASE("numeric orbit mirrors the exact one") {
  NumericOrbitResult g =
      numeric_orbit(testwalks::gessel(), cdouble(0.31, 0.47), 64, 1e-9);
  CHECK(g.returned);
  CHECK(g.period == 4);

  NumericOrbitResult s =
      numeric_orbit(testwalks::simple(), cdouble(0.31, 0.47), 64, 1e-9);
  CHECK(s.returned);
  CHECK(s.period == 2);

  NumericOrbitResult k =
      numeric_orbit(testwalks::kreweras(), cdouble(0.31, 0.47), 64, 1e-9);
  CHECK(k.returned);
  CHECK(k.period == 3);

  NumericOrbitResult r =
      numeric_orbit(testwalks::r13(), cdouble(0.31, 0.47), 64, 1e-9);
  CHECK_FALSE(r.returned);
  CHECK(r.iterations == 64);
}

TEST_CASE("numeric orbit on a drift pattern never returns") {
  for (int which = 2; which <= 5; ++which) {
    bool no_return = false;
    try {
      NumericOrbitResult r = numeric_orbit(testwalks::case_pattern(which),
                                           cdouble(0.31, 0.47), 200, 1e-9);
      no_return = !r.returned;
    } catch (const OrbitEscape&) {
      no_return = true;
    }
    CHECK(no_return);
  }
}
