#include "doctest.h"
#include "test_walks.hpp"
#include "walkgroup/finiteness_criterion.hpp"
#include "walkgroup/kernel_algebra.hpp"

#include <cmath>

using namespace walkgroup;

namespace {
constexpr double kPi = 3.14159265358979323846;

bool table_has(const Rat& cos2, int sign, long p, long q) {
  for (const auto& e : rational_cos2_table())
    if (e.cos2 == cos2 && e.sign == sign && e.p == p && e.q == q) return true;
  return false;
}
}  // namespace

TEST_CASE("the degree <= 2 cosine table") {
  const auto& table = rational_cos2_table();
  CHECK(table.size() == 7);
  CHECK(table_has(Rat(0), 0, 1, 2));
  CHECK(table_has(Rat(1, 4), 1, 1, 3));
  CHECK(table_has(Rat(1, 4), -1, 2, 3));
  CHECK(table_has(Rat(1, 2), 1, 1, 4));
  CHECK(table_has(Rat(1, 2), -1, 3, 4));
  CHECK(table_has(Rat(3, 4), 1, 1, 6));
  CHECK(table_has(Rat(3, 4), -1, 5, 6));
  // every entry really is cos^2(p pi / q)
  for (const auto& e : table) {
    double c = std::cos(kPi * double(e.p) / double(e.q));
    CHECK(std::abs(c * c - e.cos2.get_d()) <= 1e-12);
    CHECK((c > 1e-9 ? 1 : (c < -1e-9 ? -1 : 0)) == e.sign);
  }
}

TEST_CASE("continued-fraction detection") {
  auto hit = cf_detect(0.75, 100);
  REQUIRE(hit.has_value());
  CHECK(hit->p == 3);
  CHECK(hit->q == 4);

  hit = cf_detect(0.75 + 5e-12, 1000);
  REQUIRE(hit.has_value());
  CHECK(hit->p == 3);
  CHECK(hit->q == 4);

  hit = cf_detect(2.0 / 7.0 - 1e-13, 1000);
  REQUIRE(hit.has_value());
  CHECK(hit->p == 2);
  CHECK(hit->q == 7);

  CHECK_FALSE(cf_detect(1.0 / kPi, 10000).has_value());
  // a wider window lets the same value through
  CHECK(cf_detect(0.75 + 1e-5, 100, 1e-2).has_value());
}

TEST_CASE("theta rationality, exact and numeric") {
  RationalityResult g = theta_rationality(angle_theta(testwalks::gessel()), 10000);
  CHECK(g.kind == RationalityResult::Kind::Rational);
  CHECK(g.exact);
  CHECK(g.p == 3);
  CHECK(g.q == 4);

  RationalityResult k = theta_rationality(angle_theta(testwalks::kreweras()), 10000);
  CHECK(k.kind == RationalityResult::Kind::Rational);
  CHECK(k.p == 2);
  CHECK(k.q == 3);

  RationalityResult s = theta_rationality(angle_theta(testwalks::simple()), 10000);
  CHECK(s.p == 1);
  CHECK(s.q == 2);

  RationalityResult r = theta_rationality(angle_theta(testwalks::r13()), 10000);
  CHECK(r.kind == RationalityResult::Kind::Irrational);
  CHECK(r.exact);

  StepWeights inexact = testwalks::gessel();
  inexact.exact = false;
  RationalityResult n = theta_rationality(angle_theta(inexact), 10000);
  CHECK(n.kind == RationalityResult::Kind::Rational);
  CHECK_FALSE(n.exact);
  CHECK(n.p == 3);
  CHECK(n.q == 4);
}

TEST_CASE("zero-drift branch frame") {
  ZeroDriftBranches g = zero_drift_branches(build_kernel(testwalks::gessel()));
  CHECK(g.C == Rat(1, 16));
  CHECK(g.e == Rat(-3, 8));
  CHECK(g.f == Rat(1, 16));
  CHECK_FALSE(g.x4_infinite);
  CHECK(std::abs(g.x1 - (3.0 - 2.0 * std::sqrt(2.0))) <= 1e-12);
  CHECK(std::abs(g.x4 - (3.0 + 2.0 * std::sqrt(2.0))) <= 1e-12);

  ZeroDriftBranches k = zero_drift_branches(build_kernel(testwalks::kreweras()));
  CHECK(k.C == 0);
  CHECK(k.x4_infinite);
  CHECK(std::abs(k.x1 - 0.25) <= 1e-15);

  CHECK_THROWS_AS(zero_drift_branches(build_kernel(testwalks::g1ex())),
                  std::logic_error);
}

TEST_CASE("X(y1), including the branch at infinity") {
  XAtY1 g = x_at_y1(build_kernel(testwalks::gessel()));
  CHECK(g.infinite);

  XAtY1 k = x_at_y1(build_kernel(testwalks::kreweras()));
  CHECK_FALSE(k.infinite);
  CHECK(std::abs(k.value + 2.0) <= 1e-12);

  XAtY1 s = x_at_y1(build_kernel(testwalks::simple()));
  CHECK_FALSE(s.infinite);
  CHECK(std::abs(s.value + 1.0) <= 1e-12);
}

TEST_CASE("lambda") {
  LambdaValue g = lambda_form(build_kernel(testwalks::gessel()));
  CHECK(std::abs(g.lambda + 1.0) <= 1e-12);
  CHECK(std::abs(g.lambda_tilde - g.lambda) <= 1e-12);

  LambdaValue k = lambda_form(build_kernel(testwalks::kreweras()));
  CHECK(std::abs(k.lambda + 1.0 / std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(k.lambda_tilde - k.lambda) <= 1e-12);

  LambdaValue s = lambda_form(build_kernel(testwalks::simple()));
  CHECK(std::abs(s.lambda) <= 1e-12);

  // arccos(-r) = pi/2 - arctan(lambda) ties lambda back to theta
  for (auto w : {testwalks::gessel(), testwalks::kreweras(), testwalks::r13()}) {
    KernelData kd = build_kernel(w);
    double lam = lambda_of_kernel(kd);
    CHECK(std::abs((kPi / 2 - std::atan(lam)) - angle_theta(w).theta) <= 1e-9);
  }
}

TEST_CASE("order-4 shortcut") {
  CHECK(order4_test(testwalks::simple()));
  CHECK_FALSE(order4_test(testwalks::gessel()));
  CHECK_FALSE(order4_test(testwalks::kreweras()));
}

TEST_CASE("decide on the named walks") {
  GroupOrderResult g = decide(testwalks::gessel());
  CHECK(g.verdict == Verdict::Finite);
  CHECK(g.order == 8);
  CHECK(g.proof_path.kind == ProofPathKind::ExactAlgebraic);
  REQUIRE(g.theta_over_pi.has_value());
  CHECK(g.theta_over_pi->p == 3);
  CHECK(g.theta_over_pi->q == 4);

  GroupOrderResult k = decide(testwalks::kreweras());
  CHECK(k.verdict == Verdict::Finite);
  CHECK(k.order == 6);

  GroupOrderResult s = decide(testwalks::simple());
  CHECK(s.verdict == Verdict::Finite);
  CHECK(s.order == 4);

  GroupOrderResult r = decide(testwalks::r13());
  CHECK(r.verdict == Verdict::ProvenInfinite);
  CHECK(r.proof_path.kind == ProofPathKind::ExactAlgebraic);
  CHECK_FALSE(r.reason.empty());

  for (int which = 2; which <= 5; ++which) {
    GroupOrderResult c = decide(testwalks::case_pattern(which));
    CHECK(c.verdict == Verdict::ProvenInfinite);
    CHECK(c.proof_path.kind == ProofPathKind::TheoremPartII);
  }

  GroupOrderResult e = decide(testwalks::g1ex());
  CHECK(e.verdict == Verdict::Finite);
  CHECK(e.order == 4);
  CHECK(e.proof_path.kind == ProofPathKind::NumericContinuedFraction);

  CHECK_THROWS_AS(decide(testwalks::singular_ne()), SingularWalk);
  CHECK_THROWS_AS(decide(testwalks::singular_up()), SingularWalk);
}

TEST_CASE("decide is deterministic") {
  GroupOrderResult a = decide(testwalks::gessel());
  GroupOrderResult b = decide(testwalks::gessel());
  CHECK(a.verdict == b.verdict);
  CHECK(a.order == b.order);
  CHECK(a.reason == b.reason);
}
