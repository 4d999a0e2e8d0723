#include "walkgroup/finiteness_criterion.hpp"

#include "walkgroup/genus1_analysis.hpp"

#include <cmath>
#include <numeric>

namespace walkgroup {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "finite";
    case Verdict::ProvenInfinite: return "proven-infinite";
    case Verdict::UndecidedUpToBound: return "undecided-up-to-bound";
  }
  return "?";
}

std::string to_string(ProofPathKind k) {
  switch (k) {
    case ProofPathKind::ExactAlgebraic: return "exact-algebraic";
    case ProofPathKind::NumericContinuedFraction: return "numeric-continued-fraction";
    case ProofPathKind::OrbitOracle: return "orbit-oracle";
    case ProofPathKind::TheoremPartII: return "infinite-case-pattern";
  }
  return "?";
}

namespace {

long euler_phi(long m) {
  long result = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace

const std::vector<CosTableEntry>& rational_cos2_table() {
  static const std::vector<CosTableEntry> table = [] {
    std::vector<CosTableEntry> t;
    for (long q = 2; q <= 120; ++q) {
      for (long p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        // cos(p pi / q) = cos(2 pi k / m) with k/m = p/(2q) in lowest terms
        long m = (p % 2 == 1) ? 2 * q : q;
        if (euler_phi(m) > 4) continue;  // algebraic degree of cos > 2
        double c = std::cos(M_PI * static_cast<double>(p) / q);
        double c2 = c * c;
        bool rational = false;
        Rat r2;
        for (long den = 1; den <= 64 && !rational; ++den) {
          double num = std::round(c2 * den);
          if (std::abs(c2 - num / den) < 1e-12) {
            r2 = Rat(static_cast<long>(num), den);
            r2.canonicalize();
            rational = true;
          }
        }
        // degree-2 cosines with irrational square (the golden-ratio family)
        // can never equal a rational-weight walk's cos, so they are not
        // table material
        if (!rational) continue;
        int sign = c > 1e-9 ? 1 : (c < -1e-9 ? -1 : 0);
        bool dup = false;
        for (const auto& e : t)
          if (e.cos2 == r2 && e.sign == sign) dup = true;
        if (!dup) t.push_back({r2, sign, p, q});
      }
    }
    return t;
  }();
  return table;
}

std::optional<Fraction> cf_detect(double x, long max_denominator,
                                  double window_scale) {
  double frac = x;
  long h0 = 0, k0 = 1, h1 = 1, k1 = 0;  // convergents p/q: h1/k1 is current
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 1e15) break;
    long a = static_cast<long>(fl);
    long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_denominator) break;
    h0 = h1;
    k0 = k1;
    h1 = h2;
    k1 = k2;
    if (k1 >= 2) {
      double approx = static_cast<double>(h1) / k1;
      if (std::abs(x - approx) < window_scale / (static_cast<double>(k1) * k1))
        return Fraction{h1, k1};
    }
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

RationalityResult theta_rationality(const AngleTheta& t,
                                    long max_denominator) {
  RationalityResult r;
  if (t.exact_class != CosClass::NumericOnly) {
    r.exact = true;
    for (const auto& e : rational_cos2_table()) {
      if (e.cos2 == t.cos2 && e.sign == t.cos_sign) {
        r.kind = RationalityResult::Kind::Rational;
        r.p = e.p;
        r.q = e.q;
        return r;
      }
    }
    r.kind = RationalityResult::Kind::Irrational;
    return r;
  }
  auto hit = cf_detect(t.theta / M_PI, max_denominator);
  if (hit) {
    r.kind = RationalityResult::Kind::Rational;
    r.p = hit->p;
    r.q = hit->q;
    r.tolerance = 1e-9 / (static_cast<double>(hit->q) * hit->q);
    return r;
  }
  r.kind = RationalityResult::Kind::NumericUndecided;
  return r;
}

GroupOrderResult decide(const StepWeights& w, long max_denominator) {
  KernelData k = build_kernel(w);
  SingularityReport sing = is_singular(k);
  if (sing.singular) throw SingularWalk(sing.reason);

  GroupOrderResult r;
  GenusClass g = genus_classify(k);
  switch (g) {
    case GenusClass::Genus0Case2:
    case GenusClass::Genus0Case3:
    case GenusClass::Genus0Case4:
    case GenusClass::Genus0Case5:
      r.verdict = Verdict::ProvenInfinite;
      r.reason = "nonzero drift with step pattern " + to_string(g);
      r.proof_path.kind = ProofPathKind::TheoremPartII;
      return r;

    case GenusClass::Genus0ZeroDrift: {
      AngleTheta t = angle_theta(w);
      RationalityResult rat = theta_rationality(t, max_denominator);
      switch (rat.kind) {
        case RationalityResult::Kind::Rational:
          r.verdict = Verdict::Finite;
          r.order = static_cast<int>(2 * rat.q);
          r.theta_over_pi = Fraction{rat.p, rat.q};
          if (rat.exact) {
            r.proof_path.kind = ProofPathKind::ExactAlgebraic;
          } else {
            r.proof_path.kind = ProofPathKind::NumericContinuedFraction;
            r.proof_path.denominator = rat.q;
            r.proof_path.tolerance = rat.tolerance;
          }
          return r;
        case RationalityResult::Kind::Irrational:
          r.verdict = Verdict::ProvenInfinite;
          r.reason =
              "theta/pi is irrational: cos(theta) has degree <= 2 and "
              "matches no rational angle of that degree";
          r.proof_path.kind = ProofPathKind::ExactAlgebraic;
          return r;
        case RationalityResult::Kind::NumericUndecided:
          r.verdict = Verdict::UndecidedUpToBound;
          r.bound = max_denominator;
          r.proof_path.kind = ProofPathKind::NumericContinuedFraction;
          r.proof_path.denominator = max_denominator;
          r.proof_path.tolerance = 1e-9;
          return r;
      }
      return r;
    }

    case GenusClass::Genus1: {
      BranchPoints bp = branch_points(k);
      Periods per = periods(k, bp);
      return group_order_genus1(per, max_denominator);
    }

    case GenusClass::Singular:
      break;
  }
  throw SingularWalk("walk is singular");
}

ZeroDriftBranches zero_drift_branches(const KernelData& k) {
  DeflatedQuadratic q = deflate_double_root(k);
  ZeroDriftBranches fr;
  fr.f = q.f;
  fr.e = q.e;
  fr.C = q.C;
  if (fr.C != 0) {
    Rat disc = fr.e * fr.e - 4 * fr.C * fr.f;
    if (disc <= 0)
      throw DegenerateBranchPoints("branch points x1 and x4 coincide");
    double s = std::sqrt(disc.get_d());
    double cd = fr.C.get_d(), ed = fr.e.get_d();
    double r1 = (-ed - s) / (2 * cd), r2 = (-ed + s) / (2 * cd);
    bool in1 = r1 >= -1 - 1e-9 && r1 < 1;
    bool in2 = r2 >= -1 - 1e-9 && r2 < 1;
    if (in1 == in2)
      throw DegenerateBranchPoints("no branch point inside [-1, 1)");
    fr.x1 = in1 ? r1 : r2;
    fr.x4 = in1 ? r2 : r1;
  } else if (fr.e != 0) {
    fr.x1 = Rat(-fr.f / fr.e).get_d();
    fr.x4_infinite = true;
  } else {
    throw DegenerateBranchPoints("discriminant has no branch points off 1");
  }
  return fr;
}

XAtY1 x_at_y1(const KernelData& k) {
  KernelData kt = build_kernel(k.w.transpose());
  ZeroDriftBranches fy = zero_drift_branches(kt);  // its x1 is our y1
  double y1 = fy.x1;
  XAtY1 out;
  if (fy.C == 0) {
    // y1 = -f/e exactly rational: decide at(y1) = 0 exactly
    Rat y1r = -fy.f / fy.e;
    if (poly::eval(k.at, y1r) == 0) {
      out.infinite = true;
      return out;
    }
  } else {
    // y1 is a quadratic irrational; it is a root of at iff it is a root of
    // gcd(Qt, at) where Qt = C y^2 + e y + f
    Poly qt = {fy.f, fy.e, fy.C};
    Poly g = poly::gcd(qt, k.at);
    if (poly::degree(g) >= 1 &&
        std::abs(poly::eval_real(g, y1)) < 1e-8) {
      out.infinite = true;
      return out;
    }
  }
  double at_y1 = poly::eval_real(k.at, y1);
  double bt_y1 = poly::eval_real(k.bt, y1);
  out.value = -bt_y1 / (2 * at_y1);
  return out;
}

double lambda_of_kernel(const KernelData& k) {
  ZeroDriftBranches fr = zero_drift_branches(k);
  Rat mQ1 = -(fr.C + fr.e + fr.f);  // -(Q at 1); positive off degeneracy
  if (mQ1 <= 0)
    throw DegenerateBranchPoints("a branch point sits at 1 (|R| = 1)");
  XAtY1 t = x_at_y1(k);
  if (t.infinite) {
    if (fr.C <= 0)
      throw DegenerateBranchPoints("X(y1) at infinity requires C > 0");
    return Rat(fr.e + 2 * fr.C).get_d() /
           (2 * std::sqrt(Rat(fr.C * mQ1).get_d()));
  }
  if (std::abs(t.value - 1.0) < 1e-12)
    throw DegenerateBranchPoints("X(y1) = 1");
  Rat tt(t.value);  // exact dyadic lift; kills evaluation cancellation
  Rat qt = fr.C * tt * tt + fr.e * tt + fr.f;
  Rat radicand = qt * mQ1;
  if (radicand <= 0)
    throw DegenerateBranchPoints("branch configuration out of range");
  Rat num = -((fr.e + 2 * fr.C) * tt + (fr.e + 2 * fr.f));
  return num.get_d() / (2 * std::sqrt(radicand.get_d()));
}

LambdaValue lambda_form(const KernelData& k) {
  LambdaValue lv;
  lv.lambda = lambda_of_kernel(k);
  lv.lambda_tilde = lambda_of_kernel(build_kernel(k.w.transpose()));
  return lv;
}

bool order4_test(const StepWeights& w) {
  return delta_determinant(w).value == 0;
}

}  // namespace walkgroup
