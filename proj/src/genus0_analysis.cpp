#include "walkgroup/genus0_analysis.hpp"

#include "walkgroup/genus1_analysis.hpp"

#include <cmath>
#include <cstdio>

namespace walkgroup {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

LimitPeriods limit_periods(const KernelData& k) {
  Moments m = moments(k.w);
  if (!(m.drift_x == 0 && m.drift_y == 0))
    throw WrongGenus("limit periods are defined for zero drift only");
  ZeroDriftBranches fr = zero_drift_branches(k);
  const double x1 = fr.x1, x4 = fr.x4;
  const double Cd = fr.C.get_d(), ed = fr.e.get_d();

  LimitPeriods lp;
  double rad2 = fr.x4_infinite ? (-ed) * (1 - x1) : Cd * (x4 - 1) * (1 - x1);
  if (!(rad2 > 0)) throw QuadratureFailure("branch point at 1");
  lp.alpha2 = kPi / std::sqrt(rad2);

  // Q(x)/(x1-x) = C(x4-x) for either sign of C, and -e when C = 0; the u^2
  // substitution x = x1 - (x1-L)u^2 leaves only this smooth factor under
  // the root.
  auto rest = [&](double x) { return fr.x4_infinite ? -ed : Cd * (x4 - x); };
  const double tol = 1e-13;
  double err = 0.0;

  XAtY1 t = x_at_y1(k);
  if (t.infinite) {
    if (!(Cd > 0))
      throw QuadratureFailure("X(y1) at infinity requires C > 0");
    double M = x1 - std::max(1.0, std::abs(x1));
    auto fu = [&](double u) {
      double x = x1 - (x1 - M) * u * u;
      return 1.0 / ((1 - x) * std::sqrt(rest(x)));
    };
    QuadResult qa = tanh_sinh(fu, 0.0, 1.0, tol);
    auto ftail = [&](double x) {
      return 1.0 / ((1 - x) * std::sqrt(Cd * (x1 - x) * (x4 - x)));
    };
    QuadResult qb = exp_sinh_lower(ftail, M, tol);
    lp.alpha3 = 2 * std::sqrt(x1 - M) * qa.value + qb.value;
    err = 2 * std::sqrt(x1 - M) * qa.error + qb.error;
  } else {
    double L = t.value;
    if (L > x1 + 1e-9)
      throw QuadratureFailure("X(y1) > x1: outside the standard configuration");
    if (L > x1) L = x1;
    if (!fr.x4_infinite && Cd < 0 && L < x4 + 1e-12)
      throw QuadratureFailure("contour from X(y1) crosses x4");
    auto fu = [&](double u) {
      double x = x1 - (x1 - L) * u * u;
      return 1.0 / ((1 - x) * std::sqrt(rest(x)));
    };
    QuadResult qa = tanh_sinh(fu, 0.0, 1.0, tol);
    lp.alpha3 = 2 * std::sqrt(x1 - L) * qa.value;
    err = 2 * std::sqrt(x1 - L) * qa.error;
  }
  lp.tolerance = err + 1e-14;
  return lp;
}

namespace {

// Pole/zero pair parameters of the quadratic factors. The outer pair maps
// u^2 - (z+1/z)u + 1 to the branch pair {x1, x4} mapping, the inner pair to
// the value pair; both formulas degenerate cleanly when x4 is infinite.
cdouble z_outer(double r1, double r4, bool r4_inf, int sgn) {
  if (r4_inf) return cdouble(-1.0, 0.0);
  cdouble rad = std::sqrt(cdouble((1 - r1) * (1 - r4), 0.0));
  return (cdouble(2 - (r1 + r4), 0.0) + 2.0 * static_cast<double>(sgn) * rad) /
         (r4 - r1);
}

cdouble z_inner(double r1, double r4, bool r4_inf, int sgn) {
  if (r4_inf)
    return cdouble(1 - 2 * r1, 0.0) +
           2.0 * static_cast<double>(sgn) *
               std::sqrt(cdouble(-r1 * (1 - r1), 0.0));
  cdouble rad = std::sqrt(cdouble(r1 * r4 * (1 - r1) * (1 - r4), 0.0));
  return (cdouble(r1 + r4 - 2 * r1 * r4, 0.0) +
          2.0 * static_cast<double>(sgn) * rad) /
         (r4 - r1);
}

std::array<cdouble, 3> quad_factor(cdouble z) {
  return {cdouble(1.0, 0.0), -(z + 1.0 / z), cdouble(1.0, 0.0)};
}

cdouble eval_quad(const std::array<cdouble, 3>& f, cdouble u) {
  return f[0] + u * (f[1] + u * f[2]);
}

}  // namespace

cdouble RationalUniformization::x_of(cdouble u) const {
  return eval_quad(f1, u) / eval_quad(f0, u);
}

cdouble RationalUniformization::y_of(cdouble u) const {
  cdouble v = rho * u;
  return eval_quad(f3, v) / eval_quad(f2, v);
}

RationalUniformization rational_uniformization(const KernelData& k) {
  ZeroDriftBranches fx = zero_drift_branches(k);
  KernelData kt = build_kernel(k.w.transpose());
  ZeroDriftBranches fy = zero_drift_branches(kt);
  XAtY1 t = x_at_y1(k);

  double G;
  if (t.infinite) {
    if (fx.x4_infinite)
      throw ValidationFailure("X(y1) and x4 both infinite is degenerate");
    G = -(fx.x1 + fx.x4 - 2) / (fx.x4 - fx.x1);
  } else if (fx.x4_infinite) {
    G = (1 - 2 * fx.x1 + t.value) / (1 - t.value);
  } else {
    G = (fx.x1 + fx.x4 - 2 * fx.x1 * fx.x4 + (fx.x1 + fx.x4 - 2) * t.value) /
        ((fx.x4 - fx.x1) * (1 - t.value));
  }
  if (!(G > -1 - 1e-9 && G < 1 + 1e-9))
    throw ValidationFailure("rotation cosine outside [-1, 1]");
  G = std::max(-1.0, std::min(1.0, G));
  double Gs = std::sqrt(1 - G * G);

  Poly a = k.a, b = k.b, c = k.c;
  auto kernel_residual = [&](const RationalUniformization& ru) {
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
      double ang = 2 * kPi * (j + 0.37) / 20;
      cdouble u = 0.7 * cdouble(std::cos(ang), std::sin(ang));
      cdouble X = ru.x_of(u);
      cdouble Y = ru.y_of(u);
      if (!std::isfinite(X.real()) || !std::isfinite(X.imag()) ||
          !std::isfinite(Y.real()) || !std::isfinite(Y.imag()))
        return 1e300;
      cdouble K = poly::eval(a, X) * Y * Y + poly::eval(b, X) * Y +
                  poly::eval(c, X);
      double norm = std::max(1.0, std::abs(X)) * std::max(1.0, std::abs(X)) *
                    std::max(1.0, std::abs(Y)) * std::max(1.0, std::abs(Y));
      worst = std::max(worst, std::abs(K) / norm);
    }
    return worst;
  };

  const int signs[2] = {1, -1};
  for (int s0 : signs)
    for (int s1 : signs)
      for (int s2 : signs)
        for (int s3 : signs)
          for (int sr : signs) {
            RationalUniformization ru;
            ru.z0 = z_outer(fx.x1, fx.x4, fx.x4_infinite, s0);
            ru.z1 = z_inner(fx.x1, fx.x4, fx.x4_infinite, s1);
            ru.z2 = z_outer(fy.x1, fy.x4, fy.x4_infinite, s2);
            ru.z3 = z_inner(fy.x1, fy.x4, fy.x4_infinite, s3);
            if (std::abs(ru.z0) < 1e-14 || std::abs(ru.z1) < 1e-14 ||
                std::abs(ru.z2) < 1e-14 || std::abs(ru.z3) < 1e-14)
              continue;
            ru.rho = cdouble(G, sr * Gs);
            if (!(std::arg(ru.rho) >= 0 && std::arg(ru.rho) <= kPi)) continue;
            ru.f0 = quad_factor(ru.z0);
            ru.f1 = quad_factor(ru.z1);
            ru.f2 = quad_factor(ru.z2);
            ru.f3 = quad_factor(ru.z3);
            if (kernel_residual(ru) > 1e-9) continue;
            char buf[32];
            std::snprintf(buf, sizeof buf, "z0%c z1%c z2%c z3%c rho%c",
                          s0 > 0 ? '+' : '-', s1 > 0 ? '+' : '-',
                          s2 > 0 ? '+' : '-', s3 > 0 ? '+' : '-',
                          sr > 0 ? '+' : '-');
            ru.sign_choices = buf;
            return ru;
          }
  throw ValidationFailure(
      "no sign choice makes the kernel vanish on the uniformization");
}

AutomorphismImages automorphisms(const RationalUniformization& ru,
                                 cdouble u) {
  if (std::abs(u) == 0)
    throw std::invalid_argument("automorphisms at u = 0");
  AutomorphismImages im;
  im.xi = 1.0 / u;
  im.eta = 1.0 / (ru.rho * ru.rho * u);
  im.delta = u / (ru.rho * ru.rho);
  return im;
}

GroupOrderResult group_order_from_rho(const RationalUniformization& ru,
                                      long max_denominator) {
  GroupOrderResult r;
  double frac = std::arg(ru.rho) / kPi;
  auto hit = cf_detect(frac, max_denominator);
  if (hit) {
    r.verdict = Verdict::Finite;
    r.order = static_cast<int>(2 * hit->q);
    r.theta_over_pi = *hit;
    r.proof_path.kind = ProofPathKind::NumericContinuedFraction;
    r.proof_path.denominator = hit->q;
    r.proof_path.tolerance =
        1e-9 / (static_cast<double>(hit->q) * hit->q);
    r.reason = "arg(rho)/pi = " + std::to_string(hit->p) + "/" +
               std::to_string(hit->q) + " within the detection window";
  } else {
    r.verdict = Verdict::UndecidedUpToBound;
    r.bound = max_denominator;
    r.proof_path.kind = ProofPathKind::NumericContinuedFraction;
    r.proof_path.denominator = max_denominator;
    r.proof_path.tolerance = 1e-9;
    r.reason = "arg(rho)/pi matches no fraction with denominator within bound";
  }
  return r;
}

cdouble limit_cgf(const KernelData& k, cdouble t) {
  ZeroDriftBranches fr = zero_drift_branches(k);
  LimitPeriods lp = limit_periods(k);
  cdouble ft;
  if (fr.C != 0) {
    Poly dD = poly::derivative(k.D);
    double dp = poly::eval_real(dD, fr.x4);
    double dpp = poly::eval_real(poly::derivative(dD), fr.x4);
    if (std::abs(t - cdouble(fr.x4)) < 1e-12 * (1 + std::abs(fr.x4)))
      throw BranchCutViolation("t coincides with x4");
    ft = dpp / 6.0 + dp / (t - cdouble(fr.x4));
  } else {
    ft = k.d[2].get_d() / 3.0 + k.d[3].get_d() * t;
  }
  cdouble S = 1.0 / 3.0 + ft * (lp.alpha2 / kPi) * (lp.alpha2 / kPi);
  if (std::abs(S) < 1e-300) throw BranchCutViolation("S(t) = 0");
  cdouble inner =
      (lp.alpha2 / lp.alpha3) * (std::asin(1.0 / std::sqrt(S)) - kPi / 2);
  cdouble sv = std::sin(inner);
  cdouble u = sv * sv;
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw BranchCutViolation("gluing value is not finite");
  return u;
}

double tangent_angle(const KernelData& k) {
  Rat a1(0), at1(0), mix(0);
  for (const Rat& co : k.a) a1 += co;
  for (const Rat& co : k.at) at1 += co;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) mix += Rat(i * j) * k.w.at(i, j);
  Rat disc = mix * mix - 4 * a1 * at1;
  if (disc >= 0)
    throw RealRoots("tangent quadratic has real roots (|R| >= 1)");
  return std::atan2(std::sqrt(Rat(-disc).get_d()), Rat(-mix).get_d());
}

double corner_exponent(const KernelData& k) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int j = 2; j <= 6; ++j) {
    double t = 1.0 - std::pow(10.0, -j);
    cdouble u = limit_cgf(k, cdouble(t, 0.0));
    double X = j * std::log(10.0);  // -log(1-t)
    double Y = std::log(std::abs(u));
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace walkgroup
