#include "walkgroup/kernel_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace walkgroup {

namespace {

using poly::degree;
using poly::eval;
using poly::is_zero;

// roots of a real-coefficient polynomial via the companion matrix
std::vector<cdouble> companion_roots(const std::vector<double>& coef) {
  int n = static_cast<int>(coef.size()) - 1;
  std::vector<cdouble> roots;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.emplace_back(-coef[0] / coef[1], 0.0);
    return roots;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -coef[i] / coef[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i]);
  return roots;
}

cdouble newton_polish(const Poly& p, const Poly& dp, cdouble z) {
  for (int it = 0; it < 8; ++it) {
    cdouble f = eval(p, z);
    cdouble df = eval(dp, z);
    if (std::abs(df) < 1e-200) break;
    cdouble step = f / df;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

double root_residual(const Poly& p, cdouble z) {
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c.get_d()));
  double m = std::max(1.0, std::abs(z));
  double denom = scale * m * m * m * m;
  return denom > 0 ? std::abs(eval(p, z)) / denom : std::abs(eval(p, z));
}

// roots of a quadratic/linear with exact rational coefficients, as doubles
std::vector<cdouble> rational_poly_roots(const Poly& q) {
  std::vector<cdouble> out;
  int d = degree(q);
  if (d == 1) {
    out.emplace_back(Rat(-q[0] / q[1]).get_d(), 0.0);
  } else if (d == 2) {
    Rat disc = q[1] * q[1] - 4 * q[2] * q[0];
    double a2 = q[2].get_d(), a1 = q[1].get_d();
    if (disc >= 0) {
      double s = std::sqrt(disc.get_d());
      // avoid cancellation: compute the big-magnitude root first
      double qq = -(a1 + (a1 >= 0 ? s : -s)) / 2.0;
      if (qq != 0.0) {
        out.emplace_back(qq / a2, 0.0);
        out.emplace_back(q[0].get_d() / qq, 0.0);
      } else {
        out.emplace_back(0.0, 0.0);
        out.emplace_back(-a1 / a2, 0.0);
      }
    } else {
      double s = std::sqrt(-disc.get_d());
      out.emplace_back(-a1 / (2 * a2), s / (2 * a2));
      out.emplace_back(-a1 / (2 * a2), -s / (2 * a2));
    }
  }
  return out;
}

bool root_less(const BranchRoot& p, const BranchRoot& q) {
  if (p.at_infinity != q.at_infinity) return q.at_infinity;
  if (p.at_infinity) return false;
  double mp = std::abs(p.value), mq = std::abs(q.value);
  if (std::abs(mp - mq) > 1e-12 * (1.0 + mp + mq)) return mp < mq;
  if (std::abs(p.value.real() - q.value.real()) > 1e-14)
    return p.value.real() < q.value.real();
  return p.value.imag() < q.value.imag();
}

std::array<BranchRoot, 4> quartic_branch_roots(const Poly& D, double* residual) {
  if (is_zero(D))
    throw RootFindingFailure("discriminant vanishes identically");

  std::vector<BranchRoot> roots;
  Poly Dp = poly::derivative(D);
  Poly g = poly::gcd(D, Dp);

  if (degree(g) == 0 || degree(D) <= 1) {
    // simple roots: eigenvalues of the companion matrix, then Newton
    for (cdouble z : companion_roots(poly::to_doubles(D))) {
      BranchRoot r;
      r.value = newton_polish(D, Dp, z);
      roots.push_back(r);
    }
  } else if (degree(g) == 1) {
    // one double root, found exactly
    Rat r0 = -g[0] / g[1];
    Poly lin = {-r0, Rat(1)};
    Poly rest = poly::div_exact(poly::div_exact(D, lin), lin);
    BranchRoot dbl;
    dbl.value = cdouble(r0.get_d(), 0.0);
    dbl.multiplicity = 2;
    roots.push_back(dbl);
    roots.push_back(dbl);
    for (cdouble z : rational_poly_roots(rest)) {
      BranchRoot r;
      r.value = z;
      roots.push_back(r);
    }
  } else if (degree(g) == 2) {
    // two double roots: D must be a constant times g^2 (a triple root
    // would also leave a quadratic gcd, so verify the factorization)
    auto [q, rem] = poly::divmod(D, poly::mul(g, g));
    if (!rem.empty() || degree(q) != 0)
      throw RootFindingFailure("root multiplicity structure not supported");
    for (cdouble z : rational_poly_roots(g)) {
      BranchRoot r;
      r.value = z;
      r.multiplicity = 2;
      roots.push_back(r);
      roots.push_back(r);
    }
  } else {
    throw RootFindingFailure("root multiplicity structure not supported");
  }

  // degree deficit of the quartic puts the missing roots at infinity
  while (roots.size() < 4) {
    BranchRoot inf;
    inf.at_infinity = true;
    roots.push_back(inf);
  }
  int n_inf = 0;
  for (auto& r : roots)
    if (r.at_infinity) ++n_inf;
  for (auto& r : roots)
    if (r.at_infinity) r.multiplicity = n_inf;

  std::sort(roots.begin(), roots.end(), root_less);

  // the first pair is real and ascending in the intended enumeration
  if (!roots[0].at_infinity && !roots[1].at_infinity &&
      std::abs(roots[0].value.imag()) < 1e-9 &&
      std::abs(roots[1].value.imag()) < 1e-9 &&
      roots[0].value.real() > roots[1].value.real())
    std::swap(roots[0], roots[1]);

  double worst = 0.0;
  for (const auto& r : roots)
    if (!r.at_infinity) worst = std::max(worst, root_residual(D, r.value));
  if (worst > 1e-12)
    throw RootFindingFailure("branch point residual above tolerance");
  if (residual) *residual = std::max(*residual, worst);

  std::array<BranchRoot, 4> out;
  std::copy_n(roots.begin(), 4, out.begin());
  return out;
}

std::pair<BranchValue, BranchValue> quadratic_branches(cdouble a2, cdouble a1,
                                                       cdouble a0) {
  double scale = std::abs(a1) + std::abs(a0) + 1.0;
  BranchValue u, v;
  if (std::abs(a2) < 1e-18 * scale) {
    v.at_infinity = true;
    if (std::abs(a1) < 1e-18 * scale) {
      u.at_infinity = true;
    } else {
      u.value = -a0 / a1;
    }
    return {u, v};
  }
  cdouble disc = a1 * a1 - 4.0 * a2 * a0;
  cdouble s = std::sqrt(disc);
  // pick the sign that avoids cancellation in -b -/+ s
  if ((std::conj(a1) * s).real() < 0.0) s = -s;
  cdouble q = -0.5 * (a1 + s);
  cdouble r1, r2;
  if (std::abs(q) > 0.0) {
    r1 = q / a2;
    r2 = a0 / q;
  } else {
    r1 = cdouble(0.0, 0.0);
    r2 = -a1 / a2;
  }
  u.value = r1;
  v.value = r2;
  double m1 = std::abs(r1), m2 = std::abs(r2);
  bool swap;
  if (std::abs(m1 - m2) > 1e-12 * (1.0 + m1 + m2)) {
    swap = m1 > m2;
  } else if (std::abs(r1.real() - r2.real()) > 1e-14) {
    swap = r1.real() > r2.real();
  } else {
    swap = r1.imag() > r2.imag();
  }
  if (swap) std::swap(u, v);
  return {u, v};
}

}  // namespace

std::string to_string(GenusClass g) {
  switch (g) {
    case GenusClass::Singular: return "singular";
    case GenusClass::Genus1: return "genus1";
    case GenusClass::Genus0ZeroDrift: return "genus0-zero-drift";
    case GenusClass::Genus0Case2: return "genus0-case2";
    case GenusClass::Genus0Case3: return "genus0-case3";
    case GenusClass::Genus0Case4: return "genus0-case4";
    case GenusClass::Genus0Case5: return "genus0-case5";
  }
  return "?";
}

KernelData build_kernel(const StepWeights& w) {
  KernelData k;
  k.w = w;
  k.a = {w.at(-1, 1), w.at(0, 1), w.at(1, 1)};
  k.b = {w.at(-1, 0), w.at(0, 0) - 1, w.at(1, 0)};
  k.c = {w.at(-1, -1), w.at(0, -1), w.at(1, -1)};
  k.at = {w.at(1, -1), w.at(1, 0), w.at(1, 1)};
  k.bt = {w.at(0, -1), w.at(0, 0) - 1, w.at(0, 1)};
  k.ct = {w.at(-1, -1), w.at(-1, 0), w.at(-1, 1)};
  poly::trim(k.a);
  poly::trim(k.b);
  poly::trim(k.c);
  poly::trim(k.at);
  poly::trim(k.bt);
  poly::trim(k.ct);
  k.D = poly::sub(poly::mul(k.b, k.b),
                  poly::scale(poly::mul(k.a, k.c), Rat(4)));
  k.Dt = poly::sub(poly::mul(k.bt, k.bt),
                   poly::scale(poly::mul(k.at, k.ct), Rat(4)));
  k.C = w.at(1, 0) * w.at(1, 0) - 4 * w.at(1, 1) * w.at(1, -1);
  k.Ct = w.at(0, 1) * w.at(0, 1) - 4 * w.at(1, 1) * w.at(-1, 1);
  for (int i = 0; i <= 4; ++i)
    k.d[i] = i < static_cast<int>(k.D.size()) ? k.D[i] : Rat(0);
  return k;
}

namespace {

bool monic_part_is_square(const Poly& p) {
  if (is_zero(p)) return true;
  Poly m(p);
  Rat lead = m.back();
  for (auto& c : m) c /= lead;
  return poly::is_perfect_square(m);
}

}  // namespace

SingularityReport is_singular(const KernelData& k) {
  SingularityReport rep;
  if (is_zero(k.a)) {
    rep.singular = true;
    rep.reason = "kernel has degree < 2 in y";
    return rep;
  }
  if (is_zero(k.at)) {
    rep.singular = true;
    rep.reason = "kernel has degree < 2 in x";
    return rep;
  }
  if (degree(poly::gcd(k.a, poly::gcd(k.b, k.c))) > 0) {
    rep.singular = true;
    rep.reason = "a, b, c share a polynomial factor";
    return rep;
  }
  if (degree(poly::gcd(k.at, poly::gcd(k.bt, k.ct))) > 0) {
    rep.singular = true;
    rep.reason = "at, bt, ct share a polynomial factor";
    return rep;
  }
  if (monic_part_is_square(k.D)) {
    rep.singular = true;
    rep.reason = "discriminant in x is a square, kernel splits";
    return rep;
  }
  if (monic_part_is_square(k.Dt)) {
    rep.singular = true;
    rep.reason = "discriminant in y is a square, kernel splits";
    return rep;
  }
  return rep;
}

BranchPoints branch_points(const KernelData& k) {
  BranchPoints bp;
  bp.residual = 0.0;
  bp.x = quartic_branch_roots(k.D, &bp.residual);
  bp.y = quartic_branch_roots(k.Dt, &bp.residual);
  return bp;
}

GenusClass genus_classify(const KernelData& k) {
  if (is_singular(k).singular) return GenusClass::Singular;
  const StepWeights& w = k.w;
  Rat dx(0), dy(0);
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      dx += i * w.at(i, j);
      dy += j * w.at(i, j);
    }
  if (dx == 0 && dy == 0) return GenusClass::Genus0ZeroDrift;
  auto zero = [&](int i, int j) { return w.at(i, j) == 0; };
  if (zero(0, 1) && zero(-1, 0) && zero(-1, 1)) return GenusClass::Genus0Case2;
  if (zero(1, 0) && zero(1, -1) && zero(0, -1)) return GenusClass::Genus0Case3;
  if (zero(1, 0) && zero(0, 1) && zero(1, 1)) return GenusClass::Genus0Case4;
  if (zero(0, -1) && zero(-1, 0) && zero(-1, -1)) return GenusClass::Genus0Case5;
  return GenusClass::Genus1;
}

std::pair<BranchValue, BranchValue> branch_X(const KernelData& k, cdouble y) {
  return quadratic_branches(eval(k.at, y), eval(k.bt, y), eval(k.ct, y));
}

std::pair<BranchValue, BranchValue> branch_Y(const KernelData& k, cdouble x) {
  return quadratic_branches(eval(k.a, x), eval(k.b, x), eval(k.c, x));
}

namespace {

// closed loop of X0 over both edges of the slit [lo, hi], where the
// discriminant is nonpositive and the two branch values are conjugate
std::vector<cdouble> slit_loop(const KernelData& k, double lo, double hi,
                               int n) {
  std::vector<cdouble> lower;
  for (int i = 0; i < n; ++i) {
    double y = lo + (hi - lo) * i / (n - 1);
    cdouble a2 = eval(k.at, cdouble(y, 0.0));
    cdouble a1 = eval(k.bt, cdouble(y, 0.0));
    double scale = std::abs(a1) + std::abs(eval(k.ct, cdouble(y, 0.0))) + 1.0;
    if (std::abs(a2) < 1e-14 * scale) continue;  // branch escapes to infinity
    double disc = (a1 * a1 - 4.0 * a2 * eval(k.ct, cdouble(y, 0.0))).real();
    double s = std::sqrt(std::max(0.0, -disc));
    lower.push_back((-a1 - cdouble(0.0, s)) / (2.0 * a2));
  }
  std::vector<cdouble> loop = lower;
  if (lower.size() >= 3)
    for (size_t i = lower.size() - 1; i-- > 1;)
      loop.push_back(std::conj(lower[i]));
  return loop;
}

}  // namespace

CurveSamples curve_M(const KernelData& k, int n_samples) {
  BranchPoints bp = branch_points(k);
  for (int i = 0; i < 2; ++i)
    if (bp.y[i].at_infinity || std::abs(bp.y[i].value.imag()) > 1e-9)
      throw SamplingDegenerate("slit [y1,y2] is not a real segment");
  double y1 = bp.y[0].value.real(), y2 = bp.y[1].value.real();
  if (y2 - y1 < 1e-12) throw SamplingDegenerate("slit [y1,y2] has zero length");
  CurveSamples out;
  int n = std::max(8, n_samples);
  out.m1 = slit_loop(k, y1, y2, n);

  if (!bp.y[2].at_infinity && std::abs(bp.y[2].value.imag()) < 1e-9) {
    double y3 = bp.y[2].value.real();
    double y4;
    if (bp.y[3].at_infinity) {
      y4 = y3 + 10.0 * (1.0 + std::abs(y3));  // unbounded slit, truncated
    } else if (std::abs(bp.y[3].value.imag()) < 1e-9) {
      y4 = bp.y[3].value.real();
      if (y4 - y3 < 1e-12)
        throw SamplingDegenerate("slit [y3,y4] has zero length");
    } else {
      return out;
    }
    out.m2 = slit_loop(k, y3, y4, n);
  }
  return out;
}

DeflatedQuadratic deflate_double_root(const KernelData& k) {
  auto [q1, r1] = poly::div_linear(k.D, Rat(1));
  if (r1 != 0) throw std::logic_error("D(1) != 0: walk has drift");
  auto [q2, r2] = poly::div_linear(q1, Rat(1));
  if (r2 != 0) throw std::logic_error("D has a simple root at 1 only");
  DeflatedQuadratic q;
  q.f = q2.size() > 0 ? q2[0] : Rat(0);
  q.e = q2.size() > 1 ? q2[1] : Rat(0);
  q.C = q2.size() > 2 ? q2[2] : Rat(0);
  return q;
}

}  // namespace walkgroup
