#include "walkgroup/quadrature.hpp"

#include <cmath>

namespace walkgroup {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kTMax = 4.0;  // abscissa cutoff; weights are ~1e-100 there
constexpr int kMaxLevel = 12;

// One tanh-sinh sample: node position within [a,b] and weight, at abscissa t.
// Returns false once the node has collapsed onto an endpoint.
bool ts_node(double a, double b, double t, double& x, double& w) {
  double u = kHalfPi * std::sinh(t);
  double ch = std::cosh(u);
  double half = 0.5 * (b - a);
  x = 0.5 * (a + b) + half * std::tanh(u);
  w = half * kHalfPi * std::cosh(t) / (ch * ch);
  return x > a && x < b && std::isfinite(w) && w > 0.0;
}

}  // namespace

QuadResult tanh_sinh(const std::function<double(double)>& f, double a,
                     double b, double tol) {
  if (!(b > a)) {
    if (b == a) return {0.0, 0.0};
    QuadResult r = tanh_sinh(f, b, a, tol);
    return {-r.value, r.error};
  }
  auto pair_at = [&](double t) {
    double acc = 0.0;
    double xp, wp;
    if (ts_node(a, b, t, xp, wp)) {
      double v = f(xp);
      if (std::isfinite(v)) acc += wp * v;
    }
    double xm, wm;
    if (ts_node(a, b, -t, xm, wm)) {
      double v = f(xm);
      if (std::isfinite(v)) acc += wm * v;
    }
    return acc;
  };
  double x, w;
  ts_node(a, b, 0.0, x, w);
  double sum = w * f(x);
  // level 0 is the trapezoid rule at h = 1, so every integer abscissa
  // contributes here; later levels add only the odd multiples of their h.
  for (double t = 1.0; t <= kTMax; t += 1.0) sum += pair_at(t);
  double h = 1.0;
  QuadResult res{sum, INFINITY};
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    double part = 0.0;
    for (double t = h; t <= kTMax; t += 2 * h) part += pair_at(t);
    sum += part;
    double value = h * sum;
    double delta = std::abs(value - res.value);
    res.value = value;
    res.error = delta;
    if (level >= 3 && delta <= tol * std::max(1.0, std::abs(value))) break;
  }
  if (!std::isfinite(res.value))
    throw QuadratureFailure("tanh-sinh sum is not finite");
  return res;
}

QuadResult exp_sinh_lower(const std::function<double(double)>& f, double b,
                          double tol) {
  // x = b - exp(u), u = (pi/2) sinh t, dx = -exp(u) du; orientation flips so
  // the integral over (-inf, b] becomes a plain sum over t in (-inf, inf).
  auto node = [&](double t, double& x, double& w) {
    double u = kHalfPi * std::sinh(t);
    double e = std::exp(u);
    x = b - e;
    w = kHalfPi * std::cosh(t) * e;
    return x < b && std::isfinite(w) && std::isfinite(x);
  };
  auto pair_at = [&](double t) {
    double acc = 0.0;
    double xp, wp;
    if (node(t, xp, wp)) {
      double v = f(xp);
      if (std::isfinite(v)) acc += wp * v;
    }
    double xm, wm;
    if (node(-t, xm, wm)) {
      double v = f(xm);
      if (std::isfinite(v)) acc += wm * v;
    }
    return acc;
  };
  double x, w;
  node(0.0, x, w);
  double sum = w * f(x);
  for (double t = 1.0; t <= kTMax; t += 1.0) sum += pair_at(t);
  double h = 1.0;
  QuadResult res{sum, INFINITY};
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    double part = 0.0;
    for (double t = h; t <= kTMax; t += 2 * h) part += pair_at(t);
    sum += part;
    double value = h * sum;
    double delta = std::abs(value - res.value);
    res.value = value;
    res.error = delta;
    if (level >= 3 && delta <= tol * std::max(1.0, std::abs(value))) break;
  }
  if (!std::isfinite(res.value))
    throw QuadratureFailure("exp-sinh sum is not finite");
  return res;
}

}  // namespace walkgroup
