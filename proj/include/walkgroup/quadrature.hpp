#pragma once

#include <functional>
#include <stdexcept>

namespace walkgroup {

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error (last refinement delta)
};

// Double-exponential (tanh-sinh) quadrature over [a, b]. Integrable endpoint
// singularities such as 1/sqrt(x-a) are handled by construction; the
// integrand is never evaluated at the endpoints themselves.
QuadResult tanh_sinh(const std::function<double(double)>& f, double a,
                     double b, double tol);

// Double-exponential (exp-sinh) quadrature over (-inf, b]. The integrand
// must decay at least like 1/x^2 toward -inf; an integrable singularity at b
// is allowed.
QuadResult exp_sinh_lower(const std::function<double(double)>& f, double b,
                          double tol);

}  // namespace walkgroup
