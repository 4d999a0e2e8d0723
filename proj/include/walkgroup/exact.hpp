#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace walkgroup {

using Rat = mpq_class;
using cdouble = std::complex<double>;

// Dense univariate polynomial over Q, coefficients in ascending order.
// The zero polynomial is the empty vector; nonzero polynomials carry no
// trailing zero coefficients (enforced by trim()).
using Poly = std::vector<Rat>;

namespace poly {

void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
bool is_zero(const Poly& p);
Poly constant(const Rat& c);

Poly add(const Poly& p, const Poly& q);
Poly sub(const Poly& p, const Poly& q);
Poly neg(const Poly& p);
Poly mul(const Poly& p, const Poly& q);
Poly scale(const Poly& p, const Rat& c);
Poly derivative(const Poly& p);

Rat eval(const Poly& p, const Rat& x);
cdouble eval(const Poly& p, cdouble x);
double eval_real(const Poly& p, double x);
std::vector<double> to_doubles(const Poly& p);

// Euclidean division, q*d + r = p with deg r < deg d. Throws on zero divisor.
std::pair<Poly, Poly> divmod(const Poly& p, const Poly& d);
// Exact division; throws if the remainder is nonzero.
Poly div_exact(const Poly& p, const Poly& d);

// Monic gcd over Q; gcd(0,0) = 0.
Poly gcd(Poly p, Poly q);

// q(x) with p(x) = (x - r)*q(x) + rem.
std::pair<Poly, Rat> div_linear(const Poly& p, const Rat& r);

// True when p = s^2 for some s over Q (coefficient matching from the top).
// The zero polynomial counts as a square.
bool is_perfect_square(const Poly& p);

std::string to_string(const Poly& p, const std::string& var = "x");

}  // namespace poly

// Parse "num/den" or "num" (also accepts a plain decimal like "0.25").
Rat parse_rational(const std::string& s);
std::string rational_string(const Rat& r);

}  // namespace walkgroup
