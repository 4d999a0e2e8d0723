#include "walkgroup/exact.hpp"

#include <sstream>
#include <stdexcept>

namespace walkgroup {
namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const Poly& p) { return p.empty(); }

Poly constant(const Rat& c) {
  if (c == 0) return {};
  return {c};
}

Poly add(const Poly& p, const Poly& q) {
  Poly r(std::max(p.size(), q.size()), Rat(0));
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  trim(r);
  return r;
}

Poly sub(const Poly& p, const Poly& q) {
  Poly r(std::max(p.size(), q.size()), Rat(0));
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] -= q[i];
  trim(r);
  return r;
}

Poly neg(const Poly& p) {
  Poly r(p);
  for (auto& c : r) c = -c;
  return r;
}

Poly mul(const Poly& p, const Poly& q) {
  if (p.empty() || q.empty()) return {};
  Poly r(p.size() + q.size() - 1, Rat(0));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  trim(r);
  return r;
}

Poly scale(const Poly& p, const Rat& c) {
  if (c == 0) return {};
  Poly r(p);
  for (auto& x : r) x *= c;
  return r;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * p[i];
  trim(r);
  return r;
}

Rat eval(const Poly& p, const Rat& x) {
  Rat v(0);
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

cdouble eval(const Poly& p, cdouble x) {
  cdouble v(0.0, 0.0);
  for (size_t i = p.size(); i-- > 0;) v = v * x + cdouble(p[i].get_d(), 0.0);
  return v;
}

double eval_real(const Poly& p, double x) {
  double v = 0.0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i].get_d();
  return v;
}

std::vector<double> to_doubles(const Poly& p) {
  std::vector<double> r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[i].get_d();
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& p, const Poly& d) {
  if (d.empty()) throw std::invalid_argument("polynomial division by zero");
  Poly r(p), q;
  int dd = degree(d);
  if (degree(p) >= dd) q.assign(p.size() - d.size() + 1, Rat(0));
  while (degree(r) >= dd) {
    Rat coef = r.back() / d.back();
    int shift = degree(r) - dd;
    q[shift] = coef;
    for (size_t i = 0; i < d.size(); ++i) r[shift + i] -= coef * d[i];
    trim(r);
  }
  return {q, r};
}

Poly div_exact(const Poly& p, const Poly& d) {
  auto [q, r] = divmod(p, d);
  if (!r.empty()) throw std::invalid_argument("inexact polynomial division");
  return q;
}

namespace {

// clears denominators and strips the integer content; the rational gcd only
// cares about the primitive part
std::vector<mpz_class> primitive_z(const Poly& p) {
  mpz_class den(1);
  for (const Rat& c : p) {
    mpz_class d = c.get_den(), g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    den = den / g * d;
  }
  std::vector<mpz_class> z(p.size());
  mpz_class cont(0);
  for (size_t i = 0; i < p.size(); ++i) {
    z[i] = p[i].get_num() * (den / p[i].get_den());
    mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), z[i].get_mpz_t());
  }
  if (cont > 1)
    for (auto& c : z) c /= cont;
  return z;
}

void strip_content(std::vector<mpz_class>& z) {
  mpz_class cont(0);
  for (const auto& c : z) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
  if (cont > 1)
    for (auto& c : z) c /= cont;
}

}  // namespace

Poly gcd(Poly p, Poly q) {
  trim(p);
  trim(q);
  if (p.empty()) std::swap(p, q);
  if (q.empty()) {
    if (!p.empty() && p.back() != 1) {
      Rat lead = p.back();
      for (auto& c : p) c /= lead;
    }
    return p;
  }
  // primitive remainder sequence over the integers; the Euclid loop over
  // mpq re-canonicalizes on every coefficient operation and its remainders
  // grow multiplicatively, which dominated the orbit oracle's runtime
  std::vector<mpz_class> a = primitive_z(p), b = primitive_z(q);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::vector<mpz_class> r = a;
    const mpz_class lb = b.back();
    while (r.size() >= b.size()) {
      mpz_class lead = r.back();
      size_t shift = r.size() - b.size();
      for (auto& c : r) c *= lb;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= lead * b[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    strip_content(r);
    a = std::move(b);
    b = std::move(r);
  }
  Poly g(a.size());
  Rat lead{Rat(a.back())};
  for (size_t i = 0; i < a.size(); ++i) g[i] = Rat(a[i]) / lead;
  return g;
}

std::pair<Poly, Rat> div_linear(const Poly& p, const Rat& r) {
  if (p.empty()) return {{}, Rat(0)};
  Poly q(p.size() - 1, Rat(0));
  Rat carry = p.back();
  for (size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * r;
  }
  trim(q);
  return {q, carry};
}

bool is_perfect_square(const Poly& p) {
  if (p.empty()) return true;
  int d = degree(p);
  if (d % 2 != 0) return false;
  Rat lead = p.back();
  if (lead < 0) return false;
  // leading coefficient must be a rational square
  mpz_class num = lead.get_num(), den = lead.get_den();
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  if (sn * sn != num || sd * sd != den) return false;
  Rat slead(sn, sd);
  slead.canonicalize();
  // build the square root top-down by coefficient matching
  int hd = d / 2;
  Poly s(hd + 1, Rat(0));
  s[hd] = slead;
  Poly acc = mul(s, s);
  for (int k = hd - 1; k >= 0; --k) {
    // coefficient of x^(hd+k) in s^2 must match p: 2*s[hd]*s[k] + (known) = p[hd+k]
    Rat known(0);
    for (int i = k + 1; i <= hd; ++i) {
      int j = hd + k - i;
      if (j > k && j <= hd) known += s[i] * s[j];
    }
    s[k] = (p[hd + k] - known) / (2 * slead);
  }
  return mul(s, s) == p;
}

std::string to_string(const Poly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    if (!first) os << (p[i] > 0 ? " + " : " - ");
    Rat a = first ? p[i] : Rat(abs(p[i]));
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace poly

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal form: digits '.' digits
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      neg = digits[0] == '-';
      digits = digits.substr(1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad rational: " + s);
    mpz_class num(digits, 10), den(1);
    for (size_t i = 0; i < frac; ++i) den *= 10;
    Rat r(neg ? -num : num, den);
    r.canonicalize();
    return r;
  }
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  // canonicalize() divides by the gcd, which traps on a zero denominator
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rational_string(const Rat& r) { return r.get_str(); }

}  // namespace walkgroup
