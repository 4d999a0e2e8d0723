#include "walkgroup/group_orbit_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace walkgroup {

RationalFunction RationalFunction::make(Poly n, Poly d) {
  poly::trim(n);
  poly::trim(d);
  if (d.empty())
    throw std::invalid_argument("rational function with zero denominator");
  if (n.empty()) return {};
  // a constant on either side rules out a common factor
  if (poly::degree(n) >= 1 && poly::degree(d) >= 1) {
    Poly g = poly::gcd(n, d);
    if (poly::degree(g) >= 1) {
      n = poly::div_exact(n, g);
      d = poly::div_exact(d, g);
    }
  }
  Rat lead = d.back();
  if (lead != 1) {
    for (Rat& co : n) co /= lead;
    for (Rat& co : d) co /= lead;
  }
  RationalFunction r;
  r.num = std::move(n);
  r.den = std::move(d);
  return r;
}

int RationalFunction::degree() const {
  if (is_zero()) return 0;
  return std::max(poly::degree(num), poly::degree(den));
}

RationalFunction operator+(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction::make(
      poly::add(poly::mul(a.num, b.den), poly::mul(b.num, a.den)),
      poly::mul(a.den, b.den));
}

RationalFunction operator-(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction::make(
      poly::sub(poly::mul(a.num, b.den), poly::mul(b.num, a.den)),
      poly::mul(a.den, b.den));
}

RationalFunction operator*(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction::make(poly::mul(a.num, b.num),
                                poly::mul(a.den, b.den));
}

RationalFunction operator/(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction::make(poly::mul(a.num, b.den),
                                poly::mul(a.den, b.num));
}

RationalFunction operator-(const RationalFunction& a) {
  RationalFunction r = a;
  for (Rat& co : r.num) co = -co;
  return r;
}

CurveField::CurveField(const KernelData& k)
    : a_(k.a),
      b_(k.b),
      c_(k.c),
      b_over_a_(RationalFunction::make(k.b, k.a)),
      c_over_a_(RationalFunction::make(k.c, k.a)) {}

FieldElement CurveField::add(const FieldElement& a,
                             const FieldElement& b) const {
  return {a.alpha + b.alpha, a.beta + b.beta};
}

FieldElement CurveField::sub(const FieldElement& a,
                             const FieldElement& b) const {
  return {a.alpha - b.alpha, a.beta - b.beta};
}

FieldElement CurveField::mul(const FieldElement& a,
                             const FieldElement& b) const {
  // (a1 + b1 y)(a2 + b2 y) with y^2 = -(b/a) y - (c/a)
  RationalFunction bb = a.beta * b.beta;
  return {a.alpha * b.alpha - bb * c_over_a_,
          a.alpha * b.beta + a.beta * b.alpha - bb * b_over_a_};
}

FieldElement CurveField::inverse(const FieldElement& a) const {
  RationalFunction conj_alpha = a.alpha - a.beta * b_over_a_;
  RationalFunction norm = a.alpha * conj_alpha + a.beta * a.beta * c_over_a_;
  if (norm.is_zero()) throw NormZero("field element has zero norm");
  return {conj_alpha / norm, (-a.beta) / norm};
}

FieldElement CurveField::div(const FieldElement& a,
                             const FieldElement& b) const {
  return mul(a, inverse(b));
}

FieldElement CurveField::eval_poly(const Poly& p,
                                   const FieldElement& at) const {
  FieldElement r{RationalFunction::zero(), RationalFunction::zero()};
  for (size_t i = p.size(); i-- > 0;) {
    r = mul(r, at);
    r.alpha = r.alpha + RationalFunction::from_poly({p[i]});
  }
  return r;
}

FieldElement CurveField::kernel_at(const FieldElement& X,
                                   const FieldElement& Y) const {
  return add(add(mul(eval_poly(a_, X), mul(Y, Y)), mul(eval_poly(b_, X), Y)),
             eval_poly(c_, X));
}

CurveAutomorphismState initial_state(const CurveField& f) {
  CurveAutomorphismState s;
  s.X = f.x();
  s.Y = f.y();
  s.n = 0;
  s.max_degree = 1;
  return s;
}

namespace {

int elem_degree(const FieldElement& e) {
  return std::max(e.alpha.degree(), e.beta.degree());
}

FieldElement negate(const FieldElement& e) { return {-e.alpha, -e.beta}; }

long rat_bits(const Rat& r) {
  return static_cast<long>(mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
                           mpz_sizeinbase(r.get_den().get_mpz_t(), 2));
}

}  // namespace

CurveAutomorphismState xi_step(const CurveField& f, const KernelData& k,
                               CurveAutomorphismState s) {
  FieldElement aX = f.eval_poly(k.a, s.X);
  FieldElement bX = f.eval_poly(k.b, s.X);
  FieldElement newY;
  try {
    newY = negate(f.add(s.Y, f.div(bX, aX)));
  } catch (const NormZero&) {
    // product of the two roots over X: Y * xi(Y) = c(X)/a(X)
    FieldElement cX = f.eval_poly(k.c, s.X);
    newY = f.div(cX, f.mul(aX, s.Y));
  }
  s.Y = newY;
  s.max_degree = std::max(s.max_degree, elem_degree(s.Y));
  return s;
}

CurveAutomorphismState eta_step(const CurveField& f, const KernelData& k,
                                CurveAutomorphismState s) {
  FieldElement aY = f.eval_poly(k.at, s.Y);
  FieldElement bY = f.eval_poly(k.bt, s.Y);
  FieldElement newX;
  try {
    newX = negate(f.add(s.X, f.div(bY, aY)));
  } catch (const NormZero&) {
    FieldElement cY = f.eval_poly(k.ct, s.Y);
    newX = f.div(cY, f.mul(aY, s.X));
  }
  s.X = newX;
  s.max_degree = std::max(s.max_degree, elem_degree(s.X));
  return s;
}

namespace {

// Fast engine for delta_order. The public FieldElement path re-canonicalizes
// an mpq on every coefficient operation, which dominates long orbits; here
// rational functions are kept as coprime integer polynomials with a positive
// denominator lead, so the only gcds are one primitive remainder sequence per
// normalization. The algebra mirrors CurveField exactly.
using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  ztrim(r);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ztrim(r);
  return r;
}

mpz_class zcontent(const ZPoly& p) {
  mpz_class c(0);
  for (const auto& v : p) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
  return c;
}

// primitive part in place; the sign of the leading coefficient is kept
void zprim(ZPoly& p) {
  mpz_class c = zcontent(p);
  if (c > 1)
    for (auto& v : p) v /= c;
}

// gcd of the primitive parts, with positive leading coefficient
ZPoly zgcd(ZPoly a, ZPoly b) {
  ztrim(a);
  ztrim(b);
  zprim(a);
  zprim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = a;
    const mpz_class lb = b.back();
    while (r.size() >= b.size()) {
      mpz_class lead = r.back();
      size_t shift = r.size() - b.size();
      for (auto& v : r) v *= lb;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= lead * b[i];
      ztrim(r);
    }
    zprim(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0)
    for (auto& v : a) v = -v;
  return a;
}

ZPoly zdiv_exact(const ZPoly& p, const ZPoly& d) {
  ZPoly r(p), q(p.size() - d.size() + 1, mpz_class(0));
  while (r.size() >= d.size()) {
    size_t shift = r.size() - d.size();
    mpz_class coef = r.back() / d.back();
    q[shift] = coef;
    for (size_t i = 0; i < d.size(); ++i) r[shift + i] -= coef * d[i];
    ztrim(r);
  }
  return q;
}

struct ZFun {
  ZPoly num, den;  // coprime, contents coprime, den lead > 0; zero: num empty
  bool operator==(const ZFun&) const = default;
  bool is_zero() const { return num.empty(); }
};

ZFun zmake(ZPoly n, ZPoly d) {
  ztrim(n);
  ztrim(d);
  if (d.empty())
    throw std::invalid_argument("rational function with zero denominator");
  if (n.empty()) return {{}, {mpz_class(1)}};
  mpz_class cn = zcontent(n), cd = zcontent(d);
  if (cn > 1)
    for (auto& v : n) v /= cn;
  if (cd > 1)
    for (auto& v : d) v /= cd;
  if (zdeg(n) >= 1 && zdeg(d) >= 1) {
    ZPoly g = zgcd(n, d);
    if (zdeg(g) >= 1) {
      n = zdiv_exact(n, g);
      d = zdiv_exact(d, g);
    }
  }
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (cg > 1) {
    cn /= cg;
    cd /= cg;
  }
  if (d.back() < 0) {
    for (auto& v : n) v = -v;
    for (auto& v : d) v = -v;
  }
  for (auto& v : n) v *= cn;
  for (auto& v : d) v *= cd;
  return {std::move(n), std::move(d)};
}

ZFun zf_mul(const ZFun& a, const ZFun& b) {
  return zmake(zmul(a.num, b.num), zmul(a.den, b.den));
}

ZFun zf_div(const ZFun& a, const ZFun& b) {
  return zmake(zmul(a.num, b.den), zmul(a.den, b.num));
}

ZFun zf_add(const ZFun& a, const ZFun& b) {
  return zmake(zadd(zmul(a.num, b.den), zmul(b.num, a.den)),
               zmul(a.den, b.den));
}

ZFun zf_sub(const ZFun& a, const ZFun& b) {
  return zmake(zsub(zmul(a.num, b.den), zmul(b.num, a.den)),
               zmul(a.den, b.den));
}

ZFun zf_neg(ZFun a) {
  for (auto& v : a.num) v = -v;
  return a;
}

struct ZElem {
  ZFun alpha, beta;
  bool operator==(const ZElem&) const = default;
};

int zf_degree(const ZFun& f) {
  if (f.is_zero()) return 0;
  return std::max(zdeg(f.num), zdeg(f.den));
}

int zelem_degree(const ZElem& e) {
  return std::max(zf_degree(e.alpha), zf_degree(e.beta));
}

// bit measure on the canonical monic-over-Q form, matching the public path
long zf_bits(const ZFun& f) {
  long b = 0;
  const mpz_class& lead = f.den.back();
  auto coeff_bits = [&](const mpz_class& v) {
    Rat c(v, lead);
    c.canonicalize();
    b = std::max(b, rat_bits(c));
  };
  for (const auto& v : f.num) coeff_bits(v);
  for (const auto& v : f.den) coeff_bits(v);
  return b;
}

long zelem_bits(const ZElem& e) {
  return std::max(zf_bits(e.alpha), zf_bits(e.beta));
}

class ZEngine {
 public:
  explicit ZEngine(const KernelData& k)
      : a_(coeffs(k.a)),
        b_(coeffs(k.b)),
        c_(coeffs(k.c)),
        at_(coeffs(k.at)),
        bt_(coeffs(k.bt)),
        ct_(coeffs(k.ct)),
        bova_(from_pair(k.b, k.a)),
        cova_(from_pair(k.c, k.a)) {}

  static ZElem x_elem() {
    return {{{mpz_class(0), mpz_class(1)}, {mpz_class(1)}}, ZFun{{}, {mpz_class(1)}}};
  }
  static ZElem y_elem() {
    return {ZFun{{}, {mpz_class(1)}}, {{mpz_class(1)}, {mpz_class(1)}}};
  }

  ZElem mul(const ZElem& a, const ZElem& b) const {
    ZFun bb = zf_mul(a.beta, b.beta);
    return {zf_sub(zf_mul(a.alpha, b.alpha), zf_mul(bb, cova_)),
            zf_sub(zf_add(zf_mul(a.alpha, b.beta), zf_mul(a.beta, b.alpha)),
                   zf_mul(bb, bova_))};
  }

  ZElem add(const ZElem& a, const ZElem& b) const {
    return {zf_add(a.alpha, b.alpha), zf_add(a.beta, b.beta)};
  }

  ZElem neg(const ZElem& a) const { return {zf_neg(a.alpha), zf_neg(a.beta)}; }

  ZElem inverse(const ZElem& a) const {
    ZFun conj_alpha = zf_sub(a.alpha, zf_mul(a.beta, bova_));
    ZFun norm = zf_add(zf_mul(a.alpha, conj_alpha),
                       zf_mul(zf_mul(a.beta, a.beta), cova_));
    if (norm.is_zero()) throw NormZero("field element has zero norm");
    return {zf_div(conj_alpha, norm), zf_div(zf_neg(a.beta), norm)};
  }

  ZElem div(const ZElem& a, const ZElem& b) const { return mul(a, inverse(b)); }

  ZElem eval(const std::vector<ZFun>& p, const ZElem& at) const {
    ZElem r{ZFun{{}, {mpz_class(1)}}, ZFun{{}, {mpz_class(1)}}};
    for (size_t i = p.size(); i-- > 0;) {
      r = mul(r, at);
      r.alpha = zf_add(r.alpha, p[i]);
    }
    return r;
  }

  void xi(const ZElem& X, ZElem& Y) const {
    ZElem aX = eval(a_, X);
    ZElem bX = eval(b_, X);
    try {
      Y = neg(add(Y, div(bX, aX)));
    } catch (const NormZero&) {
      ZElem cX = eval(c_, X);
      Y = div(cX, mul(aX, Y));
    }
  }

  void eta(ZElem& X, const ZElem& Y) const {
    ZElem aY = eval(at_, Y);
    ZElem bY = eval(bt_, Y);
    try {
      X = neg(add(X, div(bY, aY)));
    } catch (const NormZero&) {
      ZElem cY = eval(ct_, Y);
      X = div(cY, mul(aY, X));
    }
  }

 private:
  static ZFun from_rat(const Rat& r) {
    if (r == 0) return {{}, {mpz_class(1)}};
    return {{mpz_class(r.get_num())}, {mpz_class(r.get_den())}};
  }

  static std::vector<ZFun> coeffs(const Poly& p) {
    std::vector<ZFun> v;
    v.reserve(p.size());
    for (const Rat& c : p) v.push_back(from_rat(c));
    return v;
  }

  // num/den scaled by a common denominator so the ratio is unchanged
  static ZFun from_pair(const Poly& num, const Poly& den) {
    mpz_class lcm(1);
    auto fold = [&](const Poly& p) {
      for (const Rat& c : p) {
        mpz_class d = c.get_den(), g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        lcm = lcm / g * d;
      }
    };
    fold(num);
    fold(den);
    auto scale = [&](const Poly& p) {
      ZPoly z(p.size());
      for (size_t i = 0; i < p.size(); ++i)
        z[i] = p[i].get_num() * (lcm / p[i].get_den());
      return z;
    };
    return zmake(scale(num), scale(den));
  }

  std::vector<ZFun> a_, b_, c_, at_, bt_, ct_;
  ZFun bova_, cova_;
};

}  // namespace

GroupOrderResult delta_order(const StepWeights& w, int max_iter,
                             int max_degree, long max_bits,
                             std::vector<TraceRow>* trace) {
  KernelData k = build_kernel(w);
  SingularityReport sing = is_singular(k);
  if (sing.singular) throw SingularWalk(sing.reason);
  ZEngine eng(k);
  ZElem X = ZEngine::x_elem();
  ZElem Y = ZEngine::y_elem();
  const ZElem x0 = X;
  const ZElem y0 = Y;

  GroupOrderResult r;
  r.proof_path.kind = ProofPathKind::OrbitOracle;
  for (int n = 1; n <= max_iter; ++n) {
    eng.xi(X, Y);
    eng.eta(X, Y);
    int dx = zelem_degree(X);
    int dy = zelem_degree(Y);
    long bits = std::max(zelem_bits(X), zelem_bits(Y));
    if (trace) trace->push_back({n, dx, dy, bits});
    if (X == x0 && Y == y0) {
      r.verdict = Verdict::Finite;
      r.order = 2 * n;
      return r;
    }
    if (dx > max_degree || dy > max_degree || bits > max_bits) {
      r.verdict = Verdict::UndecidedUpToBound;
      r.bound = n;
      r.reason = "orbit exceeded a degree or coefficient cap";
      return r;
    }
  }
  r.verdict = Verdict::UndecidedUpToBound;
  r.bound = max_iter;
  r.reason = "no return within the iteration cap";
  return r;
}

NumericOrbitResult numeric_orbit(const StepWeights& w, cdouble x0,
                                 int max_iter, double tol) {
  KernelData k = build_kernel(w);
  auto roots = branch_Y(k, x0);
  if (roots.first.at_infinity)
    throw std::invalid_argument("no finite y above the start point");
  cdouble y0 = roots.first.value;
  cdouble kv = poly::eval(k.a, x0) * y0 * y0 + poly::eval(k.b, x0) * y0 +
               poly::eval(k.c, x0);
  double norm0 = std::max(1.0, std::abs(x0)) * std::max(1.0, std::abs(x0)) *
                 std::max(1.0, std::abs(y0)) * std::max(1.0, std::abs(y0));
  if (std::abs(kv) > 1e-6 * norm0)
    throw std::invalid_argument("start point is not on the curve");

  cdouble x = x0, y = y0;
  for (int n = 1; n <= max_iter; ++n) {
    cdouble den = poly::eval(k.a, x) * y;
    if (std::abs(den) < 1e-250) throw OrbitEscape("pole in the xi map");
    y = poly::eval(k.c, x) / den;
    den = poly::eval(k.at, y) * x;
    if (std::abs(den) < 1e-250) throw OrbitEscape("pole in the eta map");
    x = poly::eval(k.ct, y) / den;
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) ||
        !std::isfinite(y.real()) || !std::isfinite(y.imag()) ||
        std::abs(x) > 1e12 || std::abs(y) > 1e12)
      throw OrbitEscape("orbit escaped");
    if (std::abs(x - x0) + std::abs(y - y0) <
        tol * (1 + std::abs(x0) + std::abs(y0)))
      return {true, n, n};
  }
  return {false, 0, max_iter};
}

}  // namespace walkgroup
