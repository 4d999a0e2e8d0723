#include "walkgroup/walk_model.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>

namespace walkgroup {

namespace {

// |q| <= eps as rationals, eps given as a double
bool within(const Rat& q, double eps) {
  Rat a = q < 0 ? Rat(-q) : q;
  return a.get_d() <= eps;
}

bool rational_sqrt(const Rat& q, Rat& root) {
  if (q < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  if (sn * sn != num || sd * sd != den) return false;
  root = Rat(sn, sd);
  root.canonicalize();
  return true;
}

}  // namespace

void StepWeights::validate() const {
  Rat sum(0);
  Rat off_center(0);
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Rat& v = at(i, j);
      if (v < 0) throw std::invalid_argument("negative step weight");
      sum += v;
      if (i != 0 || j != 0) off_center += v;
    }
  }
  if (exact) {
    if (sum != 1) throw std::invalid_argument("step weights must sum to 1");
  } else if (!within(sum - 1, 1e-12)) {
    throw std::invalid_argument("step weights must sum to 1 within 1e-12");
  }
  if (off_center == 0) throw std::invalid_argument("walk never moves");
}

StepWeights StepWeights::transpose() const {
  StepWeights t;
  t.exact = exact;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) t.at(i, j) = at(j, i);
  return t;
}

StepWeights StepWeights::mirror_x() const {
  StepWeights t;
  t.exact = exact;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) t.at(i, j) = at(-i, j);
  return t;
}

StepWeights StepWeights::mirror_y() const {
  StepWeights t;
  t.exact = exact;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) t.at(i, j) = at(i, -j);
  return t;
}

StepWeights StepWeights::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_object())
    throw std::invalid_argument("expected an object with a \"weights\" map");
  StepWeights w;
  w.exact = j.value("exact", true);
  for (auto& [key, val] : j["weights"].items()) {
    int i = 0, jj = 0;
    if (std::sscanf(key.c_str(), "%d,%d", &i, &jj) != 2 || i < -1 || i > 1 ||
        jj < -1 || jj > 1)
      throw std::invalid_argument("bad step key \"" + key +
                                  "\" (want \"i,j\" with i,j in {-1,0,1})");
    Rat v;
    if (val.is_string()) {
      v = parse_rational(val.get<std::string>());
    } else if (val.is_number_integer()) {
      v = Rat(val.get<long>());
    } else {
      throw std::invalid_argument("weight for \"" + key +
                                  "\" must be a rational string");
    }
    w.at(i, jj) = v;
  }
  w.validate();
  return w;
}

std::string StepWeights::to_json_text() const {
  nlohmann::json weights = nlohmann::json::object();
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      if (at(i, j) != 0)
        weights[std::to_string(i) + "," + std::to_string(j)] =
            rational_string(at(i, j));
  nlohmann::json out;
  out["weights"] = weights;
  out["exact"] = exact;
  return out.dump(2);
}

Moments moments(const StepWeights& w) {
  Moments m;
  m.drift_x = m.drift_y = m.var_x = m.var_y = m.mixed = 0;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Rat& v = w.at(i, j);
      m.drift_x += i * v;
      m.drift_y += j * v;
      m.var_x += i * i * v;
      m.var_y += j * j * v;
      m.mixed += i * j * v;
    }
  }
  if (m.var_x == 0 || m.var_y == 0)
    throw DegenerateVariance("walk has no horizontal or no vertical motion");
  m.r_squared = m.mixed * m.mixed / (m.var_x * m.var_y);
  double sgn = m.mixed > 0 ? 1.0 : (m.mixed < 0 ? -1.0 : 0.0);
  m.r = sgn * std::sqrt(m.r_squared.get_d());
  return m;
}

AngleTheta angle_theta(const StepWeights& w) {
  Moments m = moments(w);
  if (m.r_squared >= 1)
    throw DegenerateCorrelation("|correlation| >= 1, angle undefined");
  AngleTheta a;
  a.cos_theta = -m.r;
  a.theta = std::acos(a.cos_theta);
  a.cos2 = m.r_squared;
  a.cos_sign = m.mixed > 0 ? -1 : (m.mixed < 0 ? 1 : 0);
  if (!w.exact) {
    a.exact_class = CosClass::NumericOnly;
    return a;
  }
  Rat root;
  if (rational_sqrt(m.r_squared, root)) {
    a.exact_class = CosClass::RationalCos;
    a.cos_rational = a.cos_sign * root;
  } else {
    a.exact_class = CosClass::QuadraticCos;
  }
  return a;
}

DeltaDeterminant delta_determinant(const StepWeights& w) {
  DeltaDeterminant d;
  // rows indexed by i = 1, 0, -1; columns by j = 1, 0, -1
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) d.matrix[r][c] = w.at(1 - r, 1 - c);
  d.matrix[1][1] -= 1;
  const auto& m = d.matrix;
  d.value = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return d;
}

}  // namespace walkgroup
