#pragma once

#include "walkgroup/walk_model.hpp"

// Hand-entered walks used across the test files. Weights are written out
// explicitly so the tests do not lean on the catalog they help validate.
namespace testwalks {

using walkgroup::Rat;
using walkgroup::StepWeights;

inline StepWeights gessel() {
  StepWeights w;
  w.at(1, 0) = w.at(1, 1) = w.at(-1, 0) = w.at(-1, -1) = Rat(1, 4);
  return w;
}

inline StepWeights simple() {
  StepWeights w;
  w.at(1, 0) = w.at(-1, 0) = w.at(0, 1) = w.at(0, -1) = Rat(1, 4);
  return w;
}

inline StepWeights kreweras() {
  StepWeights w;
  w.at(-1, 0) = w.at(0, -1) = w.at(1, 1) = Rat(1, 3);
  return w;
}

// zero drift, cos(theta) = -1/3: the angle is not a rational multiple of pi
inline StepWeights r13() {
  StepWeights w;
  w.at(1, 0) = w.at(-1, 0) = w.at(0, 1) = w.at(0, -1) = Rat(1, 5);
  w.at(1, 1) = w.at(-1, -1) = Rat(1, 10);
  return w;
}

// drift (1/10, 1/10), genus 1 with a quartic discriminant
inline StepWeights g1ex() {
  StepWeights w;
  w.at(1, 0) = w.at(0, 1) = Rat(3, 10);
  w.at(-1, 0) = w.at(0, -1) = Rat(1, 5);
  return w;
}

// drift (1/10, -1/20), genus 1 with d4 = 0 (cubic discriminant, x4 at infinity)
inline StepWeights g1cub() {
  StepWeights w;
  w.at(1, -1) = Rat(7, 20);
  w.at(0, 1) = Rat(3, 10);
  w.at(-1, 0) = Rat(3, 20);
  w.at(0, -1) = Rat(1, 10);
  w.at(-1, 1) = Rat(1, 10);
  return w;
}

// uniform weight on the allowed steps of the four infinite drift patterns
inline StepWeights case_pattern(int which) {
  StepWeights w;
  auto fill = [&w](std::initializer_list<std::pair<int, int>> steps) {
    for (auto [i, j] : steps) w.at(i, j) = Rat(1, 5);
  };
  switch (which) {
    case 2: fill({{1, 0}, {1, 1}, {1, -1}, {0, -1}, {-1, -1}}); break;
    case 3: fill({{1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}); break;
    case 4: fill({{1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}); break;
    case 5: fill({{1, 1}, {1, 0}, {1, -1}, {0, 1}, {-1, 1}}); break;
    default: throw std::invalid_argument("case_pattern wants 2..5");
  }
  return w;
}

// singular: a, b, c share the factor x
inline StepWeights singular_ne() {
  StepWeights w;
  w.at(1, 0) = w.at(0, 1) = Rat(1, 2);
  return w;
}

// singular: the discriminant x^2 is a polynomial square
inline StepWeights singular_up() {
  StepWeights w;
  w.at(1, 1) = w.at(-1, 1) = Rat(1, 2);
  return w;
}

// |r| = 1: the tangent quadratic has a double real root
inline StepWeights diagonal() {
  StepWeights w;
  w.at(1, 1) = w.at(-1, -1) = Rat(1, 2);
  return w;
}

}  // namespace testwalks
