#pragma once

#include <cmath>
#include <random>

#include "gnplate/grid.hpp"
#include "gnplate/material.hpp"
#include "gnplate/state.hpp"

namespace gnplate::testing {

inline MaterialParams mat_a() {
  MaterialParams p;
  p.lambda = 1.0;
  p.mu = 1.0;
  p.d1 = 0.1;
  p.d2 = 0.1;
  p.c = 1.0;
  p.kappa = 0.2;
  p.r = 1.0;
  p.k1 = 1.0;
  p.h1 = 1.0;
  p.hbar1 = 0.2;
  p.k2 = 0.5;
  p.h2 = 0.5;
  p.hbar2 = 0.1;
  p.rho = 1.0;
  p.T0 = 1.0;
  p.half_thickness = 0.5;
  p.model_type = ModelType::TypeIII;
  return p;
}

/// MAT-A with the rate coefficients removed.
inline MaterialParams mat_a_type2() {
  MaterialParams p = mat_a();
  p.k2 = p.h2 = p.hbar2 = 0.0;
  p.model_type = ModelType::TypeII;
  return p;
}

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  /// Admissible parameters: every 2x2 block positive definite with a margin.
  MaterialParams material(ModelType type) {
    MaterialParams p;
    p.lambda = uniform(0.0, 3.0);
    p.mu = uniform(0.2, 3.0);
    p.d1 = uniform(-0.5, 0.5);
    p.d2 = uniform(-0.5, 0.5);
    p.c = uniform(0.5, 2.0);
    p.r = uniform(0.5, 2.0);
    p.kappa = uniform(-0.8, 0.8) * std::sqrt(p.c * p.r);
    p.k1 = uniform(0.5, 2.0);
    p.h1 = uniform(0.5, 2.0);
    p.hbar1 = uniform(-0.8, 0.8) * std::sqrt(p.k1 * p.h1);
    if (type == ModelType::TypeIII) {
      p.k2 = uniform(0.1, 1.0);
      p.h2 = uniform(0.1, 1.0);
      p.hbar2 = uniform(-0.8, 0.8) * std::sqrt(p.k2 * p.h2);
    }
    p.rho = uniform(0.5, 2.0);
    p.T0 = 1.0;
    p.half_thickness = uniform(0.2, 1.0);
    p.model_type = type;
    return p;
  }

  Grid grid(int max_n = 9) {
    return Grid(uniform(0.5, 2.0), uniform(0.5, 2.0), integer(3, max_n), integer(3, max_n));
  }

  Field field(const Grid& g) {
    Field f(g);
    for (Eigen::Index k = 0; k < f.values().size(); ++k) f.values()[k] = normal();
    return f;
  }

  State state(const Grid& g) {
    State s(g);
    for (Eigen::Index k = 0; k < s.vector().size(); ++k) s.vector()[k] = normal();
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gnplate::testing
