#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "gnplate/dynamics.hpp"
#include "gnplate/resultants.hpp"

namespace gnplate {
namespace {

using testing::Gen;
using testing::mat_a;
using testing::mat_a_type2;

bool fully_interior(const Grid& g, int i, int j) { return i > 0 && j > 0 && i + 1 < g.nx() && j + 1 < g.ny(); }

State uniform(const Grid& g, Component c, double value) {
  State s(g);
  s.set_field(c, Field::sample(g, [=](double, double) { return value; }));
  return s;
}

TEST(Strain, ZeroStateGivesZero) {
  const Grid g(1.0, 1.0, 5, 5);
  const Strain e = strain(State(g));
  for (const Field* f : {&e.eps11, &e.eps12, &e.eps22, &e.gamma1, &e.gamma2}) {
    EXPECT_EQ(f->values().norm(), 0.0);
  }
}

TEST(Strain, LinearRotation) {
  const Grid g(1.0, 1.0, 8, 8);
  State s(g);
  s.set_field(Component::v1, Field::sample(g, [](double x, double) { return x; }));
  const Strain e = strain(s);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!fully_interior(g, i, j)) continue;
      EXPECT_NEAR(e.eps11(i, j), 1.0, 1e-13);
      EXPECT_NEAR(e.eps12(i, j), 0.0, 1e-13);
      EXPECT_EQ(e.eps22(i, j), 0.0);
      EXPECT_DOUBLE_EQ(e.gamma1(i, j), g.x(i));
    }
  }
}

TEST(Strain, KirchhoffLimitCancelsShear) {
  // w quadratic, v1 = -w_1 computed with the same central difference.
  const Grid g(1.0, 1.0, 10, 10);
  State s(g);
  const Field w = Field::sample(g, [](double x, double y) { return x * x + 0.5 * x * y; });
  s.set_field(Component::w, w);
  s.set_field(Component::v1, Field::sample(g, [](double x, double y) { return -(2.0 * x + 0.5 * y); }));
  const Strain e = strain(s);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (fully_interior(g, i, j)) EXPECT_NEAR(e.gamma1(i, j), 0.0, 1e-12);
    }
  }
}

TEST(Resultants, UniformTemperatureMatA) {
  const Grid g(1.0, 1.0, 6, 6);
  const Resultants r = resultants(uniform(g, Component::theta, 1.0), mat_a());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      EXPECT_NEAR(r.M11(i, j), -0.1 / 12.0, 1e-16);
      EXPECT_NEAR(r.M22(i, j), -0.1 / 12.0, 1e-16);
      EXPECT_EQ(r.M12(i, j), 0.0);
      EXPECT_NEAR(r.rho_sigma(i, j), 1.0 / 12.0, 1e-16);
      EXPECT_NEAR(r.chi(i, j), 0.2 / 12.0, 1e-16);
      EXPECT_DOUBLE_EQ(r.R(i, j), -0.5);
      EXPECT_DOUBLE_EQ(r.Mdiff(i, j), -0.1);
    }
  }
}

TEST(Resultants, ZeroStateGivesZero) {
  const Grid g(1.0, 1.0, 5, 5);
  const Resultants r = resultants(State(g), mat_a());
  for (const Field* f : {&r.M11, &r.M12, &r.M22, &r.N1, &r.N2, &r.rho_sigma, &r.Psi1, &r.Psi2, &r.R, &r.chi,
                         &r.Omega1, &r.Omega2, &r.Mdiff}) {
    EXPECT_EQ(f->values().norm(), 0.0);
  }
}

TEST(Resultants, TypeIIUniformThermalDisplacement) {
  const Grid g(1.0, 1.0, 7, 7);
  const MaterialParams p = mat_a_type2();
  const Resultants r = resultants(uniform(g, Component::tau, 1.0), p);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      EXPECT_DOUBLE_EQ(r.R(i, j), -p.k1);
      if (fully_interior(g, i, j)) {
        EXPECT_EQ(r.Psi1(i, j), 0.0);
        EXPECT_EQ(r.Psi2(i, j), 0.0);
      }
    }
  }
}

TEST(ResultantProperties, LinearInState) {
  Gen gen(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = gen.grid();
    const MaterialParams p = gen.material(ModelType::TypeIII);
    const State a = gen.state(g), b = gen.state(g);
    const double s = gen.normal(), t = gen.normal();
    const State combo(g, s * a.vector() + t * b.vector());
    const Resultants ra = resultants(a, p), rb = resultants(b, p), rc = resultants(combo, p);
    auto check = [&](const Field& fa, const Field& fb, const Field& fc) {
      const Eigen::VectorXd expected = s * fa.values() + t * fb.values();
      EXPECT_LT((fc.values() - expected).norm(), 1e-11 * (1.0 + expected.norm()));
    };
    check(ra.M11, rb.M11, rc.M11);
    check(ra.M12, rb.M12, rc.M12);
    check(ra.N2, rb.N2, rc.N2);
    check(ra.Psi2, rb.Psi2, rc.Psi2);
    check(ra.Omega1, rb.Omega1, rc.Omega1);
    check(ra.chi, rb.chi, rc.chi);
  }
}

TEST(ResultantProperties, TransverseFluxesFollowConductivityBlocks) {
  Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = gen.grid();
    const MaterialParams p = gen.material(ModelType::TypeIII);
    const State s = gen.state(g);
    const Resultants r = resultants(s, p);
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const double tau = s.at(Component::tau, i, j), wp = s.at(Component::wp, i, j);
        const double th = s.at(Component::theta, i, j), P = s.at(Component::P, i, j);
        EXPECT_NEAR(-r.R(i, j), p.k1 * tau + p.hbar1 * wp + p.k2 * th + p.hbar2 * P, 1e-13);
        EXPECT_NEAR(-r.Mdiff(i, j), p.hbar1 * tau + p.h1 * wp + p.hbar2 * th + p.h2 * P, 1e-13);
      }
    }
  }
}

TEST(ResultantProperties, ShearMomentFromSymmetricStrain) {
  Gen gen(12);
  const Grid g = gen.grid();
  const MaterialParams p = gen.material(ModelType::TypeIII);
  const State s = gen.state(g);
  const auto [v1x, v1y] = grad(s.field(Component::v1));
  const auto [v2x, v2y] = grad(s.field(Component::v2));
  const Resultants r = resultants(s, p);
  const Field swapped = (p.I() * p.mu) * (v2x + v1y);
  EXPECT_LT((r.M12.values() - swapped.values()).norm(), 1e-12 * (1.0 + swapped.values().norm()));
}

TEST(EdgeSquare, SumsToLaplacianQuadraticForm) {
  Gen gen(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Grid g = gen.grid();
    const Field f = gen.field(g), h = gen.field(g);
    EXPECT_NEAR(inner(edge_square(f), Field::sample(g, [](double, double) { return 1.0; })),
                -inner(laplacian(f), f), 1e-10 * (1.0 + std::abs(inner(laplacian(f), f))));
    EXPECT_NEAR(edge_product(f, h).values().sum(), edge_product(h, f).values().sum(), 1e-9);
  }
}

TEST(Densities, SumToQuadraticForms) {
  Gen gen(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Grid g = gen.grid();
    const MaterialParams p = gen.material(trial % 2 ? ModelType::TypeII : ModelType::TypeIII);
    const OperatorMatrices m = assemble(p, g);
    const State s = gen.state(g);
    const double e = energy(s, m);
    const double d = dissipation(s, m);
    EXPECT_NEAR(g.cell_area() * energy_density(s, p).values().sum(), e, 1e-12 * e);
    EXPECT_NEAR(g.cell_area() * dissipation_density(s, p).values().sum(), d, 1e-12 * (1.0 + d));
  }
}

}  // namespace
}  // namespace gnplate
