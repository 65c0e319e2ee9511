#include "gnplate/resultants.hpp"

namespace gnplate {

namespace {

Eigen::ArrayXd arr(const Field& f) { return f.values().array(); }

Field make(const Grid& g, const Eigen::ArrayXd& a) { return Field(g, a.matrix()); }

}  // namespace

Strain strain(const State& state) {
  const Grid& g = state.grid();
  const Field v1 = state.field(Component::v1);
  const Field v2 = state.field(Component::v2);
  const Field w = state.field(Component::w);
  auto [v1_1, v1_2] = grad(v1);
  auto [v2_1, v2_2] = grad(v2);
  auto [w_1, w_2] = grad(w);
  return Strain{
      v1_1,
      make(g, 0.5 * (arr(v1_2) + arr(v2_1))),
      v2_2,
      v1 + w_1,
      v2 + w_2,
  };
}

Resultants resultants(const State& state, const MaterialParams& p) {
  const Grid& g = state.grid();
  const double I = p.I();
  const Strain e = strain(state);
  const auto tau = arr(state.field(Component::tau));
  const auto wp = arr(state.field(Component::wp));
  const auto theta = arr(state.field(Component::theta));
  const auto P = arr(state.field(Component::P));
  const Eigen::ArrayXd trace = arr(e.eps11) + arr(e.eps22);
  const Eigen::ArrayXd iso = p.lambda * trace - p.d1 * theta - p.d2 * P;

  // Potentials whose negative gradients are the in-plane fluxes.
  const Eigen::ArrayXd heat = p.k1 * tau + p.hbar1 * wp + p.k2 * theta + p.hbar2 * P;
  const Eigen::ArrayXd mass = p.h1 * wp + p.hbar1 * tau + p.hbar2 * theta + p.h2 * P;
  auto [heat_1, heat_2] = grad(make(g, heat));
  auto [mass_1, mass_2] = grad(make(g, mass));

  return Resultants{
      make(g, I * (iso + 2.0 * p.mu * arr(e.eps11))),
      make(g, I * 2.0 * p.mu * arr(e.eps12)),
      make(g, I * (iso + 2.0 * p.mu * arr(e.eps22))),
      make(g, p.mu * arr(e.gamma1)),
      make(g, p.mu * arr(e.gamma2)),
      make(g, I * (p.d1 * trace + p.c * theta + p.kappa * P)),
      make(g, -I * arr(heat_1)),
      make(g, -I * arr(heat_2)),
      make(g, -heat),
      make(g, I * (p.d2 * trace + p.kappa * theta + p.r * P)),
      make(g, -I * arr(mass_1)),
      make(g, -I * arr(mass_2)),
      make(g, -mass),
  };
}

Field edge_product(const Field& f, const Field& h) {
  const Grid& g = f.grid();
  Field out(g);
  const double ix = 1.0 / g.hx();
  const double iy = 1.0 / g.hy();
  // Edge between (i, j) and its +x neighbour, with ghosts at the ends.
  auto ex = [&](const Field& u, int i, int j) { return (u.at(i + 1, j) - u.at(i, j)) * ix; };
  auto ey = [&](const Field& u, int i, int j) { return (u.at(i, j + 1) - u.at(i, j)) * iy; };
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double wl = i == 0 ? 1.0 : 0.5;
      const double wr = i == g.nx() - 1 ? 1.0 : 0.5;
      const double wb = j == 0 ? 1.0 : 0.5;
      const double wt = j == g.ny() - 1 ? 1.0 : 0.5;
      out(i, j) = wl * ex(f, i - 1, j) * ex(h, i - 1, j) + wr * ex(f, i, j) * ex(h, i, j) +
                  wb * ey(f, i, j - 1) * ey(h, i, j - 1) + wt * ey(f, i, j) * ey(h, i, j);
    }
  }
  return out;
}

Field edge_square(const Field& f) { return edge_product(f, f); }

Field energy_density(const State& s, const MaterialParams& p) {
  const Grid& g = s.grid();
  const double I = p.I();
  const double h = p.half_thickness;
  const Field v1 = s.field(Component::v1);
  const Field v2 = s.field(Component::v2);
  const Field w = s.field(Component::w);
  const Field tau = s.field(Component::tau);
  const Field wp = s.field(Component::wp);
  auto [d1v1, d2v1] = grad(v1);
  auto [d1v2, d2v2] = grad(v2);
  auto [d1w, d2w] = grad(w);

  const Eigen::ArrayXd div = arr(d1v1) + arr(d2v2);
  const Eigen::ArrayXd bending =
      0.5 * I *
      (p.lambda * div.square() + p.mu * (arr(edge_square(v1)) + arr(edge_square(v2))) +
       p.mu * (arr(d1v1).square() + arr(d2v2).square() + 2.0 * arr(d2v1) * arr(d1v2)));
  const Eigen::ArrayXd shear =
      h * p.mu *
      (arr(v1).square() + arr(v2).square() + 2.0 * (arr(v1) * arr(d1w) + arr(v2) * arr(d2w)) +
       arr(edge_square(w)));
  const Eigen::ArrayXd conduction =
      0.5 * I *
          (p.k1 * arr(edge_square(tau)) + 2.0 * p.hbar1 * arr(edge_product(tau, wp)) +
           p.h1 * arr(edge_square(wp))) +
      h * (p.k1 * arr(tau).square() + 2.0 * p.hbar1 * arr(tau) * arr(wp) + p.h1 * arr(wp).square());

  const auto z1 = arr(s.field(Component::z1));
  const auto z2 = arr(s.field(Component::z2));
  const auto y = arr(s.field(Component::y));
  const auto theta = arr(s.field(Component::theta));
  const auto P = arr(s.field(Component::P));
  const Eigen::ArrayXd kinetic = 0.5 * p.rho * I * (z1.square() + z2.square()) + h * p.rho * y.square();
  const Eigen::ArrayXd capacity =
      0.5 * I * (p.c * theta.square() + 2.0 * p.kappa * theta * P + p.r * P.square());

  return make(g, kinetic + capacity + bending + shear + conduction);
}

Field dissipation_density(const State& s, const MaterialParams& p) {
  const Grid& g = s.grid();
  const Field theta = s.field(Component::theta);
  const Field P = s.field(Component::P);
  const Eigen::ArrayXd t = arr(theta);
  const Eigen::ArrayXd q = arr(P);
  return make(g, p.I() * (p.k2 * arr(edge_square(theta)) + 2.0 * p.hbar2 * arr(edge_product(theta, P)) +
                          p.h2 * arr(edge_square(P))) +
                     2.0 * p.half_thickness *
                         (p.k2 * t.square() + 2.0 * p.hbar2 * t * q + p.h2 * q.square()));
}

}  // namespace gnplate
