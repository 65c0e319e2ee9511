#include "gnplate/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gnplate/csv.hpp"
#include "gnplate/errors.hpp"
#include "gnplate/resultants.hpp"

namespace gnplate {

Eigen::VectorXd cut_fluxes(const State& U, const MaterialParams& p) {
  const Grid& g = U.grid();
  const double I = p.I();
  const double h = p.half_thickness;
  const double hx = g.hx();
  const double hy = g.hy();
  using C = Component;
  auto at = [&](C c, int i, int j) { return U.at(c, i, j); };
  auto d1 = [&](C c, int i, int j) { return (at(c, i + 1, j) - at(c, i - 1, j)) / (2.0 * hx); };
  auto d2 = [&](C c, int i, int j) { return (at(c, i, j + 1) - at(c, i, j - 1)) / (2.0 * hy); };
  // Normal moments acting across the cut on z1 and z2.
  auto sigma1 = [&](int i, int j) { return I * p.mu * d1(C::v2, i, j); };
  auto sigma2 = [&](int i, int j) {
    return I * (p.lambda * (d1(C::v1, i, j) + d2(C::v2, i, j)) + p.mu * d2(C::v2, i, j));
  };

  Eigen::VectorXd flux = Eigen::VectorXd::Zero(g.ny());
  for (int k = 0; k + 1 < g.ny(); ++k) {
    const int lo = k;
    const int hi = k + 1;
    double sum = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
      auto jump = [&](C c) { return (at(c, i, hi) - at(c, i, lo)) / hy; };
      auto mean = [&](C c) { return 0.5 * (at(c, i, hi) + at(c, i, lo)); };
      auto cross = [&](double a_lo, double a_hi, C c) {
        return 0.5 * (a_lo * at(c, i, hi) + a_hi * at(c, i, lo));
      };
      double t = 0.0;
      t -= I * p.mu * (jump(C::v1) * mean(C::z1) + jump(C::v2) * mean(C::z2));
      t -= cross(sigma1(i, lo), sigma1(i, hi), C::z1);
      t -= cross(sigma2(i, lo), sigma2(i, hi), C::z2);
      t -= 2.0 * h * p.mu * jump(C::w) * mean(C::y);
      t -= 2.0 * h * p.mu * cross(at(C::v2, i, lo), at(C::v2, i, hi), C::y);
      t += I * p.d1 * cross(at(C::z2, i, lo), at(C::z2, i, hi), C::theta);
      t += I * p.d2 * cross(at(C::z2, i, lo), at(C::z2, i, hi), C::P);
      const double heat = p.k1 * jump(C::tau) + p.hbar1 * jump(C::wp) + p.k2 * jump(C::theta) +
                          p.hbar2 * jump(C::P);
      const double mass = p.hbar1 * jump(C::tau) + p.h1 * jump(C::wp) + p.hbar2 * jump(C::theta) +
                          p.h2 * jump(C::P);
      t -= I * (heat * mean(C::theta) + mass * mean(C::P));
      sum += t;
    }
    flux[k] = hx * sum;
  }
  return flux;
}

double flux_J(const std::vector<State>& history, const MaterialParams& p, int row, TimeRule rule) {
  if (history.empty()) fail(ErrorCode::EmptyHistory, "flux_J needs at least one state");
  const Grid& g = history.front().grid();
  if (row < 0 || row >= g.ny()) fail(ErrorCode::IndexOutOfRange, "row " + std::to_string(row));
  double J = 0.0;
  for (std::size_t n = 0; n + 1 < history.size(); ++n) {
    const State& a = history[n];
    const State& b = history[n + 1];
    const double dt = b.time() - a.time();
    if (rule == TimeRule::midpoint) {
      const State mid(g, 0.5 * (a.vector() + b.vector()), a.time() + 0.5 * dt);
      J += dt * cut_fluxes(mid, p)[row];
    } else {
      J += 0.5 * dt * (cut_fluxes(a, p)[row] + cut_fluxes(b, p)[row]);
    }
  }
  return J;
}

Eigen::VectorXd measure_E(const Eigen::VectorXd& J, double hy) {
  Eigen::VectorXd E(J.size());
  double tail = 0.0;
  for (Eigen::Index j = J.size() - 1; j >= 0; --j) {
    tail += J[j];
    E[j] = hy * tail;
  }
  return E;
}

Eigen::VectorXd second_difference(const Eigen::VectorXd& E, double hy) {
  const Eigen::Index n = E.size();
  Eigen::VectorXd out = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index j = 1; j + 1 < n; ++j) out[j] = (E[j - 1] - 2.0 * E[j] + E[j + 1]) / (hy * hy);
  return out;
}

Eigen::VectorXd row_sums(const Field& f) {
  const Grid& g = f.grid();
  Eigen::VectorXd out(g.ny());
  for (int j = 0; j < g.ny(); ++j) out[j] = cross_section_sum(f, j);
  return out;
}

double DecayProfile::max_E_at_origin(double t) const {
  double best = 0.0;
  for (const auto& s : samples) {
    if (s.t <= t) best = std::max(best, s.E[support_row]);
  }
  return best;
}

int support_end_row(const State& U) {
  const Grid& g = U.grid();
  int last = -1;
  for (Component c : kAllComponents) {
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        if (U.at(c, i, j) != 0.0) last = std::max(last, j);
      }
    }
  }
  return last + 1;
}

namespace {

// hx hy sum over rows above each cut, the volume counterpart of a flux.
Eigen::VectorXd tail_volume(const Eigen::VectorXd& rows, double hy) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rows.size());
  double tail = 0.0;
  for (Eigen::Index k = rows.size() - 1; k >= 0; --k) {
    out[k] = hy * tail;
    tail += rows[k];
  }
  return out;
}

Eigen::VectorXd lemma_rows(const State& U, const MaterialParams& p) {
  const Eigen::ArrayXd th = U.segment(Component::theta).array();
  const Eigen::ArrayXd P = U.segment(Component::P).array();
  const Eigen::VectorXd dens = (p.I() * (p.k2 * th.square() + p.h2 * P.square())).matrix();
  return row_sums(Field(U.grid(), dens));
}

}  // namespace

DecayAccumulator::DecayAccumulator(const MaterialParams& params, const State& U0)
    : params_(params),
      J_(Eigen::VectorXd::Zero(U0.grid().ny())),
      dissipated_(Eigen::VectorXd::Zero(U0.grid().ny())),
      initial_rows_(row_sums(energy_density(U0, params))) {
  profile_.hy = U0.grid().hy();
  profile_.ny = U0.grid().ny();
  profile_.support_row = support_end_row(U0);
  if (profile_.support_row >= profile_.ny - 1) {
    fail(ErrorCode::DomainEmpty, "initial data reaches the far edge of the strip");
  }
}

void DecayAccumulator::observe(const State& before, const State& after) {
  const double dt = after.time() - before.time();
  const State mid(before.grid(), 0.5 * (before.vector() + after.vector()), before.time() + 0.5 * dt);
  J_ += dt * cut_fluxes(mid, params_);
  dissipated_ += dt * row_sums(dissipation_density(mid, params_));
}

void DecayAccumulator::record(const State& current) {
  DecaySample s;
  s.t = current.time();
  s.J = J_;
  s.content = row_sums(energy_density(current, params_)) - initial_rows_ + dissipated_;
  s.J_volume = tail_volume(s.content, profile_.hy);
  s.E = measure_E(s.J, profile_.hy);
  s.E_zz = second_difference(s.E, profile_.hy);
  s.lemma_lhs = lemma_rows(current, params_);
  profile_.samples.push_back(std::move(s));
}

LemmaReport check_lemma_margin(const DecayProfile& profile, const MaterialParams& params) {
  const double z = zeta(params);
  LemmaReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const int first = std::max(1, profile.support_row);
  for (const auto& s : profile.samples) {
    for (int j = first; j + 1 < profile.ny; ++j) {
      rep.scale = std::max({rep.scale, std::abs(s.lemma_lhs[j]), std::abs(z * s.E_zz[j])});
      rep.min_margin = std::min(rep.min_margin, z * s.E_zz[j] - s.lemma_lhs[j]);
      ++rep.points;
    }
  }
  if (rep.points == 0) rep.min_margin = 0.0;
  rep.passed = rep.min_margin >= -1e-10 * rep.scale;
  return rep;
}

double decay_bound(double E_max, double z, double t, double xi, double zeta) {
  const double denom = z * z - xi * xi * t * t;
  return 2.0 * E_max * z * std::sqrt(zeta * t / std::numbers::pi) / denom *
         std::exp(-xi * xi * t / (4.0 * zeta)) * std::exp(xi * z / (2.0 * zeta) - z * z / (4.0 * zeta * t));
}

EnvelopeReport envelope_check(const DecayProfile& profile, double xi, double zeta, double t_min) {
  EnvelopeReport rep;
  for (const auto& s : profile.samples) {
    if (!(s.t > 0.0) || s.t < t_min) continue;
    const double Emax = profile.max_E_at_origin(s.t);
    for (int j = profile.support_row; j < profile.ny; ++j) {
      const double z = profile.z(j);
      if (!(z > xi * s.t)) continue;
      const double bound = decay_bound(Emax, z, s.t, xi, zeta);
      const double E = s.E[j];
      ++rep.points;
      double ratio = 0.0;
      if (bound > 0.0) {
        ratio = E / bound;
      } else if (E > 0.0) {
        ratio = std::numeric_limits<double>::infinity();
      }
      rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    }
  }
  if (rep.points == 0) fail(ErrorCode::DomainEmpty, "no sampled point satisfies z > xi t");
  rep.passed = rep.worst_ratio <= 1.0;
  return rep;
}

void write_decay_csv(const std::string& path, const DecayProfile& profile, double xi, double zeta) {
  CsvWriter csv(path, {"t", "z", "J", "E", "E_zz", "lemma_lhs", "lemma_margin", "bound", "ratio"});
  for (const auto& s : profile.samples) {
    const double Emax = profile.max_E_at_origin(s.t);
    for (int j = profile.support_row; j < profile.ny; ++j) {
      const double z = profile.z(j);
      csv.cell(s.t).cell(z).cell(s.J[j]).cell(s.E[j]);
      if (std::isfinite(s.E_zz[j])) {
        csv.cell(s.E_zz[j]).cell(s.lemma_lhs[j]).cell(zeta * s.E_zz[j] - s.lemma_lhs[j]);
      } else {
        csv.empty().cell(s.lemma_lhs[j]).empty();
      }
      if (s.t > 0.0 && z > xi * s.t) {
        const double bound = decay_bound(Emax, z, s.t, xi, zeta);
        csv.cell(bound).cell(bound > 0.0 ? s.E[j] / bound : 0.0);
      } else {
        csv.empty().empty();
      }
      csv.end_row();
    }
  }
}

}  // namespace gnplate
