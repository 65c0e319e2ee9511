#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gnplate/material.hpp"
#include "gnplate/state.hpp"

namespace gnplate {

/// Energy rate through each horizontal cut, from the cross-section resultants
/// and the rates. Entry k is the flux from rows <= k into rows > k; the last
/// entry (above the top row) is zero. With this density convention the rate
/// of change of the energy above the cut plus its dissipation equals the
/// entry exactly.
Eigen::VectorXd cut_fluxes(const State& U, const MaterialParams& params);

enum class TimeRule {
  /// Flux at the average of consecutive states; exact for the midpoint scheme.
  midpoint,
  trapezoid,
};

/// Flux-time measure J at cut `row` from a uniformly sampled history.
/// Throws EmptyHistory for an empty history.
double flux_J(const std::vector<State>& history, const MaterialParams& params, int row,
              TimeRule rule = TimeRule::midpoint);

/// Tail sum E_j = hy * sum_{k >= j} J_k, the far edge counting as infinity.
Eigen::VectorXd measure_E(const Eigen::VectorXd& J, double hy);

/// Central second differences; the two end entries are NaN.
Eigen::VectorXd second_difference(const Eigen::VectorXd& E, double hy);

/// Row sums hx * sum_i f(i, j) for every row j.
Eigen::VectorXd row_sums(const Field& f);

struct DecaySample {
  double t = 0.0;
  Eigen::VectorXd J;          ///< flux-time form
  Eigen::VectorXd J_volume;   ///< energy-volume form
  Eigen::VectorXd E;
  Eigen::VectorXd E_zz;
  Eigen::VectorXd content;    ///< row content: energy change plus dissipated energy
  Eigen::VectorXd lemma_lhs;  ///< hx * sum_i I (k2 theta^2 + h2 P^2)
};

struct DecayProfile {
  double hy = 0.0;
  /// First row above the support of the initial data; z = 0 there.
  int support_row = 0;
  int ny = 0;
  std::vector<DecaySample> samples;

  [[nodiscard]] double z(int row) const { return (row - support_row) * hy; }
  /// max over samples with t' <= t of E at z = 0.
  [[nodiscard]] double max_E_at_origin(double t) const;
};

/// First row with all-zero data above every nonzero row of U.
int support_end_row(const State& U);

/// Streams J, E and the volume terms through a run, so the full history never
/// has to be stored. Feed it every step through observe().
class DecayAccumulator {
 public:
  DecayAccumulator(const MaterialParams& params, const State& U0);

  void observe(const State& before, const State& after);
  /// Snapshot of all profiles at the time of `current`, which must be the
  /// latest state passed to observe() (or U0).
  void record(const State& current);

  [[nodiscard]] const DecayProfile& profile() const { return profile_; }

 private:
  MaterialParams params_;
  Eigen::VectorXd J_;
  Eigen::VectorXd dissipated_;
  Eigen::VectorXd initial_rows_;
  DecayProfile profile_;
};

struct LemmaReport {
  double min_margin = 0.0;
  double scale = 0.0;
  int points = 0;
  bool passed = true;
};

/// margin = zeta * E_zz - lemma_lhs at every sample and every row with z >= 0
/// where E_zz is defined. Throws TypeMismatch for type II.
LemmaReport check_lemma_margin(const DecayProfile& profile, const MaterialParams& params);

/// 2 Emax z sqrt(zeta t / pi) / (z^2 - xi^2 t^2) exp(-xi^2 t / (4 zeta))
/// exp(xi z / (2 zeta) - z^2 / (4 zeta t)), valid for z > xi t, t > 0.
double decay_bound(double E_max, double z, double t, double xi, double zeta);

struct EnvelopeReport {
  int points = 0;
  double worst_ratio = 0.0;
  bool passed = true;
};

/// Checks E(z, t) <= bound(z, t) at every sampled point with z > xi t and
/// t >= t_min. Throws DomainEmpty if no point qualifies.
EnvelopeReport envelope_check(const DecayProfile& profile, double xi, double zeta,
                              double t_min = 0.0);

/// decay.csv rows for z >= 0; bound and ratio are empty where z <= xi t.
void write_decay_csv(const std::string& path, const DecayProfile& profile, double xi, double zeta);

}  // namespace gnplate
