#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "gnplate/grid.hpp"
#include "gnplate/material.hpp"
#include "gnplate/state.hpp"

namespace gnplate {

/// Semi-discrete system dU/dt = A_op U + F over the stacked state, with the
/// energy 0.5 U' E_form U and dissipation U' D_form U.
struct OperatorMatrices {
  MaterialParams params;
  Grid grid;
  SparseMatrix A_op;
  SparseMatrix E_form;
  SparseMatrix D_form;
};

/// Builds the generator only, without validating params. Used directly by the
/// backward module, which feeds in sign-flipped coefficients.
SparseMatrix assemble_generator(const MaterialParams& params, const Grid& grid,
                                const GridOperators& ops);
SparseMatrix assemble_energy_form(const MaterialParams& params, const Grid& grid,
                                  const GridOperators& ops);
SparseMatrix assemble_dissipation_form(const MaterialParams& params, const Grid& grid,
                                       const GridOperators& ops);

/// Largest |U' E A U + U' D U| / U' E U over `samples` random vectors.
double dissipation_identity_residual(const OperatorMatrices& m, int samples, unsigned seed);

/// Validates params, assembles all three matrices and checks the discrete
/// dissipation identity on 100 random vectors (AssemblyInconsistent above 1e-12).
OperatorMatrices assemble(const MaterialParams& params, const Grid& grid);

/// Time-dependent loads and supplies. Empty functions mean zero.
struct Sources {
  std::function<Field(double)> f1;
  std::function<Field(double)> f2;
  std::function<Field(double)> f;
  std::function<Field(double)> W;
  std::function<Field(double)> V;

  [[nodiscard]] bool empty() const { return !f1 && !f2 && !f && !W && !V; }
};

/// The forcing vector (0, f_a/(rho I), 0, f/rho, 0, (rW - kappa V)/(I delta),
/// 0, (cV - kappa W)/(I delta)) at time t.
Eigen::VectorXd source_vector(const Sources& sources, const MaterialParams& params,
                              const Grid& grid, double t);

double energy(const State& U, const OperatorMatrices& m);
double dissipation(const State& U, const OperatorMatrices& m);
/// sqrt(U' E U), the norm of the energy inner product.
double energy_norm(const Eigen::VectorXd& U, const OperatorMatrices& m);
/// Energy norm of the thermal and diffusive part (tau, theta, wp, P) alone.
double thermal_energy_norm(const Eigen::VectorXd& U, const OperatorMatrices& m);
/// Rate at which the sources feed energy: U' E F.
double source_power(const State& U, const Eigen::VectorXd& forcing, const OperatorMatrices& m);

/// Implicit midpoint stepper for dU/dt = G U + F. G is A_op unless another
/// generator (the backward one) is supplied. Factorizes once.
class MidpointStepper {
 public:
  MidpointStepper(const OperatorMatrices& m, double dt);
  MidpointStepper(const OperatorMatrices& m, const SparseMatrix& generator, double dt);
  ~MidpointStepper();
  MidpointStepper(MidpointStepper&&) noexcept;
  MidpointStepper& operator=(MidpointStepper&&) noexcept;

  [[nodiscard]] double dt() const { return dt_; }

  /// Advances U by dt with forcing evaluated at t + dt/2.
  State step(const State& U, const Sources& sources) const;
  /// Advances U by dt with an explicit forcing vector (may be empty).
  State step(const State& U, const Eigen::VectorXd& forcing) const;
  /// Relative residual of the last solve.
  [[nodiscard]] double last_residual() const { return last_residual_; }

 private:
  struct Impl;
  const OperatorMatrices* m_;
  double dt_;
  std::unique_ptr<Impl> impl_;
  mutable double last_residual_ = 0.0;
};

/// One implicit midpoint step (factorizes on every call; prefer MidpointStepper).
State step(const State& U, const OperatorMatrices& m, const Sources& sources, double dt);

/// Solves (Id - A_op) U = Ustar.
State resolvent_solve(const State& Ustar, const OperatorMatrices& m);

struct EnergyReport {
  std::vector<double> times;
  std::vector<double> E0;
  std::vector<double> D;
  std::vector<double> balance_residual;
  std::vector<double> src_power;

  [[nodiscard]] std::size_t size() const { return times.size(); }
};

void write_energy_csv(const std::string& path, const EnergyReport& report);

/// Called after every step with the states before and after it.
using StepObserver = std::function<void(const State& before, const State& after)>;

struct RunResult {
  State final_state;
  EnergyReport report;
};

/// Repeated midpoint steps from U0 to t_end. dt <= 0 or t_end == 0 returns U0
/// with a one-entry report.
RunResult run(const State& U0, const OperatorMatrices& m, const Sources& sources, double dt,
              double t_end, const StepObserver& observer = {});

struct ModeInfo {
  double eigenvalue = 0.0;
  double div_ratio = 0.0;
};

struct ModeCheckResult {
  bool applicable = false;
  std::vector<ModeInfo> modes;
  [[nodiscard]] double min_div_ratio() const;
};

/// Lowest n_modes of the mechanical stiffness of (v1, v2, w) against its mass,
/// with ||div v|| / ||(v, w)|| per mode. Not applicable when both combinations
/// r d1 - kappa d2 and c d2 - kappa d1 vanish.
ModeCheckResult overdetermined_mode_check(const MaterialParams& params, const Grid& grid,
                                          int n_modes);

}  // namespace gnplate
