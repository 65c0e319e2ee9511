#pragma once

#include <string>
#include <vector>

#include "gnplate/dynamics.hpp"

namespace gnplate {

/// Backward-in-time system and its functionals. A_back is the generator with
/// the coupling and rate coefficients d1, d2, k2, h2, hbar2 negated.
struct BackwardMatrices {
  OperatorMatrices forward;
  SparseMatrix A_back;
  SparseMatrix E1_form;  ///< same as the forward energy form
  SparseMatrix E2_form;  ///< capacity and conduction terms with flipped sign
  SparseMatrix E3_form;  ///< symmetric matrix of the mixed functional
};

/// Throws AssemblyInconsistent unless A_back equals -S A_op S exactly, with S
/// the +1/-1 position/rate sign pattern.
BackwardMatrices assemble_backward(const MaterialParams& params, const Grid& grid);

struct Functionals {
  double E1 = 0.0;
  double E2 = 0.0;
  double E3 = 0.0;
};

Functionals functionals(const State& U, const BackwardMatrices& m);

struct BackwardReport {
  std::vector<double> times;
  std::vector<double> E1;
  std::vector<double> E2;
  std::vector<double> E3;
  std::vector<double> energy_norm;
};

void write_backward_csv(const std::string& path, const BackwardReport& report);

/// Integrates the backward system from U0 with zero sources.
struct BackwardRun {
  State final_state;
  BackwardReport report;
};
BackwardRun run_backward(const State& U0, const BackwardMatrices& m, double dt, double t_end);

struct UniquenessReport {
  double zero_data_max_norm = 0.0;
  double epsilon = 0.0;
  double initial_norm = 0.0;
  double final_norm = 0.0;
  /// Least-squares slope of log(norm) in time.
  double fitted_rate = 0.0;
  /// Rate from the energy inequality: sqrt-growth factor of the discrete step
  /// with lambda_max of D against E.
  double rate_bound = 0.0;
  bool zero_stays_zero = false;
  bool growth_bounded = false;
  [[nodiscard]] bool passed() const { return zero_stays_zero && growth_bounded; }
};

/// Zero data must stay exactly zero; tiny random data eps * dU must grow no
/// faster than eps * ||dU|| * exp(rate_bound * t).
UniquenessReport backward_uniqueness_check(const MaterialParams& params, const Grid& grid, double dt,
                                           double t_end, double epsilon = 1e-10, unsigned seed = 7u);

struct RoundTripReport {
  double relative_error = 0.0;
  EnergyReport forward;
  BackwardReport backward;
};

/// Forward run of U0 to t_end, then the backward system started from S U(t_end);
/// compares S of its end state with U0.
RoundTripReport forward_backward_roundtrip(const State& U0, const BackwardMatrices& m, double dt,
                                           double t_end);

struct LocalizationReport {
  bool applicable = false;
  bool all_positive = false;
  double min_E0 = 0.0;
  double slope = 0.0;       ///< fitted d(log E0)/dt over the last half
  double curvature = 0.0;   ///< fitted d^2(log E0)/dt^2 over the last half
  double relative_curvature = 0.0;
  double threshold = 1e-2;
  [[nodiscard]] bool passed() const {
    return applicable && all_positive && relative_curvature <= threshold;
  }
};

/// Checks that E0 stays positive and that log E0 has an affine tail.
LocalizationReport localization_impossibility_check(const EnergyReport& report,
                                                    double threshold = 1e-2);

}  // namespace gnplate
