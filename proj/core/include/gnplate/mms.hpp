#pragma once

#include <vector>

#include "gnplate/dynamics.hpp"

namespace gnplate {

/// Closed-form smooth solution vanishing on the boundary of [0, Lx] x [0, Ly],
/// and the loads that make it satisfy the continuous plate equations.
class ManufacturedSolution {
 public:
  ManufacturedSolution(const MaterialParams& params, double Lx, double Ly, double amplitude = 1.0);

  [[nodiscard]] State exact(const Grid& grid, double t) const;
  [[nodiscard]] Sources sources(const Grid& grid) const;

 private:
  MaterialParams p_;
  double Lx_;
  double Ly_;
  double amp_;
};

struct MmsOptions {
  std::vector<int> grid_sizes{16, 32, 64};
  double space_dt = 2.5e-3;
  double space_t_end = 0.25;
  int time_grid = 16;
  std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  double time_t_end = 1.0;
  double Lx = 1.0;
  double Ly = 1.0;
  /// Zero gives the trivial manufactured solution.
  double amplitude = 1.0;
};

struct MmsResult {
  std::vector<double> h;
  std::vector<double> space_errors;
  std::vector<double> dts;
  /// Differences between solutions at successive dt.
  std::vector<double> time_differences;
  double space_order = 0.0;
  double time_order = 0.0;
};

/// Observed orders: spatial from the closed-form error across grid sizes at
/// small dt, temporal from successive differences under dt halving. Orders
/// are those of the finest pair.
MmsResult mms_verify(const MaterialParams& params, const MmsOptions& options = {});

}  // namespace gnplate
