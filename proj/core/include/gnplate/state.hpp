#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "gnplate/grid.hpp"

namespace gnplate {

/// Field order of the stacked state vector. Positions and their rates
/// alternate: (v1, v2) with (z1, z2), w with y, tau with theta, wp with P.
enum class Component : int { v1, v2, z1, z2, w, y, tau, theta, wp, P };

inline constexpr int kNumComponents = 10;

inline constexpr std::array<Component, kNumComponents> kAllComponents{
    Component::v1,  Component::v2,    Component::z1, Component::z2, Component::w,
    Component::y,   Component::tau,   Component::theta, Component::wp, Component::P};

std::string_view component_name(Component c);
std::optional<Component> component_from_name(std::string_view name);
/// True for v1, v2, w, tau, wp.
bool is_position(Component c);

/// All ten fields on one grid, stored as one contiguous vector (field-major).
class State {
 public:
  explicit State(const Grid& grid, double time = 0.0);
  State(const Grid& grid, Eigen::VectorXd data, double time = 0.0);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  [[nodiscard]] const Eigen::VectorXd& vector() const { return data_; }
  Eigen::VectorXd& vector() { return data_; }

  [[nodiscard]] Field field(Component c) const;
  void set_field(Component c, const Field& f);

  [[nodiscard]] auto segment(Component c) const {
    return data_.segment(static_cast<Eigen::Index>(c) * grid_.size(), grid_.size());
  }
  auto segment(Component c) {
    return data_.segment(static_cast<Eigen::Index>(c) * grid_.size(), grid_.size());
  }

  /// Value of component c at node (i, j), zero outside the interior.
  [[nodiscard]] double at(Component c, int i, int j) const;

  [[nodiscard]] bool all_finite() const { return data_.allFinite(); }

 private:
  Grid grid_;
  Eigen::VectorXd data_;
  double time_;
};

/// Sign pattern +1 on positions, -1 on rates, as a vector over the stacked layout.
Eigen::VectorXd rate_sign_vector(const Grid& grid);

enum class IcPreset { zero, sine_mode, gaussian_bump };

std::string_view to_string(IcPreset p);
std::optional<IcPreset> ic_preset_from_name(std::string_view name);

struct InitialCondition {
  IcPreset preset = IcPreset::zero;
  Component target = Component::w;
  double amplitude = 1.0;
  double center_x = 0.5;
  double center_y = 0.5;
  double width = 0.1;
  /// Support radius of the bump; non-positive means 3 * width.
  double cutoff = 0.0;
  int mode_m = 1;
  int mode_n = 1;
};

/// Builds the initial state. The Gaussian bump is multiplied by the window
/// (1 - (r/R)^2)^3 so that it has compact support of radius R.
State make_initial_state(const Grid& grid, const InitialCondition& ic);

}  // namespace gnplate
