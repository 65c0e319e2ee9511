#include "gnplate/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gnplate/errors.hpp"

namespace gnplate {

namespace {
constexpr std::array<std::string_view, kNumComponents> kNames{
    "v1", "v2", "z1", "z2", "w", "y", "tau", "theta", "wp", "P"};
}

std::string_view component_name(Component c) { return kNames[static_cast<int>(c)]; }

std::optional<Component> component_from_name(std::string_view name) {
  for (int k = 0; k < kNumComponents; ++k) {
    if (kNames[k] == name) return static_cast<Component>(k);
  }
  return std::nullopt;
}

bool is_position(Component c) {
  switch (c) {
    case Component::v1:
    case Component::v2:
    case Component::w:
    case Component::tau:
    case Component::wp:
      return true;
    default:
      return false;
  }
}

State::State(const Grid& grid, double time)
    : grid_(grid), data_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kNumComponents) * grid.size())),
      time_(time) {}

State::State(const Grid& grid, Eigen::VectorXd data, double time)
    : grid_(grid), data_(std::move(data)), time_(time) {
  if (data_.size() != static_cast<Eigen::Index>(kNumComponents) * grid_.size()) {
    fail(ErrorCode::GridMismatch, "state vector length differs from 10 * grid size");
  }
}

Field State::field(Component c) const { return Field(grid_, segment(c)); }

void State::set_field(Component c, const Field& f) {
  if (!(f.grid() == grid_)) fail(ErrorCode::GridMismatch, "field grid differs from state grid");
  segment(c) = f.values();
}

double State::at(Component c, int i, int j) const {
  if (i < 0 || j < 0 || i >= grid_.nx() || j >= grid_.ny()) return 0.0;
  return data_[static_cast<Eigen::Index>(c) * grid_.size() + grid_.index(i, j)];
}

Eigen::VectorXd rate_sign_vector(const Grid& grid) {
  const Eigen::Index n = grid.size();
  Eigen::VectorXd s(kNumComponents * n);
  for (Component c : kAllComponents) {
    s.segment(static_cast<Eigen::Index>(c) * n, n).setConstant(is_position(c) ? 1.0 : -1.0);
  }
  return s;
}

std::string_view to_string(IcPreset p) {
  switch (p) {
    case IcPreset::zero:
      return "zero";
    case IcPreset::sine_mode:
      return "sine_mode";
    case IcPreset::gaussian_bump:
      return "gaussian_bump";
  }
  return "?";
}

std::optional<IcPreset> ic_preset_from_name(std::string_view name) {
  for (IcPreset p : {IcPreset::zero, IcPreset::sine_mode, IcPreset::gaussian_bump}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

State make_initial_state(const Grid& grid, const InitialCondition& ic) {
  State s(grid);
  if (!std::isfinite(ic.amplitude)) fail(ErrorCode::NonFinite, "initial amplitude");
  switch (ic.preset) {
    case IcPreset::zero:
      break;
    case IcPreset::sine_mode: {
      if (ic.mode_m < 1 || ic.mode_n < 1) fail(ErrorCode::InvalidArgument, "mode numbers must be >= 1");
      const double kx = ic.mode_m * std::numbers::pi / grid.Lx();
      const double ky = ic.mode_n * std::numbers::pi / grid.Ly();
      s.set_field(ic.target, Field::sample(grid, [&](double x, double y) {
                    return ic.amplitude * std::sin(kx * x) * std::sin(ky * y);
                  }));
      break;
    }
    case IcPreset::gaussian_bump: {
      if (!(ic.width > 0.0)) fail(ErrorCode::InvalidArgument, "bump width must be positive");
      const double R = ic.cutoff > 0.0 ? ic.cutoff : 3.0 * ic.width;
      s.set_field(ic.target, Field::sample(grid, [&](double x, double y) {
                    const double r2 = (x - ic.center_x) * (x - ic.center_x) +
                                      (y - ic.center_y) * (y - ic.center_y);
                    if (r2 >= R * R) return 0.0;
                    const double window = 1.0 - r2 / (R * R);
                    return ic.amplitude * std::exp(-0.5 * r2 / (ic.width * ic.width)) * window *
                           window * window;
                  }));
      break;
    }
  }
  return s;
}

}  // namespace gnplate
