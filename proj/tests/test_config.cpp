#include <string>

#include <gtest/gtest.h>

#include "gnplate/config.hpp"
#include "gnplate/errors.hpp"

namespace gnplate {
namespace {

const std::string kMaterial = R"([material]
lambda = 1
mu = 1
d1 = 0.1
d2 = 0.1
c = 1
kappa = 0.2
r = 1
k1 = 1
h1 = 1
hbar1 = 0.2
k2 = 0.5
h2 = 0.5
hbar2 = 0.1
rho = 1
h = 0.5
model_type = TypeIII
)";

const std::string kGrid = R"([grid]
Lx = 1
Ly = 2
nx = 8
ny = 16
)";

struct Caught {
  ErrorCode code;
  std::string message;
};

Caught catch_error(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  ADD_FAILURE() << "config accepted";
  return {ErrorCode::InvalidArgument, ""};
}

TEST(Config, MinimalGetsDefaults) {
  const Config c = parse_config(kMaterial + kGrid);
  EXPECT_EQ(c.material.model_type, ModelType::TypeIII);
  EXPECT_DOUBLE_EQ(c.material.half_thickness, 0.5);
  EXPECT_EQ(c.material.T0, 0.0);
  EXPECT_EQ(c.grid.nx, 8);
  EXPECT_DOUBLE_EQ(c.grid.Ly, 2.0);
  EXPECT_DOUBLE_EQ(c.time.dt, 1e-2);
  EXPECT_DOUBLE_EQ(c.time.t_end, 1.0);
  EXPECT_EQ(c.time.snapshot_every, 1);
  EXPECT_FALSE(c.experiment.kind.has_value());
  EXPECT_EQ(c.ic.preset, IcPreset::zero);
  EXPECT_EQ(c.output.dir, "out");
  EXPECT_FALSE(c.output.write_snapshots);
}

TEST(Config, AllSections) {
  const std::string text = kMaterial + kGrid + R"(
# comment line
[time]
dt = 0.005
t_end = 0.5
snapshot_every = 10

[experiment]
name = spatial_decay
t_min = 0.1

[ic]
preset = gaussian_bump
target_field = theta
amplitude = 2
center = 0.25, 0.75
width = 0.05
cutoff = 0.2
mode_numbers = 2, 3

[output]
dir = results/x
write_snapshots = true
)";
  const Config c = parse_config(text);
  EXPECT_DOUBLE_EQ(c.time.dt, 0.005);
  EXPECT_EQ(c.time.snapshot_every, 10);
  EXPECT_EQ(c.experiment.kind, ExperimentKind::spatial_decay);
  EXPECT_DOUBLE_EQ(c.experiment.t_min, 0.1);
  EXPECT_EQ(c.ic.preset, IcPreset::gaussian_bump);
  EXPECT_EQ(c.ic.target, Component::theta);
  EXPECT_DOUBLE_EQ(c.ic.center_x, 0.25);
  EXPECT_DOUBLE_EQ(c.ic.center_y, 0.75);
  EXPECT_DOUBLE_EQ(c.ic.cutoff, 0.2);
  EXPECT_EQ(c.ic.mode_m, 2);
  EXPECT_EQ(c.ic.mode_n, 3);
  EXPECT_EQ(c.output.dir, "results/x");
  EXPECT_TRUE(c.output.write_snapshots);
}

TEST(Config, DuplicateKeyNamesKey) {
  const Caught e = catch_error(kMaterial + "mu = 2\n" + kGrid);
  EXPECT_EQ(e.code, ErrorCode::ParseError);
  EXPECT_NE(e.message.find("mu"), std::string::npos);
  EXPECT_NE(e.message.find("line 18"), std::string::npos);
}

TEST(Config, TypeIIWithRateCoefficientFails) {
  std::string text = kMaterial + kGrid;
  text.replace(text.find("TypeIII"), 7, "TypeII");
  const Caught e = catch_error(text);
  EXPECT_EQ(e.code, ErrorCode::ValidationFailed);
  EXPECT_NE(e.message.find("type2_rates_zero"), std::string::npos);
  EXPECT_NO_THROW((void)parse_config_unvalidated(text));
}

TEST(Config, Errors) {
  EXPECT_EQ(catch_error(kMaterial + kGrid + "[grid2]\n").code, ErrorCode::UnknownKey);
  EXPECT_EQ(catch_error(kMaterial + kGrid + "[time]\nsteps = 3\n").code, ErrorCode::UnknownKey);
  EXPECT_EQ(catch_error(kMaterial).code, ErrorCode::MissingRequired);
  std::string no_mu = kMaterial + kGrid;
  no_mu.erase(no_mu.find("mu = 1\n"), 7);
  const Caught m = catch_error(no_mu);
  EXPECT_EQ(m.code, ErrorCode::MissingRequired);
  EXPECT_NE(m.message.find("mu"), std::string::npos);
  EXPECT_EQ(catch_error(kMaterial + kGrid + "[time]\ndt = fast\n").code, ErrorCode::ParseError);
  EXPECT_EQ(catch_error(kMaterial + kGrid + "[time]\ndt = -1\n").code, ErrorCode::InvalidArgument);
  EXPECT_EQ(catch_error(kMaterial + kGrid + "[experiment]\nname = nope\n").code, ErrorCode::ParseError);
  EXPECT_EQ(catch_error("lambda = 1\n" + kMaterial + kGrid).code, ErrorCode::ParseError);
  EXPECT_EQ(catch_error(kMaterial + kGrid + kGrid).code, ErrorCode::ParseError);
}

TEST(Config, ExperimentNamesRoundTrip) {
  for (ExperimentKind k : {ExperimentKind::type2_conservation, ExperimentKind::type3_decay,
                           ExperimentKind::spatial_decay, ExperimentKind::backward_uniqueness,
                           ExperimentKind::forward_backward_roundtrip, ExperimentKind::mms_convergence,
                           ExperimentKind::resolvent_check}) {
    EXPECT_EQ(experiment_from_name(to_string(k)), k);
  }
  EXPECT_FALSE(experiment_from_name("type4").has_value());
}

TEST(Config, MissingFile) {
  try {
    (void)load_config("/nonexistent/gnplate.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

}  // namespace
}  // namespace gnplate
