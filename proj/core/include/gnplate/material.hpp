#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gnplate {

enum class ModelType { TypeII, TypeIII };

std::string to_string(ModelType type);

/// Constitutive constants of the isotropic thermoelastic-diffusion plate.
///
/// The rate coefficients k2, h2, hbar2 carry the dissipative (type III)
/// behaviour and must be exactly zero for the type II model. T0 is stored for
/// completeness; the bending dynamics never reads it.
struct MaterialParams {
  double lambda = 0.0;
  double mu = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double c = 0.0;
  double kappa = 0.0;
  double r = 0.0;
  double k1 = 0.0;
  double h1 = 0.0;
  double hbar1 = 0.0;
  double k2 = 0.0;
  double h2 = 0.0;
  double hbar2 = 0.0;
  double rho = 0.0;
  double T0 = 0.0;
  double half_thickness = 0.0;
  ModelType model_type = ModelType::TypeIII;

  /// Second moment of the thickness, (2/3) h^3.
  [[nodiscard]] double I() const;
  /// c r - kappa^2.
  [[nodiscard]] double delta() const;

  bool operator==(const MaterialParams&) const = default;
};

struct ConditionResult {
  std::string name;
  double margin = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;

  [[nodiscard]] bool passed() const;
  /// nullptr when no condition carries this name.
  [[nodiscard]] const ConditionResult* find(const std::string& name) const;
  /// Names of failed conditions, comma separated.
  [[nodiscard]] std::string failures() const;
};

/// Evaluates every admissibility condition and reports its margin.
/// Throws Error(NonFinite) if any field is NaN or infinite.
ValidationReport validate(const MaterialParams& params);

/// Throws Error(ValidationFailed) naming the failed conditions.
void require_valid(const MaterialParams& params);

/// Largest c0 with (internal energy form) >= c0 * (sum of squared arguments).
/// Throws Error(NotCoercive) when the computed constant is not positive.
double internal_energy_coercivity(const MaterialParams& params);

/// Spatial-decay constant max(k2, h2) / lambda_min([[c, kappa], [kappa, r]]).
/// Type III only; throws Error(TypeMismatch) for type II.
double zeta(const MaterialParams& params);

/// Smallest xi bounding the pointwise cross-section energy flux by xi times
/// the energy density (kinetic + capacity + stored).
double xi_estimate(const MaterialParams& params);

/// Symmetric forms of the pointwise flux bound used by xi_estimate, over
/// (eps11, eps12, eps22, gamma1, gamma2, tau_1, tau_2, wp_1, wp_2, tau, wp,
///  zdot1, zdot2, y, theta, P). energy_density = x' A x, flux = x' B x.
struct FluxPencil {
  Eigen::MatrixXd flux;
  Eigen::MatrixXd energy;
};
FluxPencil flux_pencil(const MaterialParams& params);

/// max |mu| over the pencil B x = mu A x. A must be symmetric positive
/// definite, otherwise Error(NotCoercive).
double max_abs_generalized_eigenvalue(const Eigen::MatrixXd& B, const Eigen::MatrixXd& A);

/// Eigenvalues (ascending) of the symmetric 2x2 matrix [[a, b], [b, d]].
std::pair<double, double> sym2_eigenvalues(double a, double b, double d);

}  // namespace gnplate
