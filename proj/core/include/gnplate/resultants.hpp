#pragma once

#include "gnplate/grid.hpp"
#include "gnplate/material.hpp"
#include "gnplate/state.hpp"

namespace gnplate {

struct Strain {
  Field eps11;
  Field eps12;
  Field eps22;
  Field gamma1;
  Field gamma2;
};

struct Resultants {
  Field M11;
  Field M12;
  Field M22;
  Field N1;
  Field N2;
  Field rho_sigma;
  Field Psi1;
  Field Psi2;
  Field R;
  Field chi;
  Field Omega1;
  Field Omega2;
  Field Mdiff;
};

/// Symmetric strain of the rotations and transverse shear strains, from
/// central differences.
Strain strain(const State& state);

/// Thickness-integrated moments, shears, entropy and diffusion resultants,
/// evaluated at the nodes.
Resultants resultants(const State& state, const MaterialParams& params);

/// Node share of the squared forward differences of f along both axes: half
/// of each adjacent edge, or all of it when the other end is a boundary node.
/// Summing over nodes gives the sum over edges, i.e. -f' L f / cell_area.
Field edge_square(const Field& f);
/// Polarized form of edge_square.
Field edge_product(const Field& f, const Field& g);

/// Node energy density (kinetic, capacity and stored parts). Its cell-area
/// weighted sum equals the discrete energy 0.5 U' E U exactly.
Field energy_density(const State& state, const MaterialParams& params);

/// Node dissipation density. Its weighted sum equals U' D U exactly.
Field dissipation_density(const State& state, const MaterialParams& params);

}  // namespace gnplate
