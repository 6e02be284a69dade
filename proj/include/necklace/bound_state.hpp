#pragma once

#include "necklace/graph.hpp"
#include "necklace/homoclinic.hpp"

namespace necklace {

enum class ProfileSource { FromOrbit, DirectShooting };

struct BoundState {
  PiecewiseProfile profile;
  OrbitSymmetry symmetry = OrbitSymmetry::LinkCentered;
  double lambda = 0.0;
  double Q = 0.0;
  double E = 0.0;
  double h2_norm = 0.0;
  double max_kirchhoff_residual = 0.0;
  ProfileSource source = ProfileSource::FromOrbit;
  /// Value at the symmetry centre.
  double phi0 = 0.0;
};

struct AssemblyOptions {
  int samples_per_edge = 64;
  double tol = kDefaultTol;
  double residual_tol = 1e-8;
  /// Factor applied to the link flux entering a ring; 1/2 is the vertex
  /// rule.  Anything else deliberately breaks the vertex conditions.
  double ring_flux_factor = 0.5;
  /// Throw AssemblyError when the vertex residual exceeds residual_tol.
  bool enforce_residual = true;
};

/// Profile on the cells of the orbit, both semicircles carrying the same data.
BoundState assemble_profile(const Orbit& orbit, double eps, const GraphParams& params,
                            const AssemblyOptions& options = {});

struct ShootingOptions {
  /// Initial-value bracket; zeros select [1.01 eps/sqrt(2), 5 eps].
  double phi0_lo = 0.0;
  double phi0_hi = 0.0;
  /// Cells on each side of the centre; 0 selects max(3, ceil(30 / (eps nu))).
  int n_cells = 0;
  int samples_per_edge = 64;
  double tol = kDefaultTol;
  int max_iter = 200;
};

/// Direct shooting from the symmetry centre with (phi, phi') = (phi0, 0).
/// Throws BracketError, UndecidableError or ConvergenceError.
BoundState shoot_bound_state(double lambda, const GraphParams& params, OrbitSymmetry symmetry,
                             const ShootingOptions& options = {});

/// Mass, integral of phi^2 over the sampled graph (composite Simpson).
double charge(const PiecewiseProfile& profile);
/// Integral of phi'^2 - phi^4.
double energy(const PiecewiseProfile& profile);
/// Integral of phi'^2 + eps^2 phi^2 - 2 phi^4; half the derivative of
/// E - Lambda Q along phi -> (1+s) phi, zero at a bound state.
double stationarity_defect(const PiecewiseProfile& profile);
/// H^2 norm, with phi'' = eps^2 phi - 2 phi^3 taken from the equation.
double h2_norm(const PiecewiseProfile& profile, double eps);
/// Max over interior vertices of value mismatch plus flux mismatch.
double kirchhoff_residual(const PiecewiseProfile& profile);
/// Max over mirror sample pairs of |phi(x) - phi(x')| + |phi'(x) + phi'(x')|.
double mirror_defect(const PiecewiseProfile& profile, OrbitSymmetry symmetry);
/// Largest |phi| on each cell, indexed from profile.n_min().
std::vector<double> cell_sup(const PiecewiseProfile& profile);
/// Sup-norm difference over the cells both profiles share.
double sup_difference(const PiecewiseProfile& x, const PiecewiseProfile& y);

struct FamilyComparison {
  double Q_link = 0.0;
  double Q_ring = 0.0;
  double E_link = 0.0;
  double E_ring = 0.0;
  double dQ_rel = 0.0;
};

FamilyComparison compare_families(double eps, const GraphParams& params,
                                  const AssemblyOptions& options = {},
                                  const HomoclinicOptions& orbit_options = {});

}  // namespace necklace
