#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "necklace/discrete_map.hpp"

namespace necklace {

enum class OrbitSymmetry { LinkCentered, RingCentered };

struct OrbitDiagnostics {
  bool all_positive = false;
  /// Smallest N with alpha increasing for n <= -N and decreasing for n >= N.
  int monotone_tail_index = 0;
  /// Geometric mean of alpha_{n+1}/alpha_n over the last 20% of indices.
  double tail_decay_ratio = 0.0;
  /// Same over the first 20%, read right to left.
  double backward_tail_ratio = 0.0;
  /// Scaled l2 distance of (alpha, beta) to the sech profile, minimized over X0.
  double l2_distance_to_sech = 0.0;
  double sech_shift = 0.0;
  /// Largest scaled |(alpha, beta)| along the orbit.
  double max_state_norm = 0.0;
};

struct Orbit {
  double eps = 0.0;
  OrbitSymmetry symmetry = OrbitSymmetry::LinkCentered;
  /// Index of states.front() and mid_states.front().
  std::int64_t n_first = 0;
  /// (a_n, b_n) for n = n_first .. n_first + size - 1.
  std::vector<MapState> states;
  /// (c_n, d_n) over the same index range.
  std::vector<MapState> mid_states;
  /// Scaled distance of the seed from the origin along the unstable direction.
  double seed_parameter = 0.0;
  OrbitDiagnostics diagnostics;

  std::int64_t n_last() const { return n_first + static_cast<std::int64_t>(states.size()) - 1; }
  const MapState& state(std::int64_t n) const;
  const MapState& mid(std::int64_t n) const;
};

struct HomoclinicOptions {
  /// Scaled seed distance from the origin.
  double seed_norm = 1e-8;
  /// Scaled norm beyond which the search gives up.
  double max_state_norm = 10.0;
  double tol = kDefaultTol;
  int max_iter = 200;
  /// Step budget for the search; 0 selects ceil(40 / (eps nu)).
  int max_steps = 0;
};

/// Unit eigenvector for the expanding eigenvalue at the origin, in scaled
/// coordinates, pointing into the first quadrant.  Throws DegenerateError
/// when the eigenvalues cannot be separated.
std::array<double, 2> unstable_direction(double eps, const GraphParams& params, double h = 0.0);

/// Reversible homoclinic orbit of the period map.  The symmetric point sits
/// in cell 0 (link midpoint or ring midpoint).
Orbit shoot_homoclinic(double eps, const GraphParams& params, OrbitSymmetry symmetry,
                       const HomoclinicOptions& options = {});

/// Continuum profile alpha = sech(nu X), beta = -mu tanh(nu X) sech(nu X),
/// X = eps n - eps/2 + X0.
ScaledState sech_approximation(double eps, double X0, std::int64_t n, const GraphParams& params);

OrbitDiagnostics orbit_diagnostics(const Orbit& orbit, double eps, const GraphParams& params);

}  // namespace necklace
