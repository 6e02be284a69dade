#pragma once

// Period map on vertex data (a, b) = (phi, phi') at cell-start vertices,
// under the reduction where both semicircles carry the same function.

#include "necklace/graph.hpp"
#include "necklace/spectral.hpp"

namespace necklace {

inline constexpr double kDefaultTol = 1e-10;

struct MapState {
  double a = 0.0;
  double b = 0.0;
};

struct ScaledState {
  double alpha = 0.0;
  double beta = 0.0;
};

ScaledState to_scaled(MapState s, double eps) noexcept;
MapState from_scaled(ScaledState s, double eps) noexcept;

/// (a, b) -> (c, d) = (psi(L), psi'(L) / 2).
MapState link_step(MapState state, double eps, const GraphParams& params, double tol = kDefaultTol);
/// (c, d) -> (a', b') = (psi(pi), 2 psi'(pi)).
MapState ring_step(MapState mid, double eps, const GraphParams& params, double tol = kDefaultTol);
MapState period_map(MapState state, double eps, const GraphParams& params, double tol = kDefaultTol);
/// Exact inverse of period_map via integration of the reversed edges.
MapState inverse_period_map(MapState state, double eps, const GraphParams& params,
                            double tol = kDefaultTol);
/// Inverse of link_step: (c, d) -> (a, b).
MapState inverse_link_step(MapState mid, double eps, const GraphParams& params,
                           double tol = kDefaultTol);

/// Polynomial truncation of the scaled period map.
ScaledState scaled_map_truncated(ScaledState state, double eps, const GraphParams& params) noexcept;

/// Central-difference Jacobian of period_map.  h <= 0 selects
/// 1e-6 * max(1, |point|).  The map is evaluated with min(tol, 1e-12).
Matrix2 jacobian(MapState point, double eps, const GraphParams& params, double h = 0.0,
                 double tol = 1e-12);

/// psi'(L/2; a, b, eps); vanishes on orbits symmetric about a link midpoint.
double symmetry_defect_link(MapState state, double eps, const GraphParams& params,
                            double tol = kDefaultTol);
/// psi'(pi/2; c, d, eps) for mid-cell data; vanishes on ring-symmetric orbits.
double symmetry_defect_ring(MapState mid, double eps, const GraphParams& params,
                            double tol = kDefaultTol);

enum class SymmetryCenter { Link, Ring };
enum class CurveMode { Asymptotic, Exact };

/// Scaled beta on the reversibility curve through scaled alpha at a cell
/// start.  Exact mode throws BracketError when no root exists for |beta| <= 1.
double symmetry_curve(double alpha, double eps, const GraphParams& params, SymmetryCenter which,
                      CurveMode mode, double tol = kDefaultTol);

/// Slope of the unstable line in scaled coordinates, sqrt((L+2pi)/(L+pi/2)).
double unstable_slope(const GraphParams& params) noexcept;

}  // namespace necklace
