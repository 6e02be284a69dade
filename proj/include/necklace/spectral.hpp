#pragma once

#include <array>
#include <complex>
#include <vector>

#include "necklace/graph.hpp"

namespace necklace {

struct Matrix2 {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  double det() const noexcept { return m11 * m22 - m12 * m21; }
  double trace() const noexcept { return m11 + m22; }
  std::array<double, 2> apply(std::array<double, 2> v) const noexcept {
    return {m11 * v[0] + m12 * v[1], m21 * v[0] + m22 * v[1]};
  }
  /// Eigenvalues ordered by decreasing real part.
  std::array<std::complex<double>, 2> eigenvalues() const;
  /// Unit eigenvector for a real eigenvalue lambda.
  std::array<double, 2> eigenvector(double lambda) const;

  static Matrix2 identity() noexcept { return {}; }
  static Matrix2 diagonal(double d1, double d2) noexcept { return {d1, 0.0, 0.0, d2}; }
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y) noexcept;

/// Transfer matrix of the linear problem across one cell at frequency omega.
/// Throws DomainError for omega <= 0; see monodromy_limit_zero.
Matrix2 monodromy_matrix(double omega, const GraphParams& params);
Matrix2 monodromy_limit_zero() noexcept;

double trace(double omega, const GraphParams& params);
double trace_hyperbolic(double eps, const GraphParams& params);

struct Band {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  /// True when the next band starts where this one ends (zero-width gap).
  bool touches_next = false;
};

/// Bands in [0, omega_max], edges refined to 1e-10 in omega.  Throws
/// GridError when the grid is too coarse to resolve a gap or a band.
std::vector<Band> find_bands(const GraphParams& params, double omega_max, int grid_points);

enum class FlatBandLocation { Edge, Interior };

struct FlatBand {
  int m = 1;
  double lambda = 1.0;
  FlatBandLocation location = FlatBandLocation::Interior;
  /// 1-based index into find_bands output; 0 if not found.
  int host_band_index = 0;
};

FlatBand classify_flat_band(int m, const GraphParams& params);

/// Compactly supported eigenfunction for lambda = m^2 living on ring k.
/// Covers cells k-1..k+1 and stores both semicircles.
PiecewiseProfile flat_band_eigenfunction(int m, CellIndex k, const GraphParams& params,
                                         int samples_per_edge = 64);

/// nu^2 = (L + pi/2)(L + 2 pi).
double band_edge_curvature(const GraphParams& params);

/// lambda on the lowest band solving T(omega) = 2 cos(theta), theta in (0, pi].
double lowest_band_lambda(double theta, const GraphParams& params);

}  // namespace necklace
