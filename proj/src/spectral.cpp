#include "necklace/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "necklace/errors.hpp"

namespace necklace {

namespace {

constexpr double kOmegaTol = 1e-10;
constexpr double kTouchTol = 1e-9;

double gap_function(double omega, const GraphParams& params) {
  return std::abs(trace(omega, params)) - 2.0;
}

double refine_edge(double lo, double hi, const GraphParams& params) {
  auto f = [&](double w) { return gap_function(w, params); };
  auto stop = [](double a, double b) { return std::abs(b - a) <= kOmegaTol; };
  const auto r = boost::math::tools::bisect(f, lo, hi, stop);
  return 0.5 * (r.first + r.second);
}

struct Extremum {
  double omega;
  double value;
};

// Extremum of |T| - 2 on [lo, hi]; sign = +1 for a maximum, -1 for a minimum.
Extremum refine_extremum(double lo, double hi, double sign, const GraphParams& params) {
  auto f = [&](double w) { return -sign * gap_function(w, params); };
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi, 52);
  return {r.first, -sign * r.second};
}

}  // namespace

std::array<std::complex<double>, 2> Matrix2::eigenvalues() const {
  const double half = 0.5 * trace();
  const double disc = half * half - det();
  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    return {std::complex<double>(half, im), std::complex<double>(half, -im)};
  }
  // Larger-magnitude root first, the other from the product to avoid cancellation.
  const double big = half + std::copysign(std::sqrt(disc), half);
  const double small = big != 0.0 ? det() / big : 0.0;
  return {std::complex<double>(std::max(big, small)), std::complex<double>(std::min(big, small))};
}

std::array<double, 2> Matrix2::eigenvector(double lambda) const {
  // Rows of (M - lambda I) are orthogonal to the eigenvector; use the larger one.
  const double r1x = m11 - lambda, r1y = m12;
  const double r2x = m21, r2y = m22 - lambda;
  const double n1 = std::hypot(r1x, r1y), n2 = std::hypot(r2x, r2y);
  std::array<double, 2> v;
  if (n1 == 0.0 && n2 == 0.0) {
    v = {1.0, 0.0};
  } else if (n1 >= n2) {
    v = {-r1y / n1, r1x / n1};
  } else {
    v = {-r2y / n2, r2x / n2};
  }
  return v;
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) noexcept {
  return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
          x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
}

Matrix2 monodromy_matrix(double omega, const GraphParams& params) {
  if (!(omega > 0.0)) {
    throw DomainError("monodromy_matrix: omega must be positive, got " + std::to_string(omega));
  }
  const double L = params.link_length();
  const double cp = std::cos(omega * kPi), sp = std::sin(omega * kPi);
  const double cl = std::cos(omega * L), sl = std::sin(omega * L);
  const Matrix2 ring{cp, sp, -2.0 * sp, 2.0 * cp};
  const Matrix2 link{cl, sl, -0.5 * sl, 0.5 * cl};
  return ring * link;
}

Matrix2 monodromy_limit_zero() noexcept {
  return Matrix2::diagonal(1.0, 2.0) * Matrix2::diagonal(1.0, 0.5);
}

double trace(double omega, const GraphParams& params) {
  const double L = params.link_length();
  return 2.0 * std::cos(omega * kPi) * std::cos(omega * L) -
         2.5 * std::sin(omega * kPi) * std::sin(omega * L);
}

double trace_hyperbolic(double eps, const GraphParams& params) {
  const double L = params.link_length();
  return 2.0 * std::cosh(eps * kPi) * std::cosh(eps * L) +
         2.5 * std::sinh(eps * kPi) * std::sinh(eps * L);
}

std::vector<Band> find_bands(const GraphParams& params, double omega_max, int grid_points) {
  if (!(omega_max > 0.0)) throw DomainError("find_bands: omega_max must be positive");
  if (grid_points < 100) throw DomainError("find_bands: grid_points must be at least 100");

  const int n = grid_points;
  const double h = omega_max / (n - 1);
  // T oscillates like cos(omega (L + pi)); coarser grids alias whole bands away.
  if (h * params.period() > 1.0) {
    throw GridError("find_bands: grid spacing " + std::to_string(h) +
                    " cannot follow the oscillation of T; use at least " +
                    std::to_string(static_cast<int>(std::ceil(omega_max * params.period())) + 1) +
                    " grid points");
  }
  std::vector<double> w(n), f(n);
  for (int i = 0; i < n; ++i) {
    w[i] = i == n - 1 ? omega_max : h * i;
    f[i] = gap_function(w[i], params);
  }
  f[0] = 0.0;  // T(0) = 2 exactly; the lowest band starts here.

  auto grid_error = [&](double where, const char* what) {
    throw GridError(std::string("find_bands: ") + what + " near omega = " + std::to_string(where) +
                    " is not resolved by the grid; increase grid_points (currently " +
                    std::to_string(grid_points) + ")");
  };

  // Raw band intervals from sign changes of |T| - 2.
  std::vector<Band> raw;
  bool inside = true;
  double lo = 0.0;
  for (int i = 1; i < n; ++i) {
    const bool now = f[i] <= 0.0;
    if (now == inside) continue;
    const double edge = refine_edge(w[i - 1], w[i], params);
    if (inside) {
      raw.push_back({lo, edge, 0, 0, false});
    } else {
      lo = edge;
    }
    inside = now;
  }
  if (inside) raw.push_back({lo, omega_max, 0, 0, false});

  // Interior extrema that the sign scan cannot see: a maximum of |T| reaching
  // 2 inside a band is a touching, above 2 is an unresolved gap; a minimum
  // below 2 inside a gap is an unresolved band.
  std::vector<Band> split;
  for (const Band& b : raw) {
    Band cur = b;
    for (int i = 1; i + 1 < n; ++i) {
      if (w[i] <= cur.omega_lo || w[i] >= b.omega_hi) continue;
      if (!(f[i] >= f[i - 1] && f[i] > f[i + 1])) continue;
      const Extremum peak = refine_extremum(w[i - 1], w[i + 1], +1.0, params);
      if (peak.value > kTouchTol) grid_error(peak.omega, "a spectral gap");
      if (peak.value >= -kTouchTol) {
        split.push_back({cur.omega_lo, peak.omega, 0, 0, true});
        cur.omega_lo = peak.omega;
      }
    }
    split.push_back(cur);
  }
  for (std::size_t k = 0; k + 1 < split.size(); ++k) {
    if (split[k].touches_next) continue;
    const double g_lo = split[k].omega_hi, g_hi = split[k + 1].omega_lo;
    const Extremum top = refine_extremum(g_lo, g_hi, +1.0, params);
    if (top.value <= kTouchTol) {
      // Grid point sat on a tangential touching and produced a spurious gap.
      split[k].omega_hi = top.omega;
      split[k + 1].omega_lo = top.omega;
      split[k].touches_next = true;
      continue;
    }
    for (int i = 1; i + 1 < n; ++i) {
      if (w[i] <= g_lo || w[i] >= g_hi) continue;
      if (!(f[i] <= f[i - 1] && f[i] < f[i + 1])) continue;
      const Extremum dip = refine_extremum(w[i - 1], w[i + 1], -1.0, params);
      if (dip.value < -kTouchTol) grid_error(dip.omega, "a spectral band");
    }
  }
  for (Band& b : split) {
    b.lambda_lo = b.omega_lo * b.omega_lo;
    b.lambda_hi = b.omega_hi * b.omega_hi;
  }
  return split;
}

FlatBand classify_flat_band(int m, const GraphParams& params) {
  if (m < 1) throw DomainError("classify_flat_band: m must be positive");
  FlatBand fb;
  fb.m = m;
  fb.lambda = static_cast<double>(m) * m;
  const double c = std::abs(std::cos(m * params.link_length()));
  fb.location = c >= 1.0 - 1e-12 ? FlatBandLocation::Edge : FlatBandLocation::Interior;

  const double omega_max = m + 2.0;
  const int grid = std::max(4000, static_cast<int>(700.0 * omega_max));
  const auto bands = find_bands(params, omega_max, grid);
  for (std::size_t k = 0; k < bands.size(); ++k) {
    if (m >= bands[k].omega_lo - 1e-9 && m <= bands[k].omega_hi + 1e-9) {
      fb.host_band_index = static_cast<int>(k) + 1;
      break;
    }
  }
  return fb;
}

PiecewiseProfile flat_band_eigenfunction(int m, CellIndex k, const GraphParams& params,
                                         int samples_per_edge) {
  if (m < 1) throw DomainError("flat_band_eigenfunction: m must be positive");
  PiecewiseProfile p{params, 0.0, {}, false};
  for (std::int64_t n = k.value - 1; n <= k.value + 1; ++n) {
    CellSamples cell;
    cell.cell = CellIndex{n};
    const double x0 = edge_origin({cell.cell, EdgeKind::Link}, params);
    for (double x : uniform_abscissae(x0, params.link_length(), samples_per_edge)) {
      cell.link.push_back(x, 0.0, 0.0);
    }
    const double r0 = edge_origin({cell.cell, EdgeKind::SemicircleUpper}, params);
    EdgeSamples upper, lower;
    for (double x : uniform_abscissae(r0, kPi, samples_per_edge)) {
      const double s = n == k.value ? std::sin(m * (x - r0)) : 0.0;
      const double ds = n == k.value ? m * std::cos(m * (x - r0)) : 0.0;
      upper.push_back(x, s, ds);
      lower.push_back(x, -s, -ds);
    }
    cell.upper = std::move(upper);
    cell.lower = std::move(lower);
    p.cells.push_back(std::move(cell));
  }
  return p;
}

double band_edge_curvature(const GraphParams& params) {
  const double L = params.link_length();
  return (L + 0.5 * kPi) * (L + 2.0 * kPi);
}

double lowest_band_lambda(double theta, const GraphParams& params) {
  if (!(theta > 0.0 && theta <= kPi)) {
    throw DomainError("lowest_band_lambda: theta must lie in (0, pi]");
  }
  const double target = 2.0 * std::cos(theta);
  auto f = [&](double w) { return trace(w, params) - target; };
  // T decreases from 2 on the lowest band; march until it passes the target.
  const double step = 0.01 / std::sqrt(band_edge_curvature(params));
  double lo = 0.0, hi = step;
  while (f(hi) > 0.0) {
    lo = hi;
    hi += step;
    if (hi > 10.0) throw BracketError("lowest_band_lambda: no root on the lowest band");
  }
  auto stop = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::max(1.0, b); };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, stop, iters);
  const double omega = 0.5 * (r.first + r.second);
  return omega * omega;
}

}  // namespace necklace
