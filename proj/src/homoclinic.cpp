#include "necklace/homoclinic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "necklace/errors.hpp"

namespace necklace {

const MapState& Orbit::state(std::int64_t n) const {
  if (n < n_first || n > n_last()) throw DomainError("Orbit::state: index out of range");
  return states[static_cast<std::size_t>(n - n_first)];
}

const MapState& Orbit::mid(std::int64_t n) const {
  if (n < n_first || n > n_last()) throw DomainError("Orbit::mid: index out of range");
  return mid_states[static_cast<std::size_t>(n - n_first)];
}

std::array<double, 2> unstable_direction(double eps, const GraphParams& params, double h) {
  if (eps < 0.0) throw DomainError("unstable_direction: eps must be positive");
  if (h <= 0.0) h = 1e-6;
  const Matrix2 J = jacobian({0.0, 0.0}, eps, params, h);
  const auto ev = J.eigenvalues();
  if (ev[0].imag() != 0.0 || ev[0].real() - ev[1].real() <= 10.0 * h) {
    throw DegenerateError("unstable_direction: origin is not hyperbolic at eps = " +
                          std::to_string(eps));
  }
  auto v = J.eigenvector(ev[0].real());
  // Unscaled (a, b) -> scaled (alpha, beta).
  double al = v[0] / eps, be = v[1] / (eps * eps);
  const double norm = std::hypot(al, be);
  al /= norm;
  be /= norm;
  if (al < 0.0) {
    al = -al;
    be = -be;
  }
  return {al, be};
}

namespace {

struct Search {
  double eps;
  const GraphParams& params;
  OrbitSymmetry symmetry;
  double tol;
  std::array<double, 2> dir;

  MapState seed(double s) const { return from_scaled({s * dir[0], s * dir[1]}, eps); }

  // Scaled symmetry defect of the state reached after k steps.
  double defect(const MapState& x) const {
    const double d = symmetry == OrbitSymmetry::LinkCentered
                         ? symmetry_defect_link(x, eps, params, tol)
                         : symmetry_defect_ring(link_step(x, eps, params, tol), eps, params, tol);
    return d / (eps * eps);
  }

  MapState iterate(double s, int k) const {
    MapState x = seed(s);
    for (int i = 0; i < k; ++i) x = period_map(x, eps, params, tol);
    return x;
  }
};

double scaled_norm(const MapState& x, double eps) {
  const ScaledState s = to_scaled(x, eps);
  return std::hypot(s.alpha, s.beta);
}

}  // namespace

Orbit shoot_homoclinic(double eps, const GraphParams& params, OrbitSymmetry symmetry,
                       const HomoclinicOptions& options) {
  if (!(eps > 0.0 && eps <= 0.1)) {
    throw DomainError("shoot_homoclinic: eps must lie in (0, 0.1], got " + std::to_string(eps));
  }
  if (!(options.seed_norm > 0.0 && options.tol > 0.0 && options.max_iter > 0)) {
    throw DomainError("shoot_homoclinic: invalid options");
  }
  const double nu = std::sqrt(band_edge_curvature(params));
  const int max_steps =
      options.max_steps > 0 ? options.max_steps : static_cast<int>(std::ceil(40.0 / (eps * nu)));
  const Search search{eps, params, symmetry, options.tol, unstable_direction(eps, params)};
  const double lambda_plus = jacobian({0.0, 0.0}, eps, params).eigenvalues()[0].real();

  // Walk the unstable manifold until the defect changes sign.
  const double s0 = options.seed_norm;
  MapState x = search.seed(s0);
  if (!(search.defect(x) > 0.0)) {
    throw ConvergenceError("shoot_homoclinic: seed does not start on the expected side of the symmetry curve");
  }
  int K = 0;
  for (;;) {
    x = period_map(x, eps, params, options.tol);
    ++K;
    if (search.defect(x) <= 0.0) break;
    if (K >= max_steps || scaled_norm(x, eps) > options.max_state_norm) {
      throw NoCrossingError("shoot_homoclinic: no symmetry crossing within " + std::to_string(K) +
                            " steps");
    }
  }

  // Slide the seed along the manifold so the defect vanishes exactly at step K.
  auto g = [&](double s) { return search.defect(search.iterate(s, K)); };
  double hi = s0, lo = s0 / lambda_plus;
  double g_hi = g(hi), g_lo = g(lo);
  for (int widen = 0; g_lo <= 0.0 && widen < 4; ++widen) {
    lo /= lambda_plus;
    g_lo = g(lo);
  }
  if (!(g_lo > 0.0 && g_hi <= 0.0)) {
    throw ConvergenceError("shoot_homoclinic: seed bracket lost its sign change");
  }
  int iter = 0;
  while (hi - lo > 1e-12 * hi) {
    if (++iter > options.max_iter) {
      throw ConvergenceError("shoot_homoclinic: bisection did not converge in " +
                             std::to_string(options.max_iter) + " iterations");
    }
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    g_hi = gm <= 0.0 ? gm : g_hi;
  }
  const double s_star = std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;

  // Left half by forward iteration, symmetric point at n = 0.
  std::vector<MapState> left(static_cast<std::size_t>(K) + 1);
  left[0] = search.seed(s_star);
  for (int k = 1; k <= K; ++k) left[k] = period_map(left[k - 1], eps, params, options.tol);
  std::vector<MapState> left_mid(left.size());
  for (std::size_t k = 0; k < left.size(); ++k) left_mid[k] = link_step(left[k], eps, params, options.tol);

  Orbit orbit;
  orbit.eps = eps;
  orbit.symmetry = symmetry;
  orbit.seed_parameter = s_star;
  orbit.n_first = -K;
  const std::size_t total = 2 * static_cast<std::size_t>(K) + 2;
  orbit.states.resize(total);
  orbit.mid_states.resize(total);
  auto at = [&](std::vector<MapState>& v, std::int64_t n) -> MapState& {
    return v[static_cast<std::size_t>(n + K)];
  };
  // Index n <= 0 lives at left[n + K].
  for (std::int64_t n = -K; n <= 0; ++n) {
    at(orbit.states, n) = left[static_cast<std::size_t>(n + K)];
    at(orbit.mid_states, n) = left_mid[static_cast<std::size_t>(n + K)];
  }
  if (symmetry == OrbitSymmetry::LinkCentered) {
    // a_n = c_{-n}, b_n = -2 d_{-n};  c_n = a_{-n}, d_n = -b_{-n} / 2.
    for (std::int64_t n = 1; n <= K; ++n) {
      const MapState& c = at(orbit.mid_states, -n);
      at(orbit.states, n) = {c.a, -2.0 * c.b};
      const MapState& a = at(orbit.states, -n);
      at(orbit.mid_states, n) = {a.a, -0.5 * a.b};
    }
    at(orbit.states, K + 1) = period_map(at(orbit.states, K), eps, params, options.tol);
    at(orbit.mid_states, K + 1) = link_step(at(orbit.states, K + 1), eps, params, options.tol);
  } else {
    // a_p = c_{1-p}, b_p = -2 d_{1-p};  c_p = a_{1-p}, d_p = -b_{1-p} / 2.
    for (std::int64_t p = 1; p <= K + 1; ++p) {
      const MapState& c = at(orbit.mid_states, 1 - p);
      at(orbit.states, p) = {c.a, -2.0 * c.b};
      const MapState& a = at(orbit.states, 1 - p);
      at(orbit.mid_states, p) = {a.a, -0.5 * a.b};
    }
  }
  orbit.diagnostics = orbit_diagnostics(orbit, eps, params);
  return orbit;
}

ScaledState sech_approximation(double eps, double X0, std::int64_t n, const GraphParams& params) {
  const double nu = std::sqrt(band_edge_curvature(params));
  const double X = eps * static_cast<double>(n) - 0.5 * eps + X0;
  const double sech = 1.0 / std::cosh(nu * X);
  return {sech, -unstable_slope(params) * std::tanh(nu * X) * sech};
}

OrbitDiagnostics orbit_diagnostics(const Orbit& orbit, double eps, const GraphParams& params) {
  OrbitDiagnostics d;
  const std::size_t size = orbit.states.size();
  if (size < 3) return d;

  std::vector<double> alpha(size);
  d.all_positive = true;
  for (std::size_t i = 0; i < size; ++i) {
    const ScaledState s = to_scaled(orbit.states[i], eps);
    alpha[i] = s.alpha;
    d.max_state_norm = std::max(d.max_state_norm, std::hypot(s.alpha, s.beta));
    if (!(orbit.states[i].a > 0.0)) d.all_positive = false;
    if (i < orbit.mid_states.size() && !(orbit.mid_states[i].a > 0.0)) d.all_positive = false;
  }

  // Monotone tails: find the last rise from the right and the last fall from the left.
  std::int64_t n_dec = orbit.n_last();
  for (std::size_t i = size - 1; i > 0; --i) {
    if (!(alpha[i] < alpha[i - 1])) break;
    n_dec = orbit.n_first + static_cast<std::int64_t>(i) - 1;
  }
  std::int64_t n_inc = orbit.n_first;
  for (std::size_t i = 0; i + 1 < size; ++i) {
    if (!(alpha[i] < alpha[i + 1])) break;
    n_inc = orbit.n_first + static_cast<std::int64_t>(i) + 1;
  }
  d.monotone_tail_index = static_cast<int>(std::max<std::int64_t>({0, n_dec, -n_inc}));

  const std::size_t window = std::max<std::size_t>(2, size / 5);
  d.tail_decay_ratio = std::pow(alpha[size - 1] / alpha[size - 1 - window], 1.0 / window);
  d.backward_tail_ratio = std::pow(alpha[0] / alpha[window], 1.0 / window);

  auto dist2 = [&](double X0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const std::int64_t n = orbit.n_first + static_cast<std::int64_t>(i);
      const ScaledState s = to_scaled(orbit.states[i], eps);
      const ScaledState r = sech_approximation(eps, X0, n, params);
      acc += (s.alpha - r.alpha) * (s.alpha - r.alpha) + (s.beta - r.beta) * (s.beta - r.beta);
    }
    return acc;
  };
  // The hump centre sits within a cell of n = 0; scan then polish.
  const double span = 3.0 * eps + 1.0 / std::sqrt(band_edge_curvature(params));
  double best = -span, best_val = dist2(best);
  for (int i = 1; i <= 60; ++i) {
    const double X0 = -span + 2.0 * span * i / 60.0;
    const double v = dist2(X0);
    if (v < best_val) {
      best = X0;
      best_val = v;
    }
  }
  const double step = 2.0 * span / 60.0;
  const auto r = boost::math::tools::brent_find_minima(dist2, best - step, best + step, 52);
  d.sech_shift = r.first;
  d.l2_distance_to_sech = std::sqrt(std::max(0.0, r.second));
  return d;
}

}  // namespace necklace
