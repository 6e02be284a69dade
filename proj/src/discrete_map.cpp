#include "necklace/discrete_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "necklace/errors.hpp"
#include "necklace/ode.hpp"

namespace necklace {

ScaledState to_scaled(MapState s, double eps) noexcept { return {s.a / eps, s.b / (eps * eps)}; }

MapState from_scaled(ScaledState s, double eps) noexcept {
  return {eps * s.alpha, eps * eps * s.beta};
}

MapState link_step(MapState state, double eps, const GraphParams& params, double tol) {
  const PhasePoint end = propagate({state.a, state.b}, eps, params.link_length(), tol);
  return {end.psi, 0.5 * end.dpsi};
}

MapState ring_step(MapState mid, double eps, const GraphParams& params, double tol) {
  (void)params;
  const PhasePoint end = propagate({mid.a, mid.b}, eps, kPi, tol);
  return {end.psi, 2.0 * end.dpsi};
}

MapState period_map(MapState state, double eps, const GraphParams& params, double tol) {
  return ring_step(link_step(state, eps, params, tol), eps, params, tol);
}

MapState inverse_link_step(MapState mid, double eps, const GraphParams& params, double tol) {
  const PhasePoint back = propagate({mid.a, -2.0 * mid.b}, eps, params.link_length(), tol);
  return {back.psi, -back.dpsi};
}

MapState inverse_period_map(MapState state, double eps, const GraphParams& params, double tol) {
  const PhasePoint ring_back = propagate({state.a, -0.5 * state.b}, eps, kPi, tol);
  return inverse_link_step({ring_back.psi, -ring_back.dpsi}, eps, params, tol);
}

ScaledState scaled_map_truncated(ScaledState s, double eps, const GraphParams& params) noexcept {
  const double L = params.link_length();
  const double pi = kPi;
  const double al = s.alpha, be = s.beta;
  const double f1 = (1.0 - 2.0 * al * al) * al;
  const double f3 = (1.0 - 6.0 * al * al) * be;
  const double e2 = eps * eps, e3 = e2 * eps;
  ScaledState out;
  out.alpha = al + eps * (L + 0.5 * pi) * be + 0.5 * e2 * (L * L + pi * L + pi * pi) * f1 +
              e3 / 12.0 * (2 * L * L * L + 3 * L * L * pi + 6 * L * pi * pi + pi * pi * pi) * f3;
  out.beta = be + eps * (L + 2.0 * pi) * f1 + 0.5 * e2 * (L * L + 4 * L * pi + pi * pi) * f3;
  return out;
}

Matrix2 jacobian(MapState point, double eps, const GraphParams& params, double h, double tol) {
  if (h <= 0.0) h = 1e-6 * std::max(1.0, std::hypot(point.a, point.b));
  const double t = std::min(tol, 1e-12);
  const MapState ap = period_map({point.a + h, point.b}, eps, params, t);
  const MapState am = period_map({point.a - h, point.b}, eps, params, t);
  const MapState bp = period_map({point.a, point.b + h}, eps, params, t);
  const MapState bm = period_map({point.a, point.b - h}, eps, params, t);
  const double inv = 0.5 / h;
  return {(ap.a - am.a) * inv, (bp.a - bm.a) * inv, (ap.b - am.b) * inv, (bp.b - bm.b) * inv};
}

double symmetry_defect_link(MapState state, double eps, const GraphParams& params, double tol) {
  return propagate({state.a, state.b}, eps, 0.5 * params.link_length(), tol).dpsi;
}

double symmetry_defect_ring(MapState mid, double eps, const GraphParams& params, double tol) {
  (void)params;
  return propagate({mid.a, mid.b}, eps, 0.5 * kPi, tol).dpsi;
}

double unstable_slope(const GraphParams& params) noexcept {
  const double L = params.link_length();
  return std::sqrt((L + 2.0 * kPi) / (L + 0.5 * kPi));
}

double symmetry_curve(double alpha, double eps, const GraphParams& params, SymmetryCenter which,
                      CurveMode mode, double tol) {
  const double L = params.link_length();
  const double f1 = (1.0 - 2.0 * alpha * alpha) * alpha;
  const double guess = which == SymmetryCenter::Link ? -0.5 * eps * L * f1 : -eps * (L + kPi) * f1;
  if (mode == CurveMode::Asymptotic) return guess;

  auto defect = [&](double beta) {
    const MapState s = from_scaled({alpha, beta}, eps);
    const double d = which == SymmetryCenter::Link
                         ? symmetry_defect_link(s, eps, params, tol)
                         : symmetry_defect_ring(link_step(s, eps, params, tol), eps, params, tol);
    return d / (eps * eps);
  };

  double half = 5.0 * eps * eps * eps;
  double lo = guess - half, hi = guess + half;
  double flo = defect(lo), fhi = defect(hi);
  while (flo * fhi > 0.0) {
    if (lo <= -1.0 && hi >= 1.0) {
      throw BracketError("symmetry_curve: no root with |beta| <= 1 at alpha = " +
                         std::to_string(alpha));
    }
    half *= 2.0;
    lo = std::max(-1.0, guess - half);
    hi = std::min(1.0, guess + half);
    flo = defect(lo);
    fhi = defect(hi);
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  auto stop = [](double x, double y) { return std::abs(y - x) <= 1e-14 * std::max(1e-3, std::abs(x)); };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(defect, lo, hi, flo, fhi, stop, iters);
  if (iters >= 200) throw ConvergenceError("symmetry_curve: root finder did not converge");
  return 0.5 * (r.first + r.second);
}

}  // namespace necklace
