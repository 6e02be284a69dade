#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "necklace/bound_state.hpp"
#include "necklace/errors.hpp"
#include "necklace/ode.hpp"
#include "necklace/spectral.hpp"

namespace necklace::cli {

namespace {

Check make_check(std::string name, double value, double threshold, bool passed,
                 std::string detail = {}) {
  return {std::move(name), passed, value, threshold, std::move(detail)};
}

Check at_most(std::string name, double value, double threshold, std::string detail = {}) {
  const bool ok = std::isfinite(value) && value <= threshold;
  return make_check(std::move(name), value, threshold, ok, std::move(detail));
}

std::string short_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string eps_tag(double eps) { return "eps=" + short_number(eps); }

double state_distance(MapState x, MapState y, double eps) {
  const ScaledState a = to_scaled(x, eps), b = to_scaled(y, eps);
  return std::hypot(a.alpha - b.alpha, a.beta - b.beta);
}

void spectral_checks(const GraphParams& params, std::vector<Check>& out) {
  double det_err = 0.0, trace_err = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double w = 1e-3 * std::pow(5e4, i / 200.0);
    const Matrix2 M = monodromy_matrix(w, params);
    det_err = std::max(det_err, std::abs(M.det() - 1.0));
    trace_err = std::max(trace_err, std::abs(M.trace() - trace(w, params)));
  }
  out.push_back(at_most("monodromy_det", det_err, 1e-12));
  out.push_back(at_most("trace_consistency", trace_err, 1e-12));

  const auto bands = find_bands(params, 6.0, 4000);
  const double first = bands.empty() ? 1.0 : bands.front().omega_lo;
  out.push_back(at_most("lowest_band_starts_at_zero", std::abs(first), 0.0));

  int outside = 0;
  for (int m = 1; m <= 5; ++m) {
    if (classify_flat_band(m, params).host_band_index <= 0) ++outside;
  }
  out.push_back(at_most("flat_bands_in_spectrum", outside, 0.0));

  double curv_err = 0.0;
  const double nu2 = band_edge_curvature(params);
  for (double theta : {0.01, 0.02, 0.04}) {
    const double lambda = lowest_band_lambda(theta, params);
    curv_err = std::max(curv_err, std::abs(lambda * nu2 / (theta * theta) - 1.0));
  }
  out.push_back(at_most("band_edge_curvature", curv_err, 1e-2));
}

void ode_checks(double tol, std::vector<Check>& out) {
  const double eps = 0.1;
  const double x_end = 40.0;
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(x_end * i / 400.0);
  const IvpSolution sol = integrate_ivp(eps, 0.0, eps, x_end, tol, xs);
  double err = 0.0;
  for (const OdeSample& s : sol.samples) {
    err = std::max(err, std::abs(s.psi - eps / std::cosh(eps * s.x)));
  }
  out.push_back(at_most("sech_oracle", err, 1e-8));
  out.push_back(at_most("invariant_drift", sol.invariant_drift, 1e-10));

  const double c = eps / std::sqrt(2.0);
  const PhasePoint p = propagate({c, 0.0}, eps, 10.0, tol);
  out.push_back(at_most("constant_solution", std::abs(p.psi - c) + std::abs(p.dpsi), 1e-10));
}

void per_eps_checks(double eps, const RunConfig& cfg, const GraphParams& params,
                    std::vector<Check>& out) {
  const std::string tag = eps_tag(eps);
  const double c = eps / std::sqrt(2.0);
  double fp = 0.0;
  for (MapState s : {MapState{0.0, 0.0}, MapState{c, 0.0}, MapState{-c, 0.0}}) {
    const MapState img = period_map(s, eps, params, cfg.tol);
    fp = std::max(fp, std::abs(img.a - s.a) + std::abs(img.b - s.b));
  }
  out.push_back(at_most("fixed_points", fp, 1e-9, tag));

  double det_err = 0.0;
  for (ScaledState s : {ScaledState{0.0, 0.0}, ScaledState{0.5, 0.2}, ScaledState{1.0, -0.5}}) {
    det_err = std::max(det_err, std::abs(jacobian(from_scaled(s, eps), eps, params).det() - 1.0));
  }
  out.push_back(at_most("jacobian_det", det_err, 1e-6, tag));
  const Matrix2 J0 = jacobian({0.0, 0.0}, eps, params);
  out.push_back(at_most("jacobian_trace", std::abs(J0.trace() - trace_hyperbolic(eps, params)), 1e-6, tag));
  const double lambda_minus = J0.eigenvalues()[1].real();

  HomoclinicOptions ho;
  ho.tol = cfg.tol;
  for (OrbitSymmetry sym : {OrbitSymmetry::LinkCentered, OrbitSymmetry::RingCentered}) {
    const std::string stag = tag + " " + short_name(sym);
    const Orbit orbit = shoot_homoclinic(eps, params, sym, ho);
    out.push_back(make_check("orbit_positive", orbit.diagnostics.all_positive ? 1.0 : 0.0, 1.0,
                             orbit.diagnostics.all_positive, stag));
    double step = 0.0, back = 0.0;
    for (std::int64_t n = orbit.n_first; n < orbit.n_last(); ++n) {
      step = std::max(step, state_distance(period_map(orbit.state(n), eps, params, cfg.tol),
                                           orbit.state(n + 1), eps));
    }
    for (std::int64_t n = orbit.n_first + 1; n <= std::min(orbit.n_last(), orbit.n_first + 10); ++n) {
      back = std::max(back, state_distance(inverse_period_map(orbit.state(n), eps, params, cfg.tol),
                                           orbit.state(n - 1), eps));
    }
    out.push_back(at_most("orbit_step_consistency", step, 1e-6, stag));
    out.push_back(at_most("orbit_backward_iteration", back, 1e-6, stag));
    out.push_back(at_most("tail_decay_rate",
                          std::abs(orbit.diagnostics.tail_decay_ratio - lambda_minus), 1e-3, stag));

    AssemblyOptions ao;
    ao.tol = cfg.tol;
    ao.samples_per_edge = cfg.samples_per_edge;
    if (cfg.inject_kirchhoff_fault) {
      ao.ring_flux_factor = 1.0;
      ao.enforce_residual = false;
    }
    const BoundState bs = assemble_profile(orbit, eps, params, ao);
    const double mu = unstable_slope(params);
    out.push_back(at_most("charge_leading_order", std::abs(bs.Q / (2.0 * mu * eps) - 1.0), 0.05, stag));
    out.push_back(at_most("kirchhoff_residual", bs.max_kirchhoff_residual, 1e-8, stag));
  }
}

double eigen_constant(double eps, const GraphParams& params, bool plus) {
  const auto ev = jacobian({0.0, 0.0}, eps, params).eigenvalues();
  const double nu = std::sqrt(band_edge_curvature(params));
  return plus ? (ev[0].real() - 1.0 - eps * nu) / (eps * eps)
              : (ev[1].real() - 1.0 + eps * nu) / (eps * eps);
}

std::array<double, 2> truncation_error(double eps, const GraphParams& params, double tol) {
  const ScaledState s{0.5, 0.2};
  const ScaledState exact = to_scaled(period_map(from_scaled(s, eps), eps, params, tol), eps);
  const ScaledState approx = scaled_map_truncated(s, eps, params);
  return {std::abs(exact.alpha - approx.alpha), std::abs(exact.beta - approx.beta)};
}

void order_checks(std::vector<double> eps_list, const GraphParams& params, std::vector<Check>& out) {
  std::sort(eps_list.begin(), eps_list.end(), std::greater<>());
  for (std::size_t i = 0; i + 1 < eps_list.size(); ++i) {
    const double e1 = eps_list[i], e2 = eps_list[i + 1];
    const std::string tag = eps_tag(e1) + "," + short_number(e2);
    for (bool plus : {true, false}) {
      const double ratio = eigen_constant(e2, params, plus) / eigen_constant(e1, params, plus);
      out.push_back(at_most(plus ? "eigenvalue_constant_plus" : "eigenvalue_constant_minus",
                            std::abs(ratio - 1.0), 0.1, tag));
    }
    const auto t1 = truncation_error(e1, params, 1e-13);
    const auto t2 = truncation_error(e2, params, 1e-13);
    const double scale = std::log(e1 / e2);
    const double order_alpha = std::log(t1[0] / t2[0]) / scale;
    const double order_beta = std::log(t1[1] / t2[1]) / scale;
    out.push_back(make_check("truncation_order_alpha", order_alpha, 3.5, order_alpha >= 3.5, tag));
    out.push_back(make_check("truncation_order_beta", order_beta, 2.5, order_beta >= 2.5, tag));
  }
}

}  // namespace

std::vector<Check> run_checks(const RunConfig& cfg) {
  const GraphParams params(cfg.L);
  std::vector<double> eps_list = cfg.eps_list;
  if (eps_list.empty()) eps_list = {0.02};
  std::vector<Check> out;
  spectral_checks(params, out);
  ode_checks(cfg.tol, out);
  for (double eps : eps_list) per_eps_checks(eps, cfg, params, out);
  if (eps_list.size() >= 2) order_checks(eps_list, params, out);
  return out;
}

Artifact verify_artifact(const std::vector<Check>& checks) {
  Artifact a;
  a.suffix = "verify";
  a.table.columns = {"name", "passed", "value", "threshold", "detail"};
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const Check& c : checks) {
    all = all && c.passed;
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value},
                    {"threshold", c.threshold}, {"detail", c.detail}});
    a.table.rows.push_back({c.name, c.passed ? "1" : "0", format_number(c.value),
                            format_number(c.threshold), c.detail});
  }
  a.data = {{"checks", list}, {"passed", all}};
  return a;
}

}  // namespace necklace::cli
