// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "necklace/bound_state.hpp"
#include "necklace/discrete_map.hpp"
#include "necklace/errors.hpp"
#include "necklace/homoclinic.hpp"
#include "necklace/ode.hpp"
#include "necklace/spectral.hpp"

using namespace necklace;

namespace {

// Halving rule for "C stable": successive constants may drift by at most 25%.
constexpr double kStableRatio = 1.25;

struct Report {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    pass = pass && ok;
  }
  void note(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string("info ") + buf);
  }
};

const char* name(OrbitSymmetry s) { return s == OrbitSymmetry::LinkCentered ? "link" : "ring"; }

bool stable(const std::vector<double>& c) {
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double r = c[i] / c[i - 1];
    if (!(r <= kStableRatio && r >= 1.0 / kStableRatio)) return false;
  }
  return true;
}

void bands(Report& r) {
  const GraphParams p(kPi / 2);
  const auto bs = find_bands(p, 6.0, 4000);
  r.check(!bs.empty() && bs.front().omega_lo == 0.0, "lowest band starts at omega = %g",
          bs.empty() ? -1.0 : bs.front().omega_lo);
  for (int m = 1; m <= 5; ++m) {
    const double err = std::abs(trace(m, p) - 2.0 * std::pow(-1.0, m) * std::cos(m * p.link_length()));
    r.check(err <= 1e-12, "m=%d  |T(m) - 2(-1)^m cos(mL)| = %.2e", m, err);
    const FlatBand f = classify_flat_band(m, p);
    const bool want_edge = m % 2 == 0;
    r.check((f.location == FlatBandLocation::Edge) == want_edge, "m=%d  classified %s", m,
            f.location == FlatBandLocation::Edge ? "Edge" : "Interior");
    bool inside = false;
    for (const Band& b : bs) inside = inside || (m >= b.omega_lo - 1e-10 && m <= b.omega_hi + 1e-10);
    r.check(inside && f.host_band_index > 0, "m=%d  lambda=%d lies in band %d", m, m * m, f.host_band_index);
  }
}

void curvature(Report& r) {
  for (double L : {kPi / 2, kPi}) {
    const GraphParams p(L);
    double num = 0.0, den = 0.0;
    for (double theta : {0.05, 0.1, 0.2}) {
      const double t2 = theta * theta;
      num += lowest_band_lambda(theta, p) * t2;
      den += t2 * t2;
    }
    const double fit = num / den;
    const double expect = 1.0 / ((L + kPi / 2) * (L + 2 * kPi));
    const double rel = std::abs(fit / expect - 1.0);
    r.check(rel <= 1e-2, "L=%.4f  fitted %.6e vs nu^-2 %.6e, rel %.2e", L, fit, expect, rel);
  }
}

void ode(Report& r) {
  const double eps = 0.1, x_end = 10.0 / eps;
  std::vector<double> xs;
  for (int i = 0; i <= 1000; ++i) xs.push_back(x_end * i / 1000.0);
  const IvpSolution sol = integrate_ivp(eps, 0.0, eps, x_end, 1e-10, xs);
  double err = 0.0;
  for (const OdeSample& s : sol.samples) err = std::max(err, std::abs(s.psi - eps / std::cosh(eps * s.x)));
  r.check(err <= 1e-8, "sup |psi - eps sech(eps x)| on [0, 10/eps] = %.2e", err);
  r.check(sol.invariant_drift <= 1e-10, "invariant drift %.2e", sol.invariant_drift);
  const double c = eps / std::sqrt(2.0);
  const PhasePoint q = propagate({c, 0.0}, eps, x_end, 1e-10);
  const double cerr = std::abs(q.psi - c) + std::abs(q.dpsi);
  r.check(cerr <= 1e-10, "constant solution error %.2e", cerr);
}

void map_structure(Report& r) {
  const GraphParams p(kPi / 2);
  const double nu = std::sqrt(band_edge_curvature(p));
  std::vector<double> cp, cm;
  for (double eps : {0.04, 0.02, 0.01}) {
    const double c = eps / std::sqrt(2.0);
    double fp = 0.0;
    for (MapState s : {MapState{0, 0}, MapState{c, 0}}) {
      const MapState y = period_map(s, eps, p);
      fp = std::max(fp, std::hypot(y.a - s.a, y.b - s.b));
    }
    r.check(fp <= 1e-9, "eps=%.2f  fixed points moved by %.2e", eps, fp);
    double det = 0.0;
    for (ScaledState s : {ScaledState{0, 0}, ScaledState{0.5, 0.5}, ScaledState{1.0, -0.3},
                          ScaledState{-0.8, 0.2}, ScaledState{0.7, 0.0}}) {
      det = std::max(det, std::abs(jacobian(from_scaled(s, eps), eps, p).det() - 1.0));
    }
    r.check(det <= 1e-6, "eps=%.2f  max |det J - 1| over five points = %.2e", eps, det);
    const Matrix2 J = jacobian({0, 0}, eps, p);
    const double terr = std::abs(J.trace() - trace_hyperbolic(eps, p));
    r.check(terr <= 1e-6, "eps=%.2f  |tr J - T_h| = %.2e", eps, terr);
    const auto ev = J.eigenvalues();
    cp.push_back(std::abs(ev[0].real() - 1.0 - eps * nu) / (eps * eps));
    cm.push_back(std::abs(ev[1].real() - 1.0 + eps * nu) / (eps * eps));
  }
  r.check(stable(cp), "C+ = %.4f, %.4f, %.4f", cp[0], cp[1], cp[2]);
  r.check(stable(cm), "C- = %.4f, %.4f, %.4f", cm[0], cm[1], cm[2]);
}

void homoclinic(Report& r) {
  const GraphParams p(kPi / 2);
  const double nu = std::sqrt(band_edge_curvature(p));
  for (OrbitSymmetry sym : {OrbitSymmetry::LinkCentered, OrbitSymmetry::RingCentered}) {
    std::vector<double> c_l2;
    std::vector<int> tail_index;
    for (double eps : {0.04, 0.02}) {
      Orbit o;
      try {
        o = shoot_homoclinic(eps, p, sym);
      } catch (const Error& e) {
        r.check(false, "%s eps=%.2f  no orbit: %s", name(sym), eps, e.what());
        continue;
      }
      const OrbitDiagnostics& d = o.diagnostics;
      r.check(true, "%s eps=%.2f  orbit found on n = %lld..%lld", name(sym), eps,
              static_cast<long long>(o.n_first), static_cast<long long>(o.n_last()));
      r.check(d.all_positive, "%s eps=%.2f  all alpha_n > 0", name(sym), eps);
      const double target = 1.0 - eps * nu;
      const double lambda_minus = jacobian({0, 0}, eps, p).eigenvalues()[1].real();
      r.check(std::abs(d.tail_decay_ratio - target) <= 1e-3,
              "%s eps=%.2f  tail ratio %.6f vs 1 - eps nu = %.6f (diff %.2e)", name(sym), eps,
              d.tail_decay_ratio, target, std::abs(d.tail_decay_ratio - target));
      r.note("%s eps=%.2f  tail ratio vs exact lambda_- = %.6f: diff %.2e", name(sym), eps, lambda_minus,
             std::abs(d.tail_decay_ratio - lambda_minus));
      tail_index.push_back(d.monotone_tail_index);
      c_l2.push_back(d.l2_distance_to_sech / eps);
      r.note("%s eps=%.2f  l2 distance %.4e, X0 = %.4e", name(sym), eps, d.l2_distance_to_sech, d.sech_shift);
    }
    if (tail_index.size() == 2) {
      r.check(tail_index[0] == tail_index[1], "%s  monotone tails outside N = %d, %d", name(sym),
              tail_index[0], tail_index[1]);
      r.check(stable(c_l2), "%s  l2 distance / eps = %.4f, %.4f (ratio %.3f)", name(sym), c_l2[0],
              c_l2[1], c_l2[1] / c_l2[0]);
      r.note("%s  l2 distance / sqrt(eps) = %.4f, %.4f", name(sym), c_l2[0] * std::sqrt(0.04),
             c_l2[1] * std::sqrt(0.02));
    }
  }
}

void bound_states(Report& r) {
  const GraphParams p(kPi);
  const double eps = 0.1;
  for (OrbitSymmetry sym : {OrbitSymmetry::LinkCentered, OrbitSymmetry::RingCentered}) {
    const BoundState a = assemble_profile(shoot_homoclinic(eps, p, sym), eps, p);
    const BoundState s = shoot_bound_state(-eps * eps, p, sym);
    r.check(a.profile.min_value() > 0.0 && s.profile.min_value() > 0.0,
            "%s  min phi = %.3e (orbit), %.3e (shooting)", name(sym), a.profile.min_value(),
            s.profile.min_value());
    const double mirror = std::max(mirror_defect(a.profile, sym), mirror_defect(s.profile, sym));
    r.check(mirror <= 1e-8, "%s  mirror defect %.2e", name(sym), mirror);
    const double res = std::max(a.max_kirchhoff_residual, s.max_kirchhoff_residual);
    r.check(res <= 1e-8, "%s  Kirchhoff residual %.2e", name(sym), res);
    const double sup = sup_difference(a.profile, s.profile);
    r.check(sup <= 1e-6, "%s  orbit vs shooting sup difference %.2e", name(sym), sup);

    std::vector<double> ratio;
    for (double e : {0.08, 0.04, 0.02}) {
      const BoundState b = assemble_profile(shoot_homoclinic(e, p, sym), e, p);
      ratio.push_back(b.h2_norm / e);
    }
    r.check(stable(ratio), "%s  h2_norm/eps = %.4f, %.4f, %.4f", name(sym), ratio[0], ratio[1], ratio[2]);
    r.note("%s  h2_norm/sqrt(eps) = %.4f, %.4f, %.4f", name(sym), ratio[0] * std::sqrt(0.08),
           ratio[1] * std::sqrt(0.04), ratio[2] * std::sqrt(0.02));
  }
}

void mass(Report& r) {
  const GraphParams p(kPi / 2);
  const double mu = unstable_slope(p);
  const double eps = 0.05;
  const FamilyComparison c = compare_families(eps, p);
  r.check(std::abs(c.Q_link / (2 * mu * eps) - 1.0) <= 0.05, "link  Q/(2 mu eps) = %.5f", c.Q_link / (2 * mu * eps));
  r.check(std::abs(c.Q_ring / (2 * mu * eps) - 1.0) <= 0.05, "ring  Q/(2 mu eps) = %.5f", c.Q_ring / (2 * mu * eps));
  r.check(c.dQ_rel <= 1e-2, "dQ_rel(0.05) = %.3e", c.dQ_rel);

  // Resolution of Q: relative change under a tighter tolerance and a finer grid.
  AssemblyOptions fine;
  fine.tol = 1e-12;
  fine.samples_per_edge = 128;
  HomoclinicOptions fine_orbit;
  fine_orbit.tol = 1e-12;
  double floor = 0.0;
  const FamilyComparison half = compare_families(eps / 2, p);
  for (double e : {eps, eps / 2}) {
    const FamilyComparison base = e == eps ? c : half;
    const FamilyComparison ref = compare_families(e, p, fine, fine_orbit);
    floor = std::max({floor, std::abs(base.Q_link / ref.Q_link - 1.0), std::abs(base.Q_ring / ref.Q_ring - 1.0)});
  }
  const double delta = 10.0 * floor;
  r.note("Q resolution floor (10x default-vs-refined change) = %.2e", delta);
  r.check(half.dQ_rel <= std::max(c.dQ_rel / 4.0, delta), "dQ_rel(0.025) = %.3e vs dQ_rel(0.05)/4 = %.3e",
          half.dQ_rel, c.dQ_rel / 4.0);
  const FamilyComparison quarter = compare_families(eps / 4, p);
  r.note("dQ_rel(0.0125) = %.3e", quarter.dQ_rel);
}

void large_lambda(Report& r) {
  const GraphParams p(kPi);
  for (OrbitSymmetry sym : {OrbitSymmetry::LinkCentered, OrbitSymmetry::RingCentered}) {
    std::optional<BoundState> found;
    try {
      found = shoot_bound_state(-10.0, p, sym);
    } catch (const Error& e) {
      r.check(false, "%s  shooting failed: %s", name(sym), e.what());
      continue;
    }
    const BoundState& b = *found;
    const auto sup = cell_sup(b.profile);
    const double peak = *std::max_element(sup.begin(), sup.end());
    double outer = 0.0;
    for (std::size_t i = 0; i < sup.size(); ++i) {
      const std::int64_t n = b.profile.n_min().value + static_cast<std::int64_t>(i);
      if (n >= 2 || n <= -2) outer = std::max(outer, sup[i]);
    }
    r.check(true, "%s  shooting succeeded, phi0 = %.6f, Kirchhoff residual %.2e", name(sym), b.phi0,
            b.max_kirchhoff_residual);
    r.check(outer < 1e-3 * peak, "%s  sup over |n| >= 2 is %.2e of the peak", name(sym), outer / peak);
  }
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Report&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "band structure at L = pi/2", 1.0, bands},
      {2, "band-edge curvature", 1.0, curvature},
      {3, "ODE oracles", 1.0, ode},
      {4, "map structure", 5.0, map_structure},
      {5, "homoclinic orbits", 60.0, homoclinic},
      {6, "bound states at eps = 0.1, L = pi", 60.0, bound_states},
      {7, "mass asymptotics", 120.0, mass},
      {8, "large |Lambda| regime", 10.0, large_lambda},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.check(false, "unexpected error: %s", e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.check(dt < c.budget_s, "runtime %.3f s (budget %g s)", dt, c.budget_s);
    std::printf("%s criterion %d: %s\n", r.pass ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& line : r.lines) std::printf("    %s\n", line.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
