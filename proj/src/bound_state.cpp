#include "necklace/bound_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "necklace/errors.hpp"
#include "necklace/ode.hpp"
#include "necklace/spectral.hpp"

namespace necklace {

namespace {

void check_samples(int samples_per_edge) {
  if (samples_per_edge < 16 || samples_per_edge % 2 != 0) {
    throw DomainError("samples_per_edge must be even and at least 16, got " +
                      std::to_string(samples_per_edge));
  }
}

struct EdgeRun {
  EdgeSamples samples;
  PhasePoint end;
  double min_psi = 0.0;
  double max_dpsi = 0.0;
};

// Integrates an edge of length len from local position first*len/S and
// samples grid indices first..S.  Lower indices are left empty.
EdgeRun integrate_edge(PhasePoint start, double eps, double origin, double len, int S, int first,
                       double tol, bool record) {
  const double x0 = len * first / S;
  std::vector<double> local;
  if (record) {
    for (int i = first; i <= S; ++i) local.push_back(std::min(len * i / S - x0, len - x0));
  }
  const IvpSolution sol = integrate_ivp(start.psi, start.dpsi, eps, len - x0, tol, local);
  EdgeRun run;
  run.end = sol.end();
  run.min_psi = sol.min_psi;
  run.max_dpsi = sol.max_dpsi;
  if (record) {
    const auto xs = uniform_abscissae(origin, len, S);
    std::size_t k = 0;
    for (int i = first; i <= S; ++i) {
      while (k + 1 < sol.samples.size() && sol.samples[k].x < local[i - first]) ++k;
      run.samples.push_back(xs[i], sol.samples[k].psi, sol.samples[k].dpsi);
    }
  }
  return run;
}

template <typename F>
double simpson(const EdgeSamples& e, F&& f) {
  const std::size_t n = e.size();
  double acc = 0.0;
  if (n < 3 || (n - 1) % 2 != 0) {
    for (std::size_t i = 1; i < n; ++i) {
      acc += 0.5 * (e.x[i] - e.x[i - 1]) * (f(e, i) + f(e, i - 1));
    }
    return acc;
  }
  for (std::size_t i = 0; i + 2 < n; i += 2) {
    const double h = 0.5 * (e.x[i + 2] - e.x[i]);
    acc += h / 3.0 * (f(e, i) + 4.0 * f(e, i + 1) + f(e, i + 2));
  }
  return acc;
}

template <typename F>
double integrate_profile(const PiecewiseProfile& p, F&& f) {
  double acc = 0.0;
  for (const auto& cell : p.cells) {
    acc += simpson(cell.link, f);
    if (p.symmetric_ring || !cell.lower) {
      acc += 2.0 * simpson(cell.upper, f);
    } else {
      acc += simpson(cell.upper, f) + simpson(*cell.lower, f);
    }
  }
  return acc;
}

void fill_observables(BoundState& bs) {
  bs.Q = charge(bs.profile);
  bs.E = energy(bs.profile);
  bs.h2_norm = h2_norm(bs.profile, bs.profile.eps);
  bs.max_kirchhoff_residual = kirchhoff_residual(bs.profile);
}

// Closed-form linear transfer across one edge at rate eps.
Matrix2 hyperbolic_transfer(double eps, double len) {
  const double c = std::cosh(eps * len), s = std::sinh(eps * len);
  return {c, s / eps, eps * s, c};
}

enum class VertexKind { CellStart, Mid };

// Decomposition of vertex data along the eigenvectors of the linear
// transfer to the next vertex of the same kind.  For cell starts the data
// is taken on the link side, for mid vertices on the ring side.
struct TailSplit {
  std::array<double, 2> stable;
  std::array<double, 2> unstable;

  static TailSplit at(VertexKind kind, double eps, const GraphParams& params) {
    const Matrix2 TL = hyperbolic_transfer(eps, params.link_length());
    const Matrix2 TP = hyperbolic_transfer(eps, kPi);
    const Matrix2 up = Matrix2::diagonal(1.0, 2.0), down = Matrix2::diagonal(1.0, 0.5);
    const Matrix2 M = kind == VertexKind::CellStart ? up * TP * down * TL : down * TL * up * TP;
    const auto ev = M.eigenvalues();
    TailSplit t{M.eigenvector(ev[1].real()), M.eigenvector(ev[0].real())};
    if (t.stable[0] < 0.0) t.stable = {-t.stable[0], -t.stable[1]};
    if (t.unstable[0] < 0.0) t.unstable = {-t.unstable[0], -t.unstable[1]};
    return t;
  }

  // Coefficients (u_s, u_u) of v = u_s * stable + u_u * unstable.
  std::array<double, 2> coefficients(PhasePoint v) const {
    const double det = stable[0] * unstable[1] - stable[1] * unstable[0];
    return {(v.psi * unstable[1] - v.dpsi * unstable[0]) / det,
            (stable[0] * v.dpsi - stable[1] * v.psi) / det};
  }
};

enum class Verdict { Over, Under, Decayed, Undecided };

struct EdgeStep {
  EdgeRef ref;
  int first = 0;  // first sampled grid index (nonzero only for the half edge at the centre)
};

struct HalfTrajectory {
  Verdict verdict = Verdict::Undecided;
  /// Relative slope mismatch against the stable manifold at the handover vertex.
  double mismatch = 0.0;
  std::vector<std::pair<EdgeStep, EdgeSamples>> edges;
};

constexpr double kSwitchLevel = 1e-4;

std::vector<EdgeStep> outward_steps(OrbitSymmetry symmetry, int n_cells, int S) {
  std::vector<EdgeStep> steps;
  if (symmetry == OrbitSymmetry::LinkCentered) {
    steps.push_back({{CellIndex{0}, EdgeKind::Link}, S / 2});
    steps.push_back({{CellIndex{0}, EdgeKind::SemicircleUpper}, 0});
  } else {
    steps.push_back({{CellIndex{0}, EdgeKind::SemicircleUpper}, S / 2});
  }
  for (std::int64_t n = 1; n <= n_cells; ++n) {
    steps.push_back({{CellIndex{n}, EdgeKind::Link}, 0});
    steps.push_back({{CellIndex{n}, EdgeKind::SemicircleUpper}, 0});
  }
  return steps;
}

struct TailSweep {
  PhasePoint start;  // outgoing data at the handover vertex
  std::vector<EdgeSamples> edges;
};

// Decaying solution on steps[from..] whose value at the start of steps[from]
// equals phi.  Built by integrating towards the centre from a small state on
// the linear stable direction at the far end, which is the stable direction
// of integration.
TailSweep stable_tail(const std::vector<EdgeStep>& steps, std::size_t from, double phi,
                      double eps, const GraphParams& params, int S, double tol, bool record) {
  const TailSplit far = TailSplit::at(VertexKind::CellStart, eps, params);
  // Linear estimate of the far-end amplitude, then fixed-point refinement.
  Matrix2 back = Matrix2::identity();
  for (std::size_t k = steps.size(); k-- > from;) {
    const double len = edge_length(steps[k].ref.kind, params);
    const double c = std::cosh(eps * len), s = std::sinh(eps * len);
    const Matrix2 inv{c, -s / eps, -eps * s, c};
    const bool ring = steps[k].ref.kind != EdgeKind::Link;
    // Outgoing data of the edge end -> incoming data at the edge start.
    const Matrix2 rule = ring ? Matrix2::diagonal(1.0, 0.5) : Matrix2::diagonal(1.0, 2.0);
    back = inv * rule * back;
  }
  const auto w = back.apply(far.stable);
  double amp = phi / w[0];

  TailSweep out;
  for (int iter = 0; iter < 50; ++iter) {
    out.edges.assign(steps.size() - from, EdgeSamples{});
    PhasePoint v{amp * far.stable[0], amp * far.stable[1]};
    for (std::size_t k = steps.size(); k-- > from;) {
      const bool ring = steps[k].ref.kind != EdgeKind::Link;
      // Data just inside the edge end: a ring end carries half the link flux.
      const PhasePoint end{v.psi, ring ? 0.5 * v.dpsi : 2.0 * v.dpsi};
      const double len = edge_length(steps[k].ref.kind, params);
      // Reverse the edge so the integration runs towards the centre.
      EdgeRun run = integrate_edge({end.psi, -end.dpsi}, eps, edge_origin(steps[k].ref, params),
                                   len, S, 0, tol, record);
      if (record) {
        EdgeSamples& e = out.edges[k - from];
        const auto xs = uniform_abscissae(edge_origin(steps[k].ref, params), len, S);
        for (int i = 0; i <= S; ++i) {
          const std::size_t j = static_cast<std::size_t>(S - i);
          e.push_back(xs[i], run.samples.phi[j], -run.samples.dphi[j]);
        }
      }
      v = {run.end.psi, -run.end.dpsi};
    }
    out.start = v;
    const double rel = std::abs(v.psi - phi) / std::abs(phi);
    amp *= phi / v.psi;
    if (rel <= 1e-15) break;
  }
  return out;
}

// Outward integration from the symmetry centre along the right half.
HalfTrajectory shoot_half(double phi0, double eps, const GraphParams& params,
                          OrbitSymmetry symmetry, int n_cells, int S, double tol, bool record) {
  const std::vector<EdgeStep> steps = outward_steps(symmetry, n_cells, S);
  const double ahead = std::exp(eps * (params.link_length() + kPi));

  HalfTrajectory out;
  PhasePoint v{phi0, 0.0};
  double growth = 1.0;  // amplification of integration error so far
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    const EdgeStep& step = steps[k];
    const double len = edge_length(step.ref.kind, params);
    EdgeRun run = integrate_edge(v, eps, edge_origin(step.ref, params), len, S, step.first, tol,
                                 record);
    if (run.min_psi < 0.0) {
      out.verdict = Verdict::Over;
      return out;
    }
    if (run.max_dpsi > 0.0 || std::abs(run.end.psi) > 10.0 * phi0) {
      out.verdict = Verdict::Under;
      return out;
    }
    if (record) out.edges.emplace_back(step, std::move(run.samples));

    // Vertex rule: the link flux splits in two entering a ring, merges leaving it.
    const bool into_ring = step.ref.kind == EdgeKind::Link;
    v = {run.end.psi, run.end.dpsi * (into_ring ? 0.5 : 2.0)};
    growth *= std::exp(eps * (step.first > 0 ? 0.5 * len : len));

    // Hand over to the stable tail once the state is small, or earlier when
    // error growth over the next cell would swamp the decaying solution.
    const double level = std::abs(v.psi) / phi0;
    if (level >= kSwitchLevel && tol * growth * ahead * ahead <= 1e-3 * level) continue;

    TailSweep tail = stable_tail(steps, k + 1, v.psi, eps, params, S, tol, record);
    const double diff = v.dpsi - tail.start.dpsi;
    out.mismatch = std::abs(diff) / std::max(std::abs(tail.start.dpsi), 1e-300);
    if (!record) {
      // A shallower slope than the manifold turns back up; a steeper one crosses zero.
      out.verdict = diff > 0.0 ? Verdict::Under : diff < 0.0 ? Verdict::Over : Verdict::Decayed;
      return out;
    }
    out.verdict = Verdict::Decayed;
    for (std::size_t j = k + 1; j < steps.size(); ++j) {
      out.edges.emplace_back(steps[j], std::move(tail.edges[j - k - 1]));
    }
    return out;
  }
  return out;
}

EdgeSamples mirrored(const EdgeSamples& src, double origin, double len, int S) {
  EdgeSamples out;
  const auto xs = uniform_abscissae(origin, len, S);
  for (int i = 0; i <= S; ++i) {
    const std::size_t j = static_cast<std::size_t>(S - i);
    out.push_back(xs[i], src.phi[j], -src.dphi[j]);
  }
  return out;
}

// Completes a half-sampled centre edge: indices below S/2 from their mirrors.
EdgeSamples complete_centre(const EdgeSamples& half, double origin, double len, int S) {
  EdgeSamples out;
  const auto xs = uniform_abscissae(origin, len, S);
  const int h = S / 2;
  for (int i = 0; i <= S; ++i) {
    const std::size_t j = static_cast<std::size_t>(i >= h ? i - h : S - i - h);
    out.push_back(xs[i], half.phi[j], i >= h ? half.dphi[j] : -half.dphi[j]);
  }
  return out;
}

}  // namespace

BoundState assemble_profile(const Orbit& orbit, double eps, const GraphParams& params,
                            const AssemblyOptions& options) {
  check_samples(options.samples_per_edge);
  if (orbit.states.size() != orbit.mid_states.size()) {
    throw DomainError("assemble_profile: orbit states and mid states differ in length");
  }
  const int S = options.samples_per_edge;
  BoundState bs{PiecewiseProfile{params, eps, {}, true}};
  bs.symmetry = orbit.symmetry;
  bs.lambda = -eps * eps;
  bs.source = ProfileSource::FromOrbit;
  for (std::int64_t n = orbit.n_first; n <= orbit.n_last(); ++n) {
    CellSamples cell;
    cell.cell = CellIndex{n};
    const MapState& a = orbit.state(n);
    const MapState& c = orbit.mid(n);
    cell.link = integrate_edge({a.a, a.b}, eps, edge_origin({cell.cell, EdgeKind::Link}, params),
                               params.link_length(), S, 0, options.tol, true)
                    .samples;
    // c_n, d_n already carry the factor 1/2; ring_flux_factor rescales it.
    const double d = c.b * options.ring_flux_factor / 0.5;
    cell.upper = integrate_edge({c.a, d}, eps,
                                edge_origin({cell.cell, EdgeKind::SemicircleUpper}, params), kPi,
                                S, 0, options.tol, true)
                     .samples;
    bs.profile.cells.push_back(std::move(cell));
  }
  if (!orbit.states.empty()) {
    const std::int64_t centre = 0;
    if (centre >= orbit.n_first && centre <= orbit.n_last()) {
      const auto* cell = bs.profile.find(CellIndex{centre});
      bs.phi0 = orbit.symmetry == OrbitSymmetry::LinkCentered ? cell->link.phi[S / 2]
                                                              : cell->upper.phi[S / 2];
    }
  }
  fill_observables(bs);
  if (options.enforce_residual && bs.max_kirchhoff_residual > options.residual_tol) {
    throw AssemblyError("assemble_profile: vertex residual " +
                        std::to_string(bs.max_kirchhoff_residual) + " exceeds tolerance " +
                        std::to_string(options.residual_tol));
  }
  return bs;
}

BoundState shoot_bound_state(double lambda, const GraphParams& params, OrbitSymmetry symmetry,
                             const ShootingOptions& options) {
  if (!(lambda < 0.0)) throw DomainError("shoot_bound_state: lambda must be negative");
  check_samples(options.samples_per_edge);
  const double eps = std::sqrt(-lambda);
  const double nu = std::sqrt(band_edge_curvature(params));
  const int n_cells = options.n_cells > 0
                          ? options.n_cells
                          : std::max(3, static_cast<int>(std::ceil(30.0 / (eps * nu))));
  const int S = options.samples_per_edge;
  double lo = options.phi0_lo > 0.0 ? options.phi0_lo : 1.01 * eps / std::sqrt(2.0);
  double hi = options.phi0_hi > 0.0 ? options.phi0_hi : 5.0 * eps;
  if (!(lo < hi)) throw BracketError("shoot_bound_state: empty phi0 bracket");

  auto classify = [&](double phi0) {
    const Verdict v =
        shoot_half(phi0, eps, params, symmetry, n_cells, S, options.tol, false).verdict;
    if (v == Verdict::Undecided) {
      throw UndecidableError("shoot_bound_state: trial phi0 = " + std::to_string(phi0) +
                             " neither diverged nor decayed within " + std::to_string(n_cells) +
                             " cells; increase n_cells");
    }
    return v;
  };
  const Verdict v_lo = classify(lo), v_hi = classify(hi);
  double phi0 = 0.0;
  if (v_lo == Verdict::Decayed) {
    phi0 = lo;
  } else if (v_hi == Verdict::Decayed) {
    phi0 = hi;
  } else if (v_lo != Verdict::Under || v_hi != Verdict::Over) {
    throw BracketError("shoot_bound_state: phi0 bracket [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] does not separate undershoot from overshoot");
  } else {
    for (int iter = 0;; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi || iter >= options.max_iter) break;
      const Verdict v = classify(mid);
      if (v == Verdict::Decayed) {
        lo = hi = mid;
        break;
      }
      (v == Verdict::Under ? lo : hi) = mid;
    }
    phi0 = 0.5 * (lo + hi);
  }

  HalfTrajectory half = shoot_half(phi0, eps, params, symmetry, n_cells, S, options.tol, true);
  if (half.verdict != Verdict::Decayed || half.mismatch > 1e-3) {
    throw ConvergenceError("shoot_bound_state: bisection collapsed without a decaying trajectory "
                           "(slope mismatch " + std::to_string(half.mismatch) + ")");
  }

  // Right half as computed, left half by reflection through the centre.
  std::map<std::pair<std::int64_t, int>, EdgeSamples> edges;
  auto key = [](EdgeRef r) { return std::make_pair(r.cell.value, r.kind == EdgeKind::Link ? 0 : 1); };
  for (auto& [step, samples] : half.edges) {
    const double len = edge_length(step.ref.kind, params);
    const double origin = edge_origin(step.ref, params);
    if (step.first > 0) {
      edges[key(step.ref)] = complete_centre(samples, origin, len, S);
    } else {
      edges[key(step.ref)] = std::move(samples);
    }
  }
  const bool link_c = symmetry == OrbitSymmetry::LinkCentered;
  for (std::int64_t n = 0; n <= n_cells; ++n) {
    // Link centre: link n <-> link -n, ring n <-> ring -n-1.
    // Ring centre: ring n <-> ring -n, link n <-> link 1-n.
    const EdgeRef link_src{CellIndex{n}, EdgeKind::Link};
    const EdgeRef link_dst{CellIndex{link_c ? -n : 1 - n}, EdgeKind::Link};
    const EdgeRef ring_src{CellIndex{n}, EdgeKind::SemicircleUpper};
    const EdgeRef ring_dst{CellIndex{link_c ? -n - 1 : -n}, EdgeKind::SemicircleUpper};
    if (edges.count(key(link_src)) && !edges.count(key(link_dst))) {
      edges[key(link_dst)] = mirrored(edges[key(link_src)], edge_origin(link_dst, params),
                                      params.link_length(), S);
    }
    if (edges.count(key(ring_src)) && !edges.count(key(ring_dst))) {
      edges[key(ring_dst)] = mirrored(edges[key(ring_src)], edge_origin(ring_dst, params), kPi, S);
    }
  }

  BoundState bs{PiecewiseProfile{params, eps, {}, true}};
  bs.symmetry = symmetry;
  bs.lambda = lambda;
  bs.source = ProfileSource::DirectShooting;
  bs.phi0 = phi0;
  const std::int64_t n_lo = link_c ? -n_cells : 1 - n_cells;
  for (std::int64_t n = n_lo; n <= n_cells; ++n) {
    CellSamples cell;
    cell.cell = CellIndex{n};
    cell.link = edges.at({n, 0});
    cell.upper = edges.at({n, 1});
    bs.profile.cells.push_back(std::move(cell));
  }
  fill_observables(bs);
  return bs;
}

double charge(const PiecewiseProfile& profile) {
  return integrate_profile(profile, [](const EdgeSamples& e, std::size_t i) {
    return e.phi[i] * e.phi[i];
  });
}

double energy(const PiecewiseProfile& profile) {
  return integrate_profile(profile, [](const EdgeSamples& e, std::size_t i) {
    const double p2 = e.phi[i] * e.phi[i];
    return e.dphi[i] * e.dphi[i] - p2 * p2;
  });
}

double stationarity_defect(const PiecewiseProfile& profile) {
  const double eps2 = profile.eps * profile.eps;
  return integrate_profile(profile, [eps2](const EdgeSamples& e, std::size_t i) {
    const double p2 = e.phi[i] * e.phi[i];
    return e.dphi[i] * e.dphi[i] + eps2 * p2 - 2.0 * p2 * p2;
  });
}

double h2_norm(const PiecewiseProfile& profile, double eps) {
  const double eps2 = eps * eps;
  const double sq = integrate_profile(profile, [eps2](const EdgeSamples& e, std::size_t i) {
    const double p = e.phi[i];
    const double dd = eps2 * p - 2.0 * p * p * p;
    return p * p + e.dphi[i] * e.dphi[i] + dd * dd;
  });
  return std::sqrt(std::max(0.0, sq));
}

double kirchhoff_residual(const PiecewiseProfile& profile) {
  double worst = 0.0;
  const auto& cells = profile.cells;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const CellSamples& c = cells[k];
    const double l_end = c.link.phi.back(), dl_end = c.link.dphi.back();
    if (profile.symmetric_ring || !c.lower) {
      worst = std::max(worst, std::abs(l_end - c.upper.phi.front()) +
                                  std::abs(dl_end - 2.0 * c.upper.dphi.front()));
    } else {
      const EdgeSamples& lo = *c.lower;
      worst = std::max(worst, std::abs(l_end - c.upper.phi.front()) +
                                  std::abs(l_end - lo.phi.front()) +
                                  std::abs(dl_end - c.upper.dphi.front() - lo.dphi.front()));
    }
    if (k + 1 == cells.size()) break;
    const EdgeSamples& next = cells[k + 1].link;
    if (profile.symmetric_ring || !c.lower) {
      worst = std::max(worst, std::abs(c.upper.phi.back() - next.phi.front()) +
                                  std::abs(2.0 * c.upper.dphi.back() - next.dphi.front()));
    } else {
      const EdgeSamples& lo = *c.lower;
      worst = std::max(worst, std::abs(c.upper.phi.back() - next.phi.front()) +
                                  std::abs(lo.phi.back() - next.phi.front()) +
                                  std::abs(c.upper.dphi.back() + lo.dphi.back() - next.dphi.front()));
    }
  }
  return worst;
}

double mirror_defect(const PiecewiseProfile& profile, OrbitSymmetry symmetry) {
  double worst = 0.0;
  auto compare = [&](const EdgeSamples& x, const EdgeSamples& y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw DomainError("mirror_defect: mirror edges sampled differently");
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = n - 1 - i;
      worst = std::max(worst, std::abs(x.phi[i] - y.phi[j]) + std::abs(x.dphi[i] + y.dphi[j]));
    }
  };
  const bool link_c = symmetry == OrbitSymmetry::LinkCentered;
  for (const auto& cell : profile.cells) {
    const std::int64_t n = cell.cell.value;
    if (const auto* m = profile.find(CellIndex{link_c ? -n : 1 - n})) compare(cell.link, m->link);
    if (const auto* m = profile.find(CellIndex{link_c ? -n - 1 : -n})) compare(cell.upper, m->upper);
  }
  return worst;
}

std::vector<double> cell_sup(const PiecewiseProfile& profile) {
  std::vector<double> out;
  for (const auto& cell : profile.cells) {
    double s = 0.0;
    for (double v : cell.link.phi) s = std::max(s, std::abs(v));
    for (double v : cell.upper.phi) s = std::max(s, std::abs(v));
    if (cell.lower) {
      for (double v : cell.lower->phi) s = std::max(s, std::abs(v));
    }
    out.push_back(s);
  }
  return out;
}

double sup_difference(const PiecewiseProfile& x, const PiecewiseProfile& y) {
  double worst = 0.0;
  auto diff = [&](const EdgeSamples& p, const EdgeSamples& q) {
    if (p.size() != q.size()) throw DomainError("sup_difference: profiles sampled differently");
    for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p.phi[i] - q.phi[i]));
  };
  for (const auto& cell : x.cells) {
    const auto* other = y.find(cell.cell);
    if (!other) continue;
    diff(cell.link, other->link);
    diff(cell.upper, other->upper);
  }
  return worst;
}

FamilyComparison compare_families(double eps, const GraphParams& params,
                                  const AssemblyOptions& options,
                                  const HomoclinicOptions& orbit_options) {
  const BoundState link = assemble_profile(
      shoot_homoclinic(eps, params, OrbitSymmetry::LinkCentered, orbit_options), eps, params, options);
  const BoundState ring = assemble_profile(
      shoot_homoclinic(eps, params, OrbitSymmetry::RingCentered, orbit_options), eps, params, options);
  FamilyComparison fc;
  fc.Q_link = link.Q;
  fc.Q_ring = ring.Q;
  fc.E_link = link.E;
  fc.E_ring = ring.E;
  fc.dQ_rel = std::abs(link.Q - ring.Q) / (0.5 * (link.Q + ring.Q));
  return fc;
}

}  // namespace necklace
