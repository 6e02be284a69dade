#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>

#include "cli/verify.hpp"
#include "necklace/bound_state.hpp"
#include "necklace/errors.hpp"
#include "necklace/spectral.hpp"

namespace necklace::cli {

namespace {

using nlohmann::json;

std::string edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Link: return "link";
    case EdgeKind::SemicircleUpper: return "upper";
    case EdgeKind::SemicircleLower: return "lower";
  }
  return "?";
}

std::vector<std::string> row(std::initializer_list<double> values) {
  std::vector<std::string> r;
  for (double v : values) r.push_back(format_number(v));
  return r;
}

json orbit_rows(const Orbit& orbit, Table& table) {
  table.columns = {"n", "alpha", "beta", "gamma", "delta"};
  json rows = json::array();
  const double eps = orbit.eps;
  for (std::int64_t n = orbit.n_first; n <= orbit.n_last(); ++n) {
    const ScaledState s = to_scaled(orbit.state(n), eps);
    const ScaledState m = to_scaled(orbit.mid(n), eps);
    rows.push_back({{"n", n}, {"alpha", s.alpha}, {"beta", s.beta}, {"gamma", m.alpha}, {"delta", m.beta}});
    table.rows.push_back(row({static_cast<double>(n), s.alpha, s.beta, m.alpha, m.beta}));
    table.rows.back()[0] = std::to_string(n);
  }
  return rows;
}

json diagnostics_json(const OrbitDiagnostics& d) {
  return {{"all_positive", d.all_positive},
          {"monotone_tail_index", d.monotone_tail_index},
          {"tail_decay_ratio", d.tail_decay_ratio},
          {"backward_tail_ratio", d.backward_tail_ratio},
          {"l2_distance_to_sech", d.l2_distance_to_sech},
          {"sech_shift", d.sech_shift},
          {"max_state_norm", d.max_state_norm}};
}

json profile_json(const BoundState& bs, Table* table) {
  const PiecewiseProfile& p = bs.profile;
  json edges = json::array();
  json vertices = json::array();
  std::vector<double> xs;
  auto add_edge = [&](const EdgeSamples& e, EdgeKind kind, std::int64_t cell) {
    edges.push_back({{"edge_kind", edge_kind_name(kind)}, {"cell", cell}, {"x", e.x},
                     {"phi", e.phi}, {"dphi", e.dphi}});
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (table) {
        table->rows.push_back({edge_kind_name(kind), std::to_string(cell), format_number(e.x[i]),
                               format_number(e.phi[i]), format_number(e.dphi[i])});
      }
      if (kind != EdgeKind::SemicircleLower) xs.push_back(e.x[i]);
    }
  };
  if (table) table->columns = {"edge_kind", "cell", "x", "phi", "dphi"};
  for (const auto& cell : p.cells) {
    add_edge(cell.link, EdgeKind::Link, cell.cell.value);
    add_edge(cell.upper, EdgeKind::SemicircleUpper, cell.cell.value);
    if (cell.lower) add_edge(*cell.lower, EdgeKind::SemicircleLower, cell.cell.value);
    vertices.push_back({{"x", cell.link.x.front()}, {"phi", cell.link.phi.front()}});
    vertices.push_back({{"x", cell.upper.x.front()}, {"phi", cell.upper.phi.front()}});
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const double eps = p.eps;
  const double x0 = bs.symmetry == OrbitSymmetry::LinkCentered ? 0.5 * p.params.link_length()
                                                               : p.params.link_length() + 0.5 * kPi;
  std::vector<double> sech;
  for (double x : xs) sech.push_back(eps / std::cosh(eps * (x - x0)));

  return {{"source", bs.source == ProfileSource::FromOrbit ? "orbit" : "shooting"},
          {"symmetry", short_name(bs.symmetry)},
          {"lambda", bs.lambda},
          {"eps", eps},
          {"phi0", bs.phi0},
          {"Q", bs.Q},
          {"E", bs.E},
          {"h2_norm", bs.h2_norm},
          {"max_kirchhoff_residual", bs.max_kirchhoff_residual},
          {"mirror_defect", mirror_defect(p, bs.symmetry)},
          {"stationarity_defect", stationarity_defect(p)},
          {"min_phi", p.min_value()},
          {"n_min", p.n_min().value},
          {"n_max", p.n_max().value},
          {"vertices", vertices},
          {"sech_comparison", {{"x0", x0}, {"x", xs}, {"phi", sech}}},
          {"edges", edges}};
}

HomoclinicOptions orbit_options(const RunConfig& cfg) {
  HomoclinicOptions o;
  o.tol = cfg.tol;
  return o;
}

AssemblyOptions assembly_options(const RunConfig& cfg) {
  AssemblyOptions a;
  a.tol = cfg.tol;
  a.samples_per_edge = cfg.samples_per_edge;
  return a;
}

}  // namespace

std::vector<Artifact> cmd_bands(const RunConfig& cfg) {
  const GraphParams params(cfg.L);
  const auto bands = find_bands(params, cfg.omega_max, cfg.grid);
  json jb = json::array();
  for (const Band& b : bands) {
    jb.push_back({{"omega_lo", b.omega_lo}, {"omega_hi", b.omega_hi}, {"lambda_lo", b.lambda_lo},
                  {"lambda_hi", b.lambda_hi}, {"touches_next", b.touches_next}});
  }
  json flat = json::array();
  for (int m = 1; m <= static_cast<int>(std::floor(cfg.omega_max)); ++m) {
    const FlatBand f = classify_flat_band(m, params);
    flat.push_back({{"m", f.m}, {"lambda", f.lambda},
                    {"location", f.location == FlatBandLocation::Edge ? "edge" : "interior"},
                    {"host_band_index", f.host_band_index}, {"trace", trace(m, params)}});
  }
  Artifact a;
  a.table.columns = {"omega", "T", "in_band"};
  json omega = json::array(), tr = json::array(), in_band = json::array();
  for (int i = 0; i < cfg.grid; ++i) {
    const double w = i == cfg.grid - 1 ? cfg.omega_max : cfg.omega_max * i / (cfg.grid - 1);
    const double t = trace(w, params);
    const bool in = std::abs(t) <= 2.0;
    omega.push_back(w);
    tr.push_back(t);
    in_band.push_back(in);
    a.table.rows.push_back({format_number(w), format_number(t), in ? "1" : "0"});
  }
  a.suffix = "bands";
  a.data = {{"bands", jb},
            {"flat_bands", flat},
            {"nu_squared", band_edge_curvature(params)},
            {"trace_table", {{"omega", omega}, {"T", tr}, {"in_band", in_band}}}};
  return {a};
}

std::vector<Artifact> cmd_map(const RunConfig& cfg) {
  const GraphParams params(cfg.L);
  const double eps = cfg.resolved_eps();
  Artifact a;
  a.suffix = "map";
  a.table.columns = {"n", "alpha", "beta", "gamma", "delta"};
  json rows = json::array();
  MapState x = from_scaled({cfg.alpha, cfg.beta}, eps);
  for (int n = 0; n <= cfg.steps; ++n) {
    const MapState mid = link_step(x, eps, params, cfg.tol);
    const ScaledState s = to_scaled(x, eps), m = to_scaled(mid, eps);
    rows.push_back({{"n", n}, {"alpha", s.alpha}, {"beta", s.beta}, {"gamma", m.alpha}, {"delta", m.beta}});
    a.table.rows.push_back(row({static_cast<double>(n), s.alpha, s.beta, m.alpha, m.beta}));
    a.table.rows.back()[0] = std::to_string(n);
    if (n < cfg.steps) x = ring_step(mid, eps, params, cfg.tol);
  }
  const Matrix2 J = jacobian({0.0, 0.0}, eps, params);
  const auto ev = J.eigenvalues();
  a.data = {{"eps", eps},
            {"orbit", rows},
            {"jacobian_origin",
             {{"matrix", {J.m11, J.m12, J.m21, J.m22}},
              {"det", J.det()},
              {"trace", J.trace()},
              {"trace_hyperbolic", trace_hyperbolic(eps, params)},
              {"eigenvalues", {ev[0].real(), ev[1].real()}}}}};
  return {a};
}

std::vector<Artifact> cmd_homoclinic(const RunConfig& cfg) {
  const GraphParams params(cfg.L);
  const double eps = cfg.resolved_eps();
  std::vector<Artifact> out;
  const auto dir = unstable_direction(eps, params);
  json line = json::array();
  json curves = json::array();
  for (int i = 0; i <= 26; ++i) {
    const double alpha = 0.05 * i;
    json c = {{"alpha", alpha}};
    for (auto [name, which] : {std::pair{"link", SymmetryCenter::Link}, std::pair{"ring", SymmetryCenter::Ring}}) {
      c[std::string(name) + "_asymptotic"] =
          symmetry_curve(alpha, eps, params, which, CurveMode::Asymptotic, cfg.tol);
      try {
        c[std::string(name) + "_exact"] =
            symmetry_curve(alpha, eps, params, which, CurveMode::Exact, cfg.tol);
      } catch (const BracketError&) {
        c[std::string(name) + "_exact"] = nullptr;
      }
    }
    curves.push_back(c);
    line.push_back({{"alpha", alpha}, {"beta", alpha * dir[1] / dir[0]},
                    {"beta_leading_order", alpha * unstable_slope(params)}});
  }
  for (OrbitSymmetry sym : symmetries(cfg.symmetry)) {
    const Orbit orbit = shoot_homoclinic(eps, params, sym, orbit_options(cfg));
    Artifact a;
    a.suffix = short_name(sym);
    const json rows = orbit_rows(orbit, a.table);
    a.data = {{"eps", eps},
              {"symmetry", short_name(sym)},
              {"seed_parameter", orbit.seed_parameter},
              {"n_first", orbit.n_first},
              {"n_last", orbit.n_last()},
              {"diagnostics", diagnostics_json(orbit.diagnostics)},
              {"orbit", rows},
              {"unstable_direction", {dir[0], dir[1]}},
              {"unstable_line", line},
              {"symmetry_curves", curves}};
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Artifact> cmd_boundstate(const RunConfig& cfg) {
  const GraphParams params(cfg.L);
  const double eps = cfg.resolved_eps();
  const double lambda = cfg.lambda ? *cfg.lambda : -eps * eps;
  std::vector<Artifact> out;
  for (OrbitSymmetry sym : symmetries(cfg.symmetry)) {
    std::vector<BoundState> states;
    if (cfg.method != Method::Shooting) {
      const Orbit orbit = shoot_homoclinic(eps, params, sym, orbit_options(cfg));
      states.push_back(assemble_profile(orbit, eps, params, assembly_options(cfg)));
    }
    if (cfg.method != Method::Orbit) {
      ShootingOptions so;
      so.tol = cfg.tol;
      so.samples_per_edge = cfg.samples_per_edge;
      so.n_cells = cfg.n_cells;
      states.push_back(shoot_bound_state(lambda, params, sym, so));
    }
    if (cfg.format == OutputFormat::Csv) {
      for (const BoundState& bs : states) {
        Artifact a;
        a.suffix = short_name(sym);
        if (states.size() > 1) {
          a.suffix += bs.source == ProfileSource::FromOrbit ? "_orbit" : "_shooting";
        }
        a.data = profile_json(bs, &a.table);
        out.push_back(std::move(a));
      }
      continue;
    }
    Artifact a;
    a.suffix = short_name(sym);
    json profiles = json::object();
    for (const BoundState& bs : states) {
      profiles[bs.source == ProfileSource::FromOrbit ? "orbit" : "shooting"] = profile_json(bs, nullptr);
    }
    a.data = {{"symmetry", short_name(sym)}, {"profiles", profiles}};
    if (states.size() == 2) {
      a.data["sup_difference"] = sup_difference(states[0].profile, states[1].profile);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Artifact> cmd_sweep(const RunConfig& cfg, bool& failed) {
  const GraphParams params(cfg.L);
  struct Job {
    double eps;
    OrbitSymmetry sym;
  };
  std::vector<Job> jobs;
  for (double e : cfg.eps_list) {
    for (OrbitSymmetry s : symmetries(cfg.symmetry)) jobs.push_back({e, s});
  }
  std::vector<json> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      json r = {{"eps", job.eps}, {"symmetry", short_name(job.sym)}};
      try {
        const Orbit orbit = shoot_homoclinic(job.eps, params, job.sym, orbit_options(cfg));
        const BoundState bs = assemble_profile(orbit, job.eps, params, assembly_options(cfg));
        r["status"] = "ok";
        r["alpha0"] = to_scaled(orbit.state(0), job.eps).alpha;
        r["seed_parameter"] = orbit.seed_parameter;
        r["diagnostics"] = diagnostics_json(orbit.diagnostics);
        r["Q"] = bs.Q;
        r["E"] = bs.E;
        r["h2_norm"] = bs.h2_norm;
        r["max_kirchhoff_residual"] = bs.max_kirchhoff_residual;
      } catch (const std::exception& e) {
        r["status"] = std::string("error: ") + e.what();
      }
      results[i] = std::move(r);
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Artifact a;
  a.suffix = "sweep";
  a.table.columns = {"eps", "symmetry", "status", "alpha0", "tail_decay_ratio",
                     "l2_distance_to_sech", "Q", "E", "h2_norm"};
  json rows = json::array();
  failed = false;
  for (const json& r : results) {
    const bool ok = r["status"] == "ok";
    failed = failed || !ok;
    auto num = [&](const json& v) { return ok ? format_number(v.get<double>()) : std::string(); };
    a.table.rows.push_back({format_number(r["eps"].get<double>()), r["symmetry"].get<std::string>(),
                            r["status"].get<std::string>(), ok ? num(r["alpha0"]) : "",
                            ok ? num(r["diagnostics"]["tail_decay_ratio"]) : "",
                            ok ? num(r["diagnostics"]["l2_distance_to_sech"]) : "",
                            ok ? num(r["Q"]) : "", ok ? num(r["E"]) : "", ok ? num(r["h2_norm"]) : ""});
    rows.push_back(r);
  }
  a.data = {{"jobs", rows}};
  return {a};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto parsed = parse_args(argc, argv);
    if (!parsed) return 0;
    const RunConfig& cfg = *parsed;
    std::vector<Artifact> artifacts;
    int code = 0;
    switch (cfg.subcommand) {
      case Subcommand::Bands: artifacts = cmd_bands(cfg); break;
      case Subcommand::Map: artifacts = cmd_map(cfg); break;
      case Subcommand::Homoclinic: artifacts = cmd_homoclinic(cfg); break;
      case Subcommand::BoundState: artifacts = cmd_boundstate(cfg); break;
      case Subcommand::Sweep: {
        bool failed = false;
        artifacts = cmd_sweep(cfg, failed);
        if (failed) code = 3;
        break;
      }
      case Subcommand::Verify: {
        const auto checks = run_checks(cfg);
        artifacts = {verify_artifact(checks)};
        for (const Check& c : checks) {
          if (!c.passed) {
            err << "verify: FAIL " << c.name << " value=" << format_number(c.value)
                << " threshold=" << format_number(c.threshold) << "\n";
            code = 3;
          }
        }
        break;
      }
    }
    write_artifacts(cfg, artifacts, out);
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace necklace::cli
