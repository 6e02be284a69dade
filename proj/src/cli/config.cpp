#include "cli/config.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

namespace necklace::cli {

double RunConfig::resolved_eps() const {
  if (eps) return *eps;
  if (lambda) return std::sqrt(-*lambda);
  throw UsageError("one of --eps or --lambda is required");
}

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Bands: return "bands";
    case Subcommand::Map: return "map";
    case Subcommand::Homoclinic: return "homoclinic";
    case Subcommand::BoundState: return "boundstate";
    case Subcommand::Verify: return "verify";
    case Subcommand::Sweep: return "sweep";
  }
  return "?";
}

std::string to_string(SymmetryChoice s) {
  switch (s) {
    case SymmetryChoice::Link: return "link";
    case SymmetryChoice::Ring: return "ring";
    case SymmetryChoice::Both: return "both";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Orbit: return "orbit";
    case Method::Shooting: return "shooting";
    case Method::Both: return "both";
  }
  return "?";
}

std::vector<OrbitSymmetry> symmetries(SymmetryChoice s) {
  switch (s) {
    case SymmetryChoice::Link: return {OrbitSymmetry::LinkCentered};
    case SymmetryChoice::Ring: return {OrbitSymmetry::RingCentered};
    case SymmetryChoice::Both: return {OrbitSymmetry::LinkCentered, OrbitSymmetry::RingCentered};
  }
  return {};
}

std::string short_name(OrbitSymmetry s) {
  return s == OrbitSymmetry::LinkCentered ? "link" : "ring";
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

void validate(RunConfig& c) {
  if (!(std::isfinite(c.L) && c.L > 0.0)) throw UsageError("--L must be positive");
  if (c.eps && c.lambda) throw UsageError("--eps and --lambda are mutually exclusive");
  if (c.eps && !(*c.eps > 0.0)) throw UsageError("--eps must be positive");
  if (c.lambda && !(*c.lambda < 0.0)) throw UsageError("--lambda must be negative");
  for (double e : c.eps_list) {
    if (!(e > 0.0)) throw UsageError("--eps values must be positive");
  }
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (!(c.omega_max > 0.0)) throw UsageError("--omega-max must be positive");
  if (c.grid < 100) throw UsageError("--grid must be at least 100");
  if (c.samples_per_edge < 16 || c.samples_per_edge % 2 != 0) {
    throw UsageError("--samples-per-edge must be even and at least 16");
  }
  if (c.steps < 0) throw UsageError("--steps must be nonnegative");
  if (c.threads < 0) throw UsageError("--threads must be nonnegative");
  switch (c.subcommand) {
    case Subcommand::Map:
    case Subcommand::Homoclinic:
    case Subcommand::BoundState:
      if (!c.eps && !c.lambda) throw UsageError("one of --eps or --lambda is required");
      break;
    case Subcommand::Sweep:
      if (c.eps_list.empty()) throw UsageError("sweep needs --eps with one or more values");
      break;
    default:
      break;
  }
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv) {
  CLI::App app{"Standing waves of the cubic NLS equation on the necklace graph"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string eps_text;
  std::optional<double> lambda;
  std::string format = "json";
  std::string symmetry = "link";
  std::string method = "orbit";

  const std::map<std::string, SymmetryChoice> sym_map{
      {"link", SymmetryChoice::Link}, {"ring", SymmetryChoice::Ring}, {"both", SymmetryChoice::Both}};
  const std::map<std::string, OutputFormat> fmt_map{{"json", OutputFormat::Json},
                                                    {"csv", OutputFormat::Csv}};
  const std::map<std::string, Method> method_map{
      {"orbit", Method::Orbit}, {"shooting", Method::Shooting}, {"both", Method::Both}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--L", cfg.L, "link length in radians")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "integrator tolerance")->capture_default_str();
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  auto amplitude = [&](CLI::App* sub, bool list) {
    sub->add_option("--eps", eps_text, list ? "comma-separated eps values" : "eps > 0");
    if (!list) sub->add_option("--lambda", lambda, "Lambda = -eps^2 < 0");
  };
  auto sym_flag = [&](CLI::App* sub) {
    sub->add_option("--symmetry", symmetry, "link, ring or both")
        ->check(CLI::IsMember({"link", "ring", "both"}))
        ->capture_default_str();
  };

  CLI::App* bands = app.add_subcommand("bands", "band structure and flat bands");
  common(bands);
  bands->add_option("--omega-max", cfg.omega_max)->capture_default_str();
  bands->add_option("--grid", cfg.grid)->capture_default_str();

  CLI::App* map = app.add_subcommand("map", "iterate the period map from a scaled state");
  common(map);
  amplitude(map, false);
  map->add_option("--alpha", cfg.alpha, "scaled initial value")->capture_default_str();
  map->add_option("--beta", cfg.beta, "scaled initial slope")->capture_default_str();
  map->add_option("--steps", cfg.steps)->capture_default_str();

  CLI::App* homoclinic = app.add_subcommand("homoclinic", "reversible homoclinic orbits");
  common(homoclinic);
  amplitude(homoclinic, false);
  sym_flag(homoclinic);

  CLI::App* boundstate = app.add_subcommand("boundstate", "bound-state profiles");
  common(boundstate);
  amplitude(boundstate, false);
  sym_flag(boundstate);
  boundstate->add_option("--method", method, "orbit, shooting or both")
      ->check(CLI::IsMember({"orbit", "shooting", "both"}))
      ->capture_default_str();
  boundstate->add_option("--samples-per-edge", cfg.samples_per_edge)->capture_default_str();
  boundstate->add_option("--n-cells", cfg.n_cells, "shooting cells per side (0 = automatic)");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant checklist");
  common(verify);
  amplitude(verify, true);
  verify->add_flag("--inject-kirchhoff-fault", cfg.inject_kirchhoff_fault)->group("");

  CLI::App* sweep = app.add_subcommand("sweep", "orbits and bound states over an eps list");
  common(sweep);
  amplitude(sweep, true);
  sym_flag(sweep);
  sweep->add_option("--samples-per-edge", cfg.samples_per_edge)->capture_default_str();
  sweep->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    msg << e.what();
    throw UsageError(msg.str());
  }

  const std::pair<CLI::App*, Subcommand> subs[] = {
      {bands, Subcommand::Bands},           {map, Subcommand::Map},
      {homoclinic, Subcommand::Homoclinic}, {boundstate, Subcommand::BoundState},
      {verify, Subcommand::Verify},         {sweep, Subcommand::Sweep}};
  for (const auto& [sub, kind] : subs) {
    if (sub->parsed()) cfg.subcommand = kind;
  }
  cfg.format = fmt_map.at(format);
  cfg.symmetry = sym_map.at(symmetry);
  cfg.method = method_map.at(method);
  cfg.lambda = lambda;
  const bool list = cfg.subcommand == Subcommand::Verify || cfg.subcommand == Subcommand::Sweep;
  if (!eps_text.empty()) {
    if (list) {
      cfg.eps_list = parse_list(eps_text);
    } else {
      const auto v = parse_list(eps_text);
      if (v.size() != 1) throw UsageError("--eps takes a single value here");
      cfg.eps = v.front();
    }
  }
  validate(cfg);
  return cfg;
}

}  // namespace necklace::cli
