#include "cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace necklace::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["subcommand"] = to_string(cfg.subcommand);
  j["L"] = cfg.L;
  j["eps"] = cfg.eps ? nlohmann::json(*cfg.eps) : nlohmann::json(nullptr);
  j["lambda"] = cfg.lambda ? nlohmann::json(*cfg.lambda) : nlohmann::json(nullptr);
  j["eps_list"] = cfg.eps_list;
  j["symmetry"] = to_string(cfg.symmetry);
  j["method"] = to_string(cfg.method);
  j["omega_max"] = cfg.omega_max;
  j["grid"] = cfg.grid;
  j["tol"] = cfg.tol;
  j["samples_per_edge"] = cfg.samples_per_edge;
  j["n_cells"] = cfg.n_cells;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["steps"] = cfg.steps;
  j["threads"] = cfg.threads;
  j["format"] = cfg.format == OutputFormat::Json ? "json" : "csv";
  j["out"] = cfg.out_path;
  return j;
}

nlohmann::json document(const RunConfig& cfg, const nlohmann::json& data) {
  return {{"schema_version", kSchemaVersion}, {"config", config_json(cfg)}, {"data", data}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace

std::string render_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += "\r\n";
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  return out;
}

std::string suffixed_path(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_" + suffix;
  }
  return path.substr(0, dot) + "_" + suffix + path.substr(dot);
}

void write_artifacts(const RunConfig& cfg, const std::vector<Artifact>& artifacts, std::ostream& out) {
  const bool csv = cfg.format == OutputFormat::Csv;
  auto render = [&](const Artifact& a) {
    return csv ? render_csv(a.table) : document(cfg, a.data).dump(2) + "\n";
  };
  if (!cfg.out_path.empty()) {
    for (const auto& a : artifacts) {
      const std::string path =
          artifacts.size() == 1 ? cfg.out_path : suffixed_path(cfg.out_path, a.suffix);
      emit(path, render(a));
    }
    return;
  }
  if (artifacts.size() == 1) {
    out << render(artifacts.front());
  } else if (csv) {
    throw UsageError("several CSV tables need --out so each can go to its own file");
  } else {
    nlohmann::json combined = nlohmann::json::object();
    for (const auto& a : artifacts) combined[a.suffix] = a.data;
    out << document(cfg, combined).dump(2) << "\n";
  }
  out.flush();
  if (!out) throw IoError("failed writing to standard output");
}

}  // namespace necklace::cli
