#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "json.hpp"

namespace necklace::cli {

inline constexpr int kSchemaVersion = 1;

/// File system failures; maps to exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// One output document.  Commands producing several (e.g. both symmetries)
/// tag each with a suffix used to derive file names.
struct Artifact {
  std::string suffix;
  nlohmann::json data;
  Table table;
};

std::string format_number(double v);
nlohmann::json config_json(const RunConfig& cfg);
std::string render_csv(const Table& table);
nlohmann::json document(const RunConfig& cfg, const nlohmann::json& data);

/// `base.ext` -> `base_suffix.ext`.
std::string suffixed_path(const std::string& path, const std::string& suffix);

/// Writes to cfg.out_path (suffixed when there are several artifacts) or to
/// `out`.  Several CSV tables cannot share stdout.
void write_artifacts(const RunConfig& cfg, const std::vector<Artifact>& artifacts, std::ostream& out);

}  // namespace necklace::cli
