#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "necklace/homoclinic.hpp"

namespace necklace::cli {

enum class Subcommand { Bands, Map, Homoclinic, BoundState, Verify, Sweep };
enum class SymmetryChoice { Link, Ring, Both };
enum class OutputFormat { Json, Csv };
enum class Method { Orbit, Shooting, Both };

struct RunConfig {
  Subcommand subcommand = Subcommand::Bands;
  double L = 1.5707963267948966;
  std::optional<double> eps;
  std::optional<double> lambda;
  SymmetryChoice symmetry = SymmetryChoice::Link;
  double omega_max = 6.0;
  int grid = 4000;
  double tol = 1e-10;
  int samples_per_edge = 64;
  std::string out_path;
  OutputFormat format = OutputFormat::Json;
  Method method = Method::Orbit;
  int n_cells = 0;
  // map
  double alpha = 0.0;
  double beta = 0.0;
  int steps = 20;
  // verify and sweep
  std::vector<double> eps_list;
  int threads = 0;
  bool inject_kirchhoff_fault = false;

  /// eps from --eps or sqrt(-lambda); throws UsageError if neither is set.
  double resolved_eps() const;
};

/// Bad flags or values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse argv.  Returns nullopt when help was printed.
std::optional<RunConfig> parse_args(int argc, const char* const* argv);

std::string to_string(Subcommand s);
std::string to_string(SymmetryChoice s);
std::string to_string(Method m);
std::vector<OrbitSymmetry> symmetries(SymmetryChoice s);
std::string short_name(OrbitSymmetry s);

}  // namespace necklace::cli
