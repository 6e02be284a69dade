#pragma once

// Geometry of the necklace graph: links of length L joined by rings of
// circumference 2*pi.  Cell n occupies [nP, (n+1)P] in global arclength,
// with the link on [nP, nP+L] and the two semicircles on [nP+L, (n+1)P].

#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

namespace necklace {

inline constexpr double kPi = std::numbers::pi;

class GraphParams {
 public:
  /// Throws DomainError unless link_length is finite and positive.
  explicit GraphParams(double link_length);

  double link_length() const noexcept { return link_length_; }
  double period() const noexcept { return link_length_ + kPi; }
  static constexpr double semicircle_length() noexcept { return kPi; }

 private:
  double link_length_;
};

struct CellIndex {
  std::int64_t value = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

enum class EdgeKind { Link, SemicircleUpper, SemicircleLower };

struct EdgeRef {
  CellIndex cell;
  EdgeKind kind = EdgeKind::Link;
};

double edge_length(EdgeKind kind, const GraphParams& params);

/// Global coordinate of the left end of an edge.
double edge_origin(EdgeRef edge, const GraphParams& params);

/// Global coordinate of the point at fraction t in [0,1] along an edge.
double position_of(EdgeRef edge, double t, const GraphParams& params);

EdgeRef shifted(EdgeRef edge, std::int64_t cells);

/// Samples (x, phi, phi') along one edge, x in global coordinates.
struct EdgeSamples {
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> dphi;

  std::size_t size() const noexcept { return x.size(); }
  bool empty() const noexcept { return x.empty(); }
  void push_back(double xi, double value, double slope);
};

struct CellSamples {
  CellIndex cell;
  EdgeSamples link;
  EdgeSamples upper;
  /// Present only when the two semicircles carry different data.
  std::optional<EdgeSamples> lower;

  const EdgeSamples& lower_or_upper() const { return lower ? *lower : upper; }
};

/// A function on a truncated piece [n_min, n_max] of the graph.  With
/// symmetric_ring set, `upper` stands for both semicircles.
struct PiecewiseProfile {
  GraphParams params;
  double eps = 0.0;
  std::vector<CellSamples> cells;
  bool symmetric_ring = true;

  CellIndex n_min() const;
  CellIndex n_max() const;
  const CellSamples* find(CellIndex n) const;
  double sup_abs() const;
  double min_value() const;
};

/// Throws DomainError if cells are not contiguous and ascending, or if
/// any edge is not sampled with increasing abscissae covering the edge.
void validate_profile(const PiecewiseProfile& profile);

/// `intervals + 1` equally spaced points covering [origin, origin + length].
std::vector<double> uniform_abscissae(double origin, double length, int intervals);

}  // namespace necklace
