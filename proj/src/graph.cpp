#include "necklace/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "necklace/errors.hpp"

namespace necklace {

GraphParams::GraphParams(double link_length) : link_length_(link_length) {
  if (!(std::isfinite(link_length) && link_length > 0.0)) {
    throw DomainError("GraphParams: link length must be positive, got " +
                      std::to_string(link_length));
  }
}

double edge_length(EdgeKind kind, const GraphParams& params) {
  return kind == EdgeKind::Link ? params.link_length() : GraphParams::semicircle_length();
}

double edge_origin(EdgeRef edge, const GraphParams& params) {
  const double cell_start = static_cast<double>(edge.cell.value) * params.period();
  return edge.kind == EdgeKind::Link ? cell_start : cell_start + params.link_length();
}

double position_of(EdgeRef edge, double t, const GraphParams& params) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("position_of: t must lie in [0,1], got " + std::to_string(t));
  }
  return edge_origin(edge, params) + t * edge_length(edge.kind, params);
}

EdgeRef shifted(EdgeRef edge, std::int64_t cells) {
  edge.cell.value += cells;
  return edge;
}

void EdgeSamples::push_back(double xi, double value, double slope) {
  x.push_back(xi);
  phi.push_back(value);
  dphi.push_back(slope);
}

CellIndex PiecewiseProfile::n_min() const {
  return cells.empty() ? CellIndex{0} : cells.front().cell;
}

CellIndex PiecewiseProfile::n_max() const {
  return cells.empty() ? CellIndex{-1} : cells.back().cell;
}

const CellSamples* PiecewiseProfile::find(CellIndex n) const {
  if (cells.empty() || n < n_min() || n > n_max()) return nullptr;
  return &cells[static_cast<std::size_t>(n.value - n_min().value)];
}

namespace {

template <typename Fn>
void for_each_edge(const PiecewiseProfile& profile, Fn&& fn) {
  for (const auto& cell : profile.cells) {
    fn(cell.link);
    fn(cell.upper);
    if (cell.lower) fn(*cell.lower);
  }
}

void check_edge(const EdgeSamples& edge, double origin, double length, const char* what) {
  if (edge.size() < 2 || edge.phi.size() != edge.size() || edge.dphi.size() != edge.size()) {
    throw DomainError(std::string("profile: malformed samples on ") + what);
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(origin) + length);
  if (std::abs(edge.x.front() - origin) > slack ||
      std::abs(edge.x.back() - (origin + length)) > slack) {
    throw DomainError(std::string("profile: samples do not cover the ") + what);
  }
  for (std::size_t i = 1; i < edge.size(); ++i) {
    if (!(edge.x[i] > edge.x[i - 1])) {
      throw DomainError(std::string("profile: abscissae not increasing on ") + what);
    }
  }
}

}  // namespace

double PiecewiseProfile::sup_abs() const {
  double sup = 0.0;
  for_each_edge(*this, [&](const EdgeSamples& e) {
    for (double v : e.phi) sup = std::max(sup, std::abs(v));
  });
  return sup;
}

double PiecewiseProfile::min_value() const {
  double lo = std::numeric_limits<double>::infinity();
  for_each_edge(*this, [&](const EdgeSamples& e) {
    for (double v : e.phi) lo = std::min(lo, v);
  });
  return lo;
}

void validate_profile(const PiecewiseProfile& profile) {
  for (std::size_t i = 0; i < profile.cells.size(); ++i) {
    const auto& cell = profile.cells[i];
    if (i > 0 && cell.cell.value != profile.cells[i - 1].cell.value + 1) {
      throw DomainError("profile: cells are not contiguous");
    }
    check_edge(cell.link, edge_origin({cell.cell, EdgeKind::Link}, profile.params),
               profile.params.link_length(), "link");
    const double ring0 = edge_origin({cell.cell, EdgeKind::SemicircleUpper}, profile.params);
    check_edge(cell.upper, ring0, kPi, "upper semicircle");
    if (cell.lower) check_edge(*cell.lower, ring0, kPi, "lower semicircle");
    if (profile.symmetric_ring && cell.lower) {
      throw DomainError("profile: symmetric ring profile must not carry a separate lower semicircle");
    }
  }
}

std::vector<double> uniform_abscissae(double origin, double length, int intervals) {
  if (intervals < 1) throw DomainError("uniform_abscissae: need at least one interval");
  std::vector<double> xs(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    xs[static_cast<std::size_t>(i)] = origin + length * static_cast<double>(i) / intervals;
  }
  xs.back() = origin + length;
  return xs;
}

}  // namespace necklace
