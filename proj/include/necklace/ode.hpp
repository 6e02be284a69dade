#pragma once

// Stationary NLS on a single edge: psi'' = eps^2 psi - 2 psi^3.

#include <span>
#include <vector>

namespace necklace {

struct PhasePoint {
  double psi = 0.0;
  double dpsi = 0.0;
};

struct OdeSample {
  double x = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
};

struct IvpSolution {
  double a = 0.0;
  double b = 0.0;
  double eps = 0.0;
  /// Ascending in x; always contains both endpoints.
  std::vector<OdeSample> samples;
  /// max |E(x) - E(0)| over accepted steps.
  double invariant_drift = 0.0;
  /// Extremes over accepted step endpoints after x = 0.
  double min_psi = 0.0;
  double max_dpsi = 0.0;
  std::size_t steps = 0;

  PhasePoint end() const { return {samples.back().psi, samples.back().dpsi}; }
};

double first_invariant(double psi, double dpsi, double eps) noexcept;

/// Adaptive dopri5 integration on [0, x_end].  Steps land exactly on every
/// requested abscissa in sample_at (values outside [0, x_end] are rejected).
/// Throws IntegrationError on step-size underflow.
IvpSolution integrate_ivp(double a, double b, double eps, double x_end, double tol,
                          std::span<const double> sample_at = {});

/// End state after integrating over `length`; no samples are stored.
PhasePoint propagate(PhasePoint start, double eps, double length, double tol);

/// Truncated small-amplitude series for psi(x; eps*alpha, eps^2*beta, eps).
PhasePoint small_amplitude_expansion(double alpha, double beta, double eps, double x) noexcept;

}  // namespace necklace
