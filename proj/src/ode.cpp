#include "necklace/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "necklace/errors.hpp"

namespace necklace {

namespace {

using State = std::array<double, 2>;
using Stepper = boost::numeric::odeint::runge_kutta_dopri5<State>;

struct Rhs {
  double eps2;
  void operator()(const State& y, State& dy, double /*x*/) const {
    dy[0] = y[1];
    dy[1] = eps2 * y[0] - 2.0 * y[0] * y[0] * y[0];
  }
};

constexpr std::size_t kMaxSteps = 50'000'000;

template <typename OnPoint>
void drive(State y, double eps, double x_end, double tol, std::span<const double> stops,
           IvpSolution& out, OnPoint&& on_point) {
  if (!(tol > 0.0)) throw DomainError("integrate_ivp: tol must be positive");
  if (!(x_end > 0.0)) throw DomainError("integrate_ivp: x_end must be positive");

  const Rhs rhs{eps * eps};
  const double floor = 1e-3 * std::max(std::abs(y[0]), std::abs(y[1]));
  const double e0 = first_invariant(y[0], y[1], eps);
  out.min_psi = y[0];
  out.max_dpsi = -std::numeric_limits<double>::infinity();

  if (y[0] == 0.0 && y[1] == 0.0) {
    out.min_psi = 0.0;
    out.max_dpsi = 0.0;
    for (double s : stops) on_point(s, y);
    return;
  }

  Stepper stepper;
  State dy, y_new, dy_new, err;
  rhs(y, dy, 0.0);
  double x = 0.0;
  double h = std::min(x_end, 0.05 / std::max(1.0, std::max(eps, std::abs(y[0]))));
  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= 0.0) on_point(stops[next_stop++], y);

  while (x < x_end) {
    const double target = next_stop < stops.size() ? stops[next_stop] : x_end;
    const bool clipped = x + h >= target;
    const double step = clipped ? target - x : h;
    stepper.do_step(rhs, y, dy, x, y_new, dy_new, step, err);

    double e = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double scale = std::max({std::abs(y[i]), std::abs(y_new[i]), floor});
      e = std::max(e, std::abs(err[i]) / (tol * scale));
    }
    const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    if (e > 1.0) {
      h = step * factor;
      if (h < 1e-14 * std::max(1.0, std::abs(x))) {
        throw IntegrationError("integrate_ivp: step size underflow at x = " + std::to_string(x));
      }
      continue;
    }
    x = clipped ? target : x + step;
    y = y_new;
    dy = dy_new;
    if (++out.steps > kMaxSteps) throw IntegrationError("integrate_ivp: step budget exhausted");
    out.invariant_drift =
        std::max(out.invariant_drift, std::abs(first_invariant(y[0], y[1], eps) - e0));
    out.min_psi = std::min(out.min_psi, y[0]);
    out.max_dpsi = std::max(out.max_dpsi, y[1]);
    // A clipped step says nothing about the natural step length; keep h.
    if (!clipped || step * factor < h) h = step * factor;
    while (next_stop < stops.size() && stops[next_stop] <= x) on_point(stops[next_stop++], y);
  }
}

}  // namespace

double first_invariant(double psi, double dpsi, double eps) noexcept {
  const double p2 = psi * psi;
  return dpsi * dpsi - eps * eps * p2 + p2 * p2;
}

IvpSolution integrate_ivp(double a, double b, double eps, double x_end, double tol,
                          std::span<const double> sample_at) {
  std::vector<double> stops(sample_at.begin(), sample_at.end());
  for (double s : stops) {
    if (!(s >= 0.0 && s <= x_end)) {
      throw DomainError("integrate_ivp: sample abscissa " + std::to_string(s) +
                        " outside [0, x_end]");
    }
  }
  stops.push_back(0.0);
  stops.push_back(x_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  IvpSolution sol;
  sol.a = a;
  sol.b = b;
  sol.eps = eps;
  sol.samples.reserve(stops.size());
  drive({a, b}, eps, x_end, tol, stops, sol, [&](double x, const State& y) {
    sol.samples.push_back({x, y[0], y[1]});
  });
  sol.samples.front().psi = a;
  sol.samples.front().dpsi = b;
  return sol;
}

PhasePoint propagate(PhasePoint start, double eps, double length, double tol) {
  IvpSolution scratch;
  PhasePoint end = start;
  const double stop[1] = {length};
  drive({start.psi, start.dpsi}, eps, length, tol, stop, scratch,
        [&](double, const State& y) { end = {y[0], y[1]}; });
  return end;
}

PhasePoint small_amplitude_expansion(double alpha, double beta, double eps, double x) noexcept {
  const double c2 = 0.5 * alpha * (1.0 - 2.0 * alpha * alpha);
  const double c3 = (1.0 - 6.0 * alpha * alpha) * beta / 6.0;
  const double ex = eps * x;
  const double psi = eps * (alpha + beta * ex + c2 * ex * ex + c3 * ex * ex * ex);
  const double dpsi = eps * eps * (beta + 2.0 * c2 * ex + 3.0 * c3 * ex * ex);
  return {psi, dpsi};
}

}  // namespace necklace
