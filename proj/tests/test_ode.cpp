#include <doctest.h>

#include <cmath>
#include <vector>

#include "necklace/errors.hpp"
#include "necklace/graph.hpp"
#include "necklace/ode.hpp"

using namespace necklace;

TEST_SUITE("ode") {

TEST_CASE("sech solution") {
  const double eps = 0.1;
  std::vector<double> xs;
  for (int i = 0; i <= 200; ++i) xs.push_back(i * 0.5);
  const IvpSolution sol = integrate_ivp(eps, 0.0, eps, 100.0, 1e-10, xs);
  REQUIRE(sol.samples.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const OdeSample& s = sol.samples[i];
    CHECK(s.x == xs[i]);
    CHECK(std::abs(s.psi - eps / std::cosh(eps * s.x)) < 1e-8);
    CHECK(std::abs(s.dpsi + eps * eps * std::tanh(eps * s.x) / std::cosh(eps * s.x)) < 1e-8);
  }
  CHECK(sol.invariant_drift < 1e-10);
  CHECK(sol.min_psi > 0.0);
}

TEST_CASE("constant and zero solutions") {
  for (double eps : {0.1, 0.01}) {
    const double c = eps / std::sqrt(2.0);
    const PhasePoint p = propagate({c, 0.0}, eps, 10.0 / eps, 1e-10);
    CHECK(std::abs(p.psi - c) < 1e-10);
    CHECK(std::abs(p.dpsi) < 1e-10);
  }
  const PhasePoint z = propagate({0.0, 0.0}, 0.1, 5.0, 1e-10);
  CHECK(z.psi == 0.0);
  CHECK(z.dpsi == 0.0);
}

TEST_CASE("linear regime matches hyperbolic functions") {
  const double eps = 0.2, a = 1e-9, b = 3e-10, x = 7.0;
  const PhasePoint p = propagate({a, b}, eps, x, 1e-12);
  const double psi = a * std::cosh(eps * x) + b / eps * std::sinh(eps * x);
  CHECK(std::abs(p.psi - psi) / psi < 1e-9);
}

TEST_CASE("first invariant is conserved") {
  const double eps = 0.3;
  const IvpSolution sol = integrate_ivp(0.5, -0.2, eps, 20.0, 1e-11);
  const double e0 = first_invariant(0.5, -0.2, eps);
  CHECK(std::abs(first_invariant(sol.end().psi, sol.end().dpsi, eps) - e0) < 1e-10);
  CHECK(sol.invariant_drift < 1e-10);
  CHECK(first_invariant(1.0, 2.0, 0.5) == doctest::Approx(4.0 - 0.25 + 1.0));
}

TEST_CASE("reversibility") {
  const double eps = 0.05;
  const PhasePoint fwd = propagate({0.04, 0.001}, eps, 3.0, 1e-12);
  const PhasePoint back = propagate({fwd.psi, -fwd.dpsi}, eps, 3.0, 1e-12);
  CHECK(std::abs(back.psi - 0.04) < 1e-12);
  CHECK(std::abs(back.dpsi + 0.001) < 1e-12);
}

TEST_CASE("small-amplitude expansion tracks the flow") {
  double prev = 0.0;
  for (double eps : {0.04, 0.02, 0.01}) {
    const double x = kPi / 2;
    const PhasePoint exact = propagate({eps * 0.7, eps * eps * 0.3}, eps, x, 1e-13);
    const PhasePoint approx = small_amplitude_expansion(0.7, 0.3, eps, x);
    const double err = std::abs(exact.psi - approx.psi) / eps;
    CHECK(err < 1e-3);
    if (prev > 0.0) CHECK(err < prev / 4.0);
    prev = err;
  }
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(integrate_ivp(0.1, 0.0, 0.1, -1.0, 1e-10), DomainError);
  const std::vector<double> outside{2.0};
  CHECK_THROWS_AS(integrate_ivp(0.1, 0.0, 0.1, 1.0, 1e-10, outside), DomainError);
  CHECK_THROWS_AS(integrate_ivp(0.1, 0.0, 0.1, 1.0, 0.0), DomainError);
}

}
