#include <doctest.h>

#include <cmath>

#include "necklace/errors.hpp"
#include "necklace/spectral.hpp"

using namespace necklace;

TEST_SUITE("spectral") {

TEST_CASE("monodromy has unit determinant and matching trace") {
  for (double L : {0.3, kPi / 2, kPi, 4.0}) {
    const GraphParams p(L);
    for (double w = 0.01; w < 20.0; w *= 1.3) {
      const Matrix2 M = monodromy_matrix(w, p);
      CHECK(std::abs(M.det() - 1.0) < 1e-12);
      CHECK(std::abs(M.trace() - trace(w, p)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(monodromy_matrix(0.0, GraphParams(1.0)), DomainError);
}

TEST_CASE("monodromy tends to its zero-frequency limit") {
  const Matrix2 M = monodromy_matrix(1e-9, GraphParams(kPi / 2));
  const Matrix2 Z = monodromy_limit_zero();
  CHECK(std::abs(M.m11 - Z.m11) < 1e-8);
  CHECK(std::abs(M.m12 - Z.m12) < 1e-8);
  CHECK(std::abs(M.m21 - Z.m21) < 1e-8);
  CHECK(std::abs(M.m22 - Z.m22) < 1e-8);
  CHECK(trace(1e-9, GraphParams(kPi / 2)) == doctest::Approx(2.0));
}

TEST_CASE("trace at integer frequency") {
  for (double L : {kPi / 2, 1.1, kPi}) {
    const GraphParams p(L);
    for (int m = 1; m <= 5; ++m) {
      CHECK(std::abs(trace(m, p) - 2.0 * std::pow(-1.0, m) * std::cos(m * L)) < 1e-12);
    }
  }
}

TEST_CASE("hyperbolic trace") {
  // 30-digit evaluation of the closed form.
  CHECK(std::abs(trace_hyperbolic(0.03, GraphParams(kPi / 2)) - 2.02224403081375422) < 1e-14);
  const GraphParams p(kPi);
  for (double e : {0.1, 0.01, 0.001}) {
    const double t = trace_hyperbolic(e, p);
    CHECK(std::abs((t - 2.0) / (e * e) - band_edge_curvature(p)) < 5 * e * e * band_edge_curvature(p) + 1e-6);
  }
}

TEST_CASE("band edges at L = pi/2") {
  // Roots of T = -2 and T = +2 computed independently to 30 digits.
  const auto bands = find_bands(GraphParams(kPi / 2), 6.0, 4000);
  REQUIRE(bands.size() >= 3);
  CHECK(bands[0].omega_lo == 0.0);
  CHECK(std::abs(bands[0].omega_hi - 0.535440945602460021) < 1e-9);
  CHECK(std::abs(bands[1].omega_lo - 0.783653104061214540) < 1e-9);
  CHECK(std::abs(bands[1].omega_hi - 1.216346895938785460) < 1e-9);
  CHECK(std::abs(bands[2].omega_lo - 1.464559054397539979) < 1e-9);
  for (const Band& b : bands) {
    CHECK(b.lambda_lo == doctest::Approx(b.omega_lo * b.omega_lo));
    CHECK(b.omega_hi >= b.omega_lo);
  }
}

TEST_CASE("trace stays within [-2, 2] inside bands and outside in gaps") {
  const GraphParams p(1.3);
  const auto bands = find_bands(p, 6.0, 4000);
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const Band& b = bands[i];
    for (int k = 1; k < 10; ++k) {
      const double w = b.omega_lo + (b.omega_hi - b.omega_lo) * k / 10.0;
      CHECK(std::abs(trace(w, p)) <= 2.0 + 1e-9);
    }
    if (i + 1 < bands.size() && !b.touches_next) {
      const double w = 0.5 * (b.omega_hi + bands[i + 1].omega_lo);
      CHECK(std::abs(trace(w, p)) > 2.0);
    }
  }
}

TEST_CASE("coarse grids are reported") {
  CHECK_THROWS_AS(find_bands(GraphParams(kPi / 2), 6.0, 5), DomainError);
  // Grid step close to the oscillation period of T.
  CHECK_THROWS_AS(find_bands(GraphParams(kPi), 100.0, 100), GridError);
  // A gap narrower than the grid spacing next to omega = 13.
  CHECK_THROWS_AS(find_bands(GraphParams(2.9), 30.0, 4000), GridError);
}

TEST_CASE("flat bands at L = pi/2") {
  const GraphParams p(kPi / 2);
  for (int m = 1; m <= 5; ++m) {
    const FlatBand f = classify_flat_band(m, p);
    CHECK(f.lambda == m * m);
    CHECK(f.host_band_index > 0);
    CHECK(f.location == (m % 2 == 0 ? FlatBandLocation::Edge : FlatBandLocation::Interior));
  }
}

TEST_CASE("flat band eigenfunction is compactly supported on one ring") {
  const GraphParams p(kPi / 2);
  const PiecewiseProfile f = flat_band_eigenfunction(3, CellIndex{2}, p);
  CHECK_NOTHROW(validate_profile(f));
  CHECK_FALSE(f.symmetric_ring);
  for (const CellSamples& c : f.cells) {
    for (double v : c.link.phi) CHECK(v == 0.0);
    if (c.cell.value != 2) {
      for (double v : c.upper.phi) CHECK(v == 0.0);
    }
  }
  const CellSamples* ring = f.find(CellIndex{2});
  REQUIRE(ring);
  REQUIRE(ring->lower);
  // sin(m(x - x0)) on one semicircle and its negative on the other.
  for (std::size_t i = 0; i < ring->upper.size(); ++i) {
    CHECK(ring->upper.phi[i] == doctest::Approx(-ring->lower->phi[i]).epsilon(1e-12));
    const double s = ring->upper.x[i] - (2 * p.period() + p.link_length());
    CHECK(std::abs(ring->upper.phi[i] - std::sin(3 * s)) < 1e-12);
  }
}

TEST_CASE("band-edge curvature") {
  for (double L : {kPi / 2, kPi}) {
    const GraphParams p(L);
    CHECK(band_edge_curvature(p) == doctest::Approx((L + kPi / 2) * (L + 2 * kPi)));
    const double theta = 0.02;
    const double lambda = lowest_band_lambda(theta, p);
    CHECK(std::abs(lambda * band_edge_curvature(p) / (theta * theta) - 1.0) < 1e-3);
    CHECK(trace(std::sqrt(lambda), p) == doctest::Approx(2 * std::cos(theta)).epsilon(1e-12));
  }
  CHECK(lowest_band_lambda(kPi, GraphParams(kPi / 2)) ==
        doctest::Approx(0.535440945602460021 * 0.535440945602460021).epsilon(1e-9));
}

TEST_CASE("matrix eigenvalues") {
  const Matrix2 M{3.0, 1.0, 1.0, 1.0 / 3.0 + 1.0 / 3.0};
  const auto ev = M.eigenvalues();
  CHECK(ev[0].real() >= ev[1].real());
  CHECK(ev[0].real() * ev[1].real() == doctest::Approx(M.det()));
  CHECK(ev[0].real() + ev[1].real() == doctest::Approx(M.trace()));
  const auto v = M.eigenvector(ev[0].real());
  const auto Mv = M.apply(v);
  CHECK(Mv[0] == doctest::Approx(ev[0].real() * v[0]));
  CHECK(Mv[1] == doctest::Approx(ev[0].real() * v[1]));
  CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0));
}

}
