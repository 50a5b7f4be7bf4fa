#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lily/graph.hpp"
#include "oracles.hpp"

using namespace lily;
using std::numbers::pi;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

int degree(const Eigen::MatrixXcd& h, int node) {
  int d = 0;
  for (int j = 0; j < h.cols(); ++j) d += (j != node && std::abs(h(node, j)) > 0.0);
  return d;
}

}  // namespace

TEST_CASE("effective phases wrap into [-pi, pi)") {
  const auto opt = effective_phases(pi, pi, 0.0);
  CHECK(std::abs(opt.gamma) < 1e-15);
  CHECK(std::abs(std::polar(1.0, opt.delta) + 1.0) < 1e-15);
  CHECK(opt.delta == -pi);

  const auto zero = effective_phases(0.0, 0.0, 0.0);
  CHECK(zero.gamma == 0.0);
  CHECK(zero.delta == 0.0);

  const auto half = effective_phases(pi / 2, pi / 2, pi / 2);
  CHECK(half.gamma == -pi);
  CHECK(half.delta == -pi);
}

TEST_CASE("wrap_phase keeps the unit phasor and lands in [-pi, pi)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const double w = wrap_phase(x);
    REQUIRE(w >= -pi);
    REQUIRE(w < pi);
    REQUIRE(std::abs(std::polar(1.0, w) - std::polar(1.0, x)) < 1e-12);
  }
  CHECK(wrap_phase(pi) == -pi);
}

TEST_CASE("full Hamiltonian at the optimal point") {
  const auto [h, map] = build_full_hamiltonian(LilyParams{2, std::sqrt(3.0) / 2, pi, pi, 0.0});
  CHECK(h.rows() == 8);
  CHECK(std::abs(h(map.input2, map.k1) - std::complex<double>(-std::sqrt(3.0) / 2, 0.0)) < 1e-15);
  CHECK(max_abs(h - h.adjoint()) < 1e-12);
  CHECK(h.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("full Hamiltonian with zero phases is real symmetric") {
  const auto [h, map] = build_full_hamiltonian(LilyParams{2, 1.0, 0.0, 0.0, 0.0});
  CHECK(h.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(h(map.routing(0), map.output(0)) == std::complex<double>(1.0, 0.0));
  CHECK(max_abs(h - h.transpose()) == 0.0);
}

TEST_CASE("full graph layout and degrees") {
  for (int n : {2, 3, 5, 10}) {
    CAPTURE(n);
    const auto [h, map] = build_full_hamiltonian(LilyParams{n, 0.7, 0.3, 1.1, -2.0});
    REQUIRE(h.rows() == 4 + 2 * n);
    CHECK(degree(h, map.input1) == 1);
    CHECK(degree(h, map.input2) == 3);
    CHECK(degree(h, map.k1) == n + 1);
    CHECK(degree(h, map.k2) == n + 1);
    CHECK(degree(h, map.routing(0)) == 3);
    CHECK(degree(h, map.output(0)) == 1);
    for (int i = 1; i < n; ++i) {
      // each unselected routing node: k1, k2 and its own output
      CHECK(degree(h, map.routing(i)) == 3);
      CHECK(degree(h, map.output(i)) == 1);
      CHECK(h(map.routing(i), map.output(i)) == std::complex<double>(1.0, 0.0));
    }
    CHECK(max_abs(h - h.adjoint()) < 1e-12);
  }
}

TEST_CASE("reduced Hamiltonian coefficients") {
  SUBCASE("optimal point, n = 2") {
    const auto h = build_reduced_hamiltonian<double>(2, std::sqrt(3.0) / 2, 0.0, pi);
    CHECK(std::abs(h(2, 3) - std::sqrt(6.0) / 2) < 1e-15);
    CHECK(std::abs(h(1, 2) - std::sqrt(6.0) / 2) < 1e-15);
    CHECK(h(2, 5) == std::complex<double>(0.0, 0.0));
  }
  SUBCASE("n = 3, beta = 1, zero phases") {
    const auto h = build_reduced_hamiltonian<double>(3, 1.0, 0.0, 0.0);
    CHECK(std::abs(h(2, 5) - 2.0) < 1e-15);
    CHECK(std::abs(h(2, 3) - std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("leakage closes exactly at delta = pi, so n drops out") {
    const auto h2 = build_reduced_hamiltonian<double>(2, std::sqrt(3.0) / 2, 0.0, pi);
    const auto h10 = build_reduced_hamiltonian<double>(10, std::sqrt(3.0) / 2, 0.0, pi);
    CHECK(h2 == h10);
    for (double beta : {0.1, 0.9, 3.0, -0.4}) {
      CHECK(leakage_coefficient(25, beta, pi) == std::complex<double>(0.0, 0.0));
      CHECK(leakage_coefficient(25, beta, -pi) == std::complex<double>(0.0, 0.0));
    }
  }
  SUBCASE("matches the coupling list written out independently") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + trial % 9;
      const double beta = 0.2 + std::abs(u(rng));
      const double g = u(rng), d = u(rng);
      const auto h = build_reduced_hamiltonian<double>(n, beta, g, d);
      CHECK((h - oracle::reduced_hamiltonian(n, beta, g, d)).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(h.diagonal().cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("reduction isometry") {
  const auto v2 = reduction_isometry(2, 0.0);
  const NodeIndexMap map{2};
  CHECK(std::abs(v2(map.k1, 2) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(v2(map.k2, 2) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(v2.col(2).cwiseAbs().sum() == doctest::Approx(std::sqrt(2.0)));
  CHECK(v2(map.routing(1), 5) == std::complex<double>(1.0, 0.0));

  for (int n : {2, 3, 7, 30}) {
    for (double phi0 : {0.0, 0.4, pi, -2.2}) {
      const auto v = reduction_isometry(n, phi0);
      CHECK(max_abs(v.adjoint() * v - Eigen::MatrixXcd::Identity(7, 7)) < 1e-12);
    }
  }
}

TEST_CASE("compressing the full Hamiltonian gives the reduced one") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phase(0.0, 2 * pi);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  for (int n : {2, 3, 5, 10}) {
    for (int trial = 0; trial < 25; ++trial) {
      const LilyParams p{n, weight(rng), phase(rng), phase(rng), phase(rng)};
      const auto [h, map] = build_full_hamiltonian(p);
      const auto v = reduction_isometry(n, p.phi0);
      const auto eff = effective_phases(p);
      const auto reduced = build_reduced_hamiltonian<double>(n, p.beta, eff.gamma, eff.delta);
      CHECK(max_abs(v.adjoint() * h * v - Eigen::MatrixXcd(reduced)) < 1e-12);
    }
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(build_reduced_hamiltonian<double>(1, 1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_full_hamiltonian(LilyParams{1, 1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(reduction_isometry(0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_full_hamiltonian(LilyParams{2, std::nan(""), 0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_reduced_hamiltonian<double>(2, 1.0, INFINITY, 0.0), std::invalid_argument);
}
