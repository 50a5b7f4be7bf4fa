#pragma once

// Reference routines used only by the tests. None of them call into the code
// paths they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix7 = Eigen::Matrix<Complex, 7, 7>;

/// e^{-iHt} by Pade scaling-and-squaring (Eigen unsupported), not by eigendecomposition.
template <typename Matrix>
Matrix expm_pade(const Matrix& h, double t) {
  const Matrix a = (Complex(0.0, -t) * h).eval();
  return a.exp();
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal phases removed.
template <int N>
Eigen::Matrix<Complex, N, N> haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix<Complex, N, N> z;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix<Complex, N, N>> qr(z);
  Eigen::Matrix<Complex, N, N> q = qr.householderQ();
  const Eigen::Matrix<Complex, N, N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < N; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

/// Random Hermitian matrix with Gaussian entries.
template <typename Matrix>
Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  return (m + m.adjoint().eval()) / 2.0;
}

/// |<f cos + r e^{i chi} sin | U | 1 cos + 2 e^{i chi} sin>|^2 written out element by element.
inline double bloch_fidelity(const Matrix7& u, double alpha, double chi) {
  const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
  const Complex e = std::polar(1.0, chi);
  Eigen::Matrix<Complex, 7, 1> in = Eigen::Matrix<Complex, 7, 1>::Zero();
  Eigen::Matrix<Complex, 7, 1> target = Eigen::Matrix<Complex, 7, 1>::Zero();
  in(0) = c;
  in(1) = e * s;
  target(4) = c;
  target(3) = e * s;
  Eigen::Matrix<Complex, 7, 1> evolved = Eigen::Matrix<Complex, 7, 1>::Zero();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) evolved(i) += u(i, j) * in(j);
  Complex overlap = 0.0;
  for (int i = 0; i < 7; ++i) overlap += std::conj(target(i)) * evolved(i);
  return std::norm(overlap);
}

/// Uniform point on the Bloch sphere (measure sin(alpha) d alpha d chi / 4 pi).
inline std::pair<double, double> bloch_sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {std::acos(1.0 - 2.0 * u(rng)), 2.0 * std::numbers::pi * u(rng)};
}

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

template <typename Sampler>
MeanAndError monte_carlo(int samples, Sampler&& draw) {
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = draw();
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double var = (sum_sq - samples * mean * mean) / (samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / samples)};
}

/// Best-Fisher rejection sampler for the von Mises law centred at 0.
inline double von_mises_sample(double k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * k * k);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * k);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  while (true) {
    const double z = std::cos(std::numbers::pi * u(rng));
    const double f = (1.0 + r * z) / (r + z);
    const double c = k * (r - f);
    const double u2 = u(rng);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double theta = std::acos(std::clamp(f, -1.0, 1.0));
      return u(rng) < 0.5 ? -theta : theta;
    }
  }
}

/// The seven-state Hamiltonian written out directly from its coupling list.
inline Matrix7 reduced_hamiltonian(int n, double beta, double gamma, double delta) {
  Matrix7 h = Matrix7::Zero();
  const Complex xi = beta * (1.0 + std::polar(1.0, gamma)) / std::sqrt(2.0);
  const Complex g = beta * std::sqrt((n - 1) / 2.0) * (1.0 + std::polar(1.0, delta));
  h(0, 1) = 1.0;
  h(1, 2) = beta * std::sqrt(2.0);
  h(2, 3) = xi;
  h(2, 5) = g;
  h(3, 4) = 1.0;
  h(5, 6) = 1.0;
  return h + h.adjoint().eval();
}

/// Closed-form Bloch average from the four matrix elements, straight from the formula.
inline double bloch_average(const Matrix7& u) {
  const Complex u51 = u(4, 0), u42 = u(3, 1), u41 = u(3, 0), u52 = u(4, 1);
  return ((std::norm(u51) + std::norm(u42)) / 3.0 +
          (u51 * std::conj(u42) + std::norm(u41) + std::norm(u52) + u42 * std::conj(u51)) / 6.0)
      .real();
}

/// Resource counts by explicit enumeration: one 2D-long chain per unordered
/// sender/receiver pair among n + 1 parties, versus n + 1 D-long spokes and a
/// two-node hub.
inline std::int64_t count_state_transfer(std::int64_t n, std::int64_t d) {
  std::int64_t nodes = 0;
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = a + 1; b <= n; ++b) nodes += 2 * d;
  return nodes;
}

inline std::int64_t count_routing(std::int64_t n, std::int64_t d) {
  std::int64_t nodes = 2;
  for (std::int64_t spoke = 0; spoke <= n; ++spoke) nodes += d;
  return nodes;
}

}  // namespace oracle
