#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace lily {

inline constexpr int kReducedDim = 7;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ReducedMatrix = Eigen::Matrix<std::complex<Scalar>, kReducedDim, kReducedDim>;

template <typename Scalar>
using ReducedVector = Eigen::Matrix<std::complex<Scalar>, kReducedDim, 1>;

using ReducedMatrixd = ReducedMatrix<double>;
using ReducedVectord = ReducedVector<double>;

// Optimal routing point: perfect transfer at t = pi (mod 2 pi).
inline constexpr double kOptimalBeta = 0.86602540378443864676;  // sqrt(3)/2
inline constexpr double kOptimalGamma = 0.0;
inline constexpr double kOptimalDelta = std::numbers::pi;

/// Router layout with raw layer phases.
struct LilyParams {
  int n = 2;
  double beta = kOptimalBeta;
  double phi0 = std::numbers::pi;
  double phi1 = std::numbers::pi;
  double phi2 = 0.0;
};

struct EffectivePhases {
  double gamma = 0.0;
  double delta = 0.0;
};

/// The three control parameters that survive the reduction.
struct ControlPoint {
  double beta = kOptimalBeta;
  double gamma = kOptimalGamma;
  double delta = kOptimalDelta;
};

/// Index layout of the full (4 + 2n)-node graph. Routing/output slot 0 is the
/// selected pair (r, f).
struct NodeIndexMap {
  int n = 2;

  static constexpr int input1 = 0;
  static constexpr int input2 = 1;
  static constexpr int k1 = 2;
  static constexpr int k2 = 3;

  int routing(int i) const { return 4 + i; }
  int output(int i) const { return 4 + n + i; }
  int dim() const { return 4 + 2 * n; }
};

namespace detail {

inline void require_outputs(int n) {
  if (n < 2) {
    throw std::invalid_argument("lily: number of outputs must be >= 2, got " + std::to_string(n));
  }
}

template <typename Scalar>
void require_finite(Scalar v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("lily: non-finite ") + what);
  }
}

}  // namespace detail

/// Wraps an angle into [-pi, pi).
template <typename Scalar>
Scalar wrap_phase(Scalar x) {
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Scalar w = x - two_pi * std::floor((x + std::numbers::pi_v<Scalar>) / two_pi);
  // floor() round-off can land exactly on +pi
  if (w >= std::numbers::pi_v<Scalar>) w -= two_pi;
  return w;
}

inline EffectivePhases effective_phases(double phi0, double phi1, double phi2) {
  return {wrap_phase(-(phi1 + phi0)), wrap_phase(-(phi2 + phi0))};
}

inline EffectivePhases effective_phases(const LilyParams& p) {
  return effective_phases(p.phi0, p.phi1, p.phi2);
}

/// Coupling between the chiral superposition and the selected routing node.
template <typename Scalar>
std::complex<Scalar> transmission_coefficient(Scalar beta, Scalar gamma) {
  return beta * (Scalar(1) + std::polar(Scalar(1), gamma)) / std::sqrt(Scalar(2));
}

/// Coupling between the chiral superposition and the unselected routing nodes.
/// Vanishes identically at delta = pi.
template <typename Scalar>
std::complex<Scalar> leakage_coefficient(int n, Scalar beta, Scalar delta) {
  // 1 + e^{i pi} leaves ~1e-16 in floating point; the closed channel must be exact.
  if (wrap_phase(delta) == -std::numbers::pi_v<Scalar>) return Scalar(0);
  return beta * std::sqrt(Scalar(n - 1) / Scalar(2)) * (Scalar(1) + std::polar(Scalar(1), delta));
}

/// Seven-state Hamiltonian in the basis
/// {|1>, |2>, chiral sum, r, f, unselected routing sum, unselected output sum}.
template <typename Scalar = double>
ReducedMatrix<Scalar> build_reduced_hamiltonian(int n, Scalar beta, Scalar gamma, Scalar delta) {
  detail::require_outputs(n);
  detail::require_finite(beta, "beta");
  detail::require_finite(gamma, "gamma");
  detail::require_finite(delta, "delta");

  ReducedMatrix<Scalar> h = ReducedMatrix<Scalar>::Zero();
  auto link = [&h](int j, int k, std::complex<Scalar> w) {
    h(j, k) = w;
    h(k, j) = std::conj(w);
  };
  link(0, 1, Scalar(1));
  link(1, 2, beta * std::sqrt(Scalar(2)));
  link(2, 3, transmission_coefficient(beta, gamma));
  link(2, 5, leakage_coefficient(n, beta, delta));
  link(3, 4, Scalar(1));
  link(5, 6, Scalar(1));
  return h;
}

inline ReducedMatrixd build_reduced_hamiltonian(int n, const ControlPoint& c) {
  return build_reduced_hamiltonian<double>(n, c.beta, c.gamma, c.delta);
}

/// Full Lily-graph Hamiltonian: input pair, chiral pair (k1, k2), n routing
/// nodes and n output nodes. Phase-carrying edges follow H_jk = w e^{-i phi}:
/// (2,k1) carries phi0, (k1,r) phi1, (k1,l) phi2. Each unselected routing node
/// feeds its own unselected output.
template <typename Scalar = double>
std::pair<ComplexMatrix<Scalar>, NodeIndexMap> build_full_hamiltonian(int n, Scalar beta, Scalar phi0,
                                                                      Scalar phi1, Scalar phi2) {
  detail::require_outputs(n);
  detail::require_finite(beta, "beta");
  detail::require_finite(phi0, "phi0");
  detail::require_finite(phi1, "phi1");
  detail::require_finite(phi2, "phi2");

  const NodeIndexMap map{n};
  ComplexMatrix<Scalar> h = ComplexMatrix<Scalar>::Zero(map.dim(), map.dim());
  auto link = [&h](int j, int k, std::complex<Scalar> w) {
    h(j, k) = w;
    h(k, j) = std::conj(w);
  };
  auto phased = [beta](Scalar phi) { return beta * std::polar(Scalar(1), -phi); };

  link(map.input1, map.input2, Scalar(1));
  link(map.input2, map.k1, phased(phi0));
  link(map.input2, map.k2, beta);

  const int r = map.routing(0);
  const int f = map.output(0);
  link(map.k1, r, phased(phi1));
  link(map.k2, r, beta);
  link(r, f, Scalar(1));

  for (int i = 1; i < n; ++i) {
    const int l = map.routing(i);
    link(map.k1, l, phased(phi2));
    link(map.k2, l, beta);
    link(l, map.output(i), Scalar(1));
  }
  return {std::move(h), map};
}

inline std::pair<ComplexMatrix<double>, NodeIndexMap> build_full_hamiltonian(const LilyParams& p) {
  return build_full_hamiltonian<double>(p.n, p.beta, p.phi0, p.phi1, p.phi2);
}

/// Columns are the seven grouped states written in the full node basis.
template <typename Scalar = double>
ComplexMatrix<Scalar> reduction_isometry(int n, Scalar phi0) {
  detail::require_outputs(n);
  detail::require_finite(phi0, "phi0");

  const NodeIndexMap map{n};
  ComplexMatrix<Scalar> v = ComplexMatrix<Scalar>::Zero(map.dim(), kReducedDim);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  const Scalar spread = Scalar(1) / std::sqrt(Scalar(n - 1));

  v(map.input1, 0) = Scalar(1);
  v(map.input2, 1) = Scalar(1);
  v(map.k1, 2) = std::polar(inv_sqrt2, phi0);
  v(map.k2, 2) = inv_sqrt2;
  v(map.routing(0), 3) = Scalar(1);
  v(map.output(0), 4) = Scalar(1);
  for (int i = 1; i < n; ++i) {
    v(map.routing(i), 5) = spread;
    v(map.output(i), 6) = spread;
  }
  return v;
}

}  // namespace lily
