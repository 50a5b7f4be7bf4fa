#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lily/graph.hpp"

namespace lily {

/// e^{-iHt} through the eigendecomposition H = Q diag(lambda) Q^dagger.
template <typename Derived>
typename Derived::PlainObject hermitian_expm(const Eigen::MatrixBase<Derived>& h, typename Derived::RealScalar t) {
  using Plain = typename Derived::PlainObject;
  using Real = typename Derived::RealScalar;
  Eigen::SelfAdjointEigenSolver<Plain> eig(h.derived());
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("lily: eigendecomposition failed (non-finite Hamiltonian?)");
  }
  const auto phases = (eig.eigenvalues() * (-t))
                          .unaryExpr([](Real a) { return std::polar(Real(1), a); })
                          .eval();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Cached spectral decomposition; evaluates e^{-iHt} for many t at the cost of
/// one diagonalisation.
template <typename MatrixType>
class SpectralPropagator {
 public:
  using Real = typename MatrixType::RealScalar;

  explicit SpectralPropagator(const MatrixType& h) : eig_(h) {
    if (eig_.info() != Eigen::Success) {
      throw std::runtime_error("lily: eigendecomposition failed (non-finite Hamiltonian?)");
    }
  }

  MatrixType evolve(Real t) const {
    return eig_.eigenvectors() * phases(t).asDiagonal() * eig_.eigenvectors().adjoint();
  }

  /// e^{-iHt} applied to a block of column vectors.
  template <typename Block>
  typename Block::PlainObject apply(Real t, const Eigen::MatrixBase<Block>& states) const {
    const auto& q = eig_.eigenvectors();
    return q * (phases(t).asDiagonal() * (q.adjoint() * states.derived()));
  }

 private:
  auto phases(Real t) const {
    return (eig_.eigenvalues() * (-t)).unaryExpr([](Real a) { return std::polar(Real(1), a); }).eval();
  }

  Eigen::SelfAdjointEigenSolver<MatrixType> eig_;
};

/// Amplitudes of |1> and |2> (the qubit input) after evolution: columns 0 and 1
/// of the seven-state propagator.
using InputBlock = Eigen::Matrix<std::complex<double>, kReducedDim, 2>;

/// Piecewise-constant control sequence. Sample j holds on [j*dt, (j+1)*dt).
struct ParameterPath {
  double dt = 0.0;
  std::vector<ControlPoint> samples;

  double span() const { return dt * static_cast<double>(samples.size()); }
};

/// Time-ordered product of per-step exponentials, earliest sample acting first.
ReducedMatrixd trotter_evolve(int n, const ParameterPath& path);

/// Evolves the input block along the path and calls visit(i, block) with the
/// state at times[i]. Times must be ascending, non-negative and within the path
/// span; a time that falls inside a step is reached with a partial step of the
/// current sample.
void trotter_sweep(int n, const ParameterPath& path, std::span<const double> times,
                   const std::function<void(std::size_t, const InputBlock&)>& visit);

}  // namespace lily
