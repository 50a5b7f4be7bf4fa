#pragma once

#include <vector>

namespace lily {

/// e^{-k} I0(k) for k >= 0. Power series up to k = 15, asymptotic expansion
/// beyond; never overflows.
double bessel_i0_scaled(double k);

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Equispaced periodic trapezoid rule on [-pi, pi) with `points` nodes placed
/// symmetrically about 0 (points must be odd and >= 3). Weights sum to 2 pi.
QuadratureRule periodic_trapezoid_rule(int points);

/// Gauss-Hermite rule for the standard normal weight e^{-x^2/2}/sqrt(2 pi)
/// (weights sum to 1), computed by Golub-Welsch.
QuadratureRule gauss_hermite_rule(int points);

}  // namespace lily
