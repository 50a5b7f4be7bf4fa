#include "lily/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace lily {

double bessel_i0_scaled(double k) {
  if (!(k >= 0.0)) {
    throw std::domain_error("lily: bessel_i0_scaled needs k >= 0");
  }
  if (std::isinf(k)) return 0.0;
  if (k <= 15.0) {
    // sum_j (k^2/4)^j / (j!)^2, all terms positive
    const double q = k * k / 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 200; ++j) {
      term *= q / (static_cast<double>(j) * j);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-k);
  }
  // e^{-k} I0(k) ~ (2 pi k)^{-1/2} sum_j ((2j-1)!!)^2 / (j! (8k)^j); stop at the
  // smallest term (the series is asymptotic, not convergent).
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 400; ++j) {
    const double next = term * (2.0 * j - 1.0) * (2.0 * j - 1.0) / (j * 8.0 * k);
    if (next >= term || next < sum * 1e-17) break;
    term = next;
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * k);
}

QuadratureRule periodic_trapezoid_rule(int points) {
  if (points < 3 || points % 2 == 0) {
    throw std::invalid_argument("lily: periodic trapezoid needs an odd number of points >= 3, got " +
                                std::to_string(points));
  }
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.assign(points, 2.0 * std::numbers::pi / points);
  const int half = (points - 1) / 2;
  for (int j = 0; j < points; ++j) {
    rule.nodes[j] = 2.0 * std::numbers::pi * (j - half) / points;
  }
  return rule;
}

QuadratureRule gauss_hermite_rule(int points) {
  if (points < 1) {
    throw std::invalid_argument("lily: Gauss-Hermite needs at least one node");
  }
  // Jacobi matrix of the probabilists' Hermite recurrence He_{j+1} = x He_j - j He_{j-1}.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  for (int j = 1; j < points; ++j) {
    jacobi(j, j - 1) = jacobi(j - 1, j) = std::sqrt(static_cast<double>(j));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("lily: Golub-Welsch eigensolve failed");
  }
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int j = 0; j < points; ++j) {
    rule.nodes[j] = eig.eigenvalues()(j);
    const double lead = eig.eigenvectors()(0, j);
    rule.weights[j] = lead * lead;
  }
  // Symmetrise: the exact rule is odd-symmetric in x.
  for (int j = 0; j < points / 2; ++j) {
    const int m = points - 1 - j;
    const double x = 0.5 * (rule.nodes[m] - rule.nodes[j]);
    const double w = 0.5 * (rule.weights[m] + rule.weights[j]);
    rule.nodes[j] = -x;
    rule.nodes[m] = x;
    rule.weights[j] = rule.weights[m] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

}  // namespace lily
