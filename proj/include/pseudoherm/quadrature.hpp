#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "pseudoherm/errors.hpp"

namespace pseudoherm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for weight e^{-y^2} (Golub-Welsch: eigen-decomposition of
/// the Jacobi matrix of the physicists' Hermite recurrence).
inline QuadratureRule gauss_hermite(std::size_t n) {
  if (n == 0) throw DomainError("quadrature needs at least one node");
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 1; i < k; ++i) j(i, i - 1) = j(i - 1, i) = std::sqrt(0.5 * double(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  if (es.info() != Eigen::Success) throw NumericalError("Gauss-Hermite eigensolve failed");
  QuadratureRule rule;
  const double sqrt_pi = std::sqrt(M_PI);
  for (Eigen::Index i = 0; i < k; ++i) {
    rule.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    rule.weights.push_back(sqrt_pi * v0 * v0);
  }
  return rule;
}

} // namespace pseudoherm
