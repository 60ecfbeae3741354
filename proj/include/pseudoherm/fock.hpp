#pragma once

// Truncated oscillator-basis numerics: matrix images of operator polynomials,
// dense non-Hermitian spectra, matrix exponentials and metric expectations.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pseudoherm/basis_change.hpp"
#include "pseudoherm/errors.hpp"
#include "pseudoherm/operator_poly.hpp"

namespace pseudoherm::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncation policy: matrices are built at dim + headroom and cropped to dim.
struct BasisSpec {
  std::size_t dim = 64;
  /// Defaults to the total degree of the operator being matrixized.
  std::optional<std::size_t> headroom;

  explicit BasisSpec(std::size_t n, std::optional<std::size_t> h = std::nullopt)
      : dim(n), headroom(h) {
    if (n < 2) throw DomainError("basis dimension must be at least 2");
  }
};

struct FockOperator {
  Matrix matrix;
  std::string provenance;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

inline FockOperator identity(std::size_t dim) {
  return {Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
          "identity"};
}

/// Annihilation a with a[n-1, n] = sqrt(n), and its conjugate transpose.
inline std::pair<FockOperator, FockOperator> ladder_matrices(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  std::string tag = "N=" + std::to_string(dim);
  return {{a, "a " + tag}, {a.adjoint(), "a† " + tag}};
}

/// Matrix image of a polynomial: each normal-ordered monomial a†^m a^n is
/// multiplied out at dim + headroom, then cropped.
template <class Scalar>
FockOperator matrixize(const BasicOperatorPoly<Scalar>& a, const BasisSpec& spec) {
  const auto ladder = to_ladder(a);
  const std::size_t headroom = spec.headroom.value_or(ladder.degree());
  const std::size_t big = spec.dim + headroom;
  const auto n = static_cast<Eigen::Index>(spec.dim);
  auto [ann, adag] = ladder_matrices(big);
  std::vector<Matrix> ann_pow{Matrix::Identity(ann.matrix.rows(), ann.matrix.cols())};
  std::vector<Matrix> adag_pow{ann_pow.front()};
  Matrix big_out = Matrix::Zero(ann.matrix.rows(), ann.matrix.cols());
  for (const auto& [k, c] : ladder.terms()) {
    while (adag_pow.size() <= k.m) adag_pow.push_back(adag_pow.back() * adag.matrix);
    while (ann_pow.size() <= k.n) ann_pow.push_back(ann_pow.back() * ann.matrix);
    big_out += ScalarTraits<Scalar>::to_complex(c) * (adag_pow[k.m] * ann_pow[k.n]);
  }
  std::ostringstream note;
  note << "matrixize(degree " << ladder.degree() << ", " << ladder.size() << " terms, N="
       << spec.dim << ", headroom " << headroom << ")";
  return {big_out.topLeftCorner(n, n), note.str()};
}

/// Eigenvalues sorted by real part, ties by imaginary part.
struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  /// Stable under N -> N - delta_dim within tol; empty when no comparison ran.
  std::vector<bool> converged;
  std::size_t dim = 0;
  std::size_t delta_dim = 0;
  double tol = 0.0;

  std::size_t converged_prefix() const {
    std::size_t k = 0;
    while (k < converged.size() && converged[k]) ++k;
    return k;
  }
};

inline void sort_spectrum(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

inline std::vector<Complex> sorted_eigenvalues(const FockOperator& op) {
  Eigen::ComplexEigenSolver<Matrix> solver(op.matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration did not converge for " + op.provenance);
  const Vector& ev = solver.eigenvalues();
  std::vector<Complex> values(ev.data(), ev.data() + ev.size());
  sort_spectrum(values);
  return values;
}

inline SpectrumReport eigenvalues(const FockOperator& op) {
  SpectrumReport r;
  r.eigenvalues = sorted_eigenvalues(op);
  r.dim = op.dim();
  return r;
}

/// Spectrum of op with convergence flags from a smaller-dimension image.
inline SpectrumReport eigenvalues(const FockOperator& op, const FockOperator& comparison,
                                  double tol = 1e-8) {
  SpectrumReport r = eigenvalues(op);
  const auto smaller = sorted_eigenvalues(comparison);
  r.delta_dim = op.dim() - comparison.dim();
  r.tol = tol;
  r.converged.assign(r.eigenvalues.size(), false);
  for (std::size_t k = 0; k < smaller.size() && k < r.eigenvalues.size(); ++k)
    r.converged[k] = std::abs(r.eigenvalues[k] - smaller[k]) < tol;
  return r;
}

/// Convergence-scanned spectrum of a polynomial at spec.dim versus spec.dim - delta_dim.
template <class Scalar>
SpectrumReport spectrum(const BasicOperatorPoly<Scalar>& a, const BasisSpec& spec,
                        std::size_t delta_dim = 16, double tol = 1e-8) {
  if (delta_dim >= spec.dim) throw DomainError("delta_dim must be below the basis dimension");
  return eigenvalues(matrixize(a, spec),
                     matrixize(a, BasisSpec(spec.dim - delta_dim, spec.headroom)), tol);
}

/// Right eigenvector of the smallest-real-part eigenvalue: unit norm, largest
/// component real positive.
inline Vector ground_right_eigenvector(const FockOperator& op, Complex* eigenvalue = nullptr) {
  Eigen::ComplexEigenSolver<Matrix> solver(op.matrix, true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration did not converge for " + op.provenance);
  const Vector& ev = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index k = 0; k < ev.size(); ++k) order[static_cast<std::size_t>(k)] = k;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (ev[a].real() != ev[b].real()) return ev[a].real() < ev[b].real();
    return ev[a].imag() < ev[b].imag();
  });
  if (order.size() > 1 && std::abs(ev[order[0]] - ev[order[1]]) <= 1e-10)
    throw AmbiguityError("degenerate ground level for " + op.provenance);
  Vector v = solver.eigenvectors().col(order[0]);
  v.normalize();
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::abs(v[big]) / v[big];
  v[big] = std::abs(v[big]);
  if (eigenvalue) *eigenvalue = ev[order[0]];
  return v;
}

namespace detail {

inline bool is_hermitian(const Matrix& a, double rel_tol = 1e-14) {
  return (a - a.adjoint()).norm() <= rel_tol * std::max(1.0, a.norm());
}

inline Matrix exp_raw(const Matrix& a) {
  const auto n = a.rows();
  if (is_hermitian(a)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    const Eigen::VectorXd d = es.eigenvalues().array().exp();
    Matrix e = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    return 0.5 * (e + e.adjoint());
  }
  // Scaling and squaring around a degree-18 Taylor core.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

} // namespace detail

struct ExpDiagnostics {
  /// ||exp(A) exp(-A) - I||_F
  double residual = 0.0;
  /// ||exp(A)||_F ||exp(-A)||_F, the amplification any floating-point
  /// evaluation of the residual is subject to.
  double scale = 1.0;
};

/// exp(A). Fails when ||exp(A)exp(-A) - I||_F exceeds 1e-10 * max(1, scale).
inline FockOperator matrix_exp(const FockOperator& op, ExpDiagnostics* diag = nullptr) {
  const auto n = op.matrix.rows();
  Matrix e = detail::exp_raw(op.matrix);
  Matrix einv = detail::exp_raw(-op.matrix);
  if (!e.allFinite() || !einv.allFinite())
    throw NumericalError("matrix exponential overflowed for " + op.provenance);
  ExpDiagnostics d;
  d.residual = (e * einv - Matrix::Identity(n, n)).norm();
  d.scale = e.norm() * einv.norm();
  if (diag) *diag = d;
  if (!(d.residual <= 1e-10 * std::max(1.0, d.scale)))
    throw NumericalError("matrix exponential residual check failed for " + op.provenance);
  return {std::move(e), "exp(" + op.provenance + ")"};
}

/// <state, metric op state> / <state, metric state>; identity metric when absent.
inline Complex expectation(const FockOperator& op, const Vector& state,
                           const FockOperator* metric = nullptr) {
  if (op.matrix.rows() != state.size() || (metric && metric->matrix.rows() != state.size()))
    throw DomainError("expectation: dimension mismatch");
  const Vector op_state = op.matrix * state;
  const Complex num = metric ? state.dot(metric->matrix * op_state) : state.dot(op_state);
  const Complex den = metric ? state.dot(metric->matrix * state) : state.dot(state);
  if (std::abs(den) < 1e-14) throw NumericalError("degenerate metric normalization");
  return num / den;
}

/// Largest top-left block whose Hermitian exponent has spectral radius <= bound.
inline std::size_t bounded_block_dim(const Matrix& hermitian_exponent, double bound,
                                     std::size_t min_dim = 2) {
  auto radius = [&](Eigen::Index k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_exponent.topLeftCorner(k, k),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  auto k = hermitian_exponent.rows();
  while (k > static_cast<Eigen::Index>(min_dim) && radius(k) > bound) --k;
  return static_cast<std::size_t>(k);
}

} // namespace pseudoherm::fock
