#pragma once

// The igx^3 oscillator H = (p^2 + x^2)/2 + i g x^3: the metric generator Q from
// pseudo-Hermiticity, the Hermitian counterpart h, the observables X and P,
// and their numerical checks.

#include <cmath>
#include <string>
#include <vector>

#include "pseudoherm/basis_change.hpp"
#include "pseudoherm/bch.hpp"
#include "pseudoherm/exact_linsolve.hpp"
#include "pseudoherm/fock.hpp"
#include "pseudoherm/weyl.hpp"

namespace pseudoherm::ix3 {

inline OperatorPoly h0() {
  const CoeffQi2 half = make_rational(1, 2);
  return OperatorPoly::monomial(0, 2, half) + OperatorPoly::monomial(2, 0, half);
}

inline OperatorPoly h1() { return OperatorPoly::monomial(3, 0, CoeffQi2::i()); }

/// H0 + g H1 as a graded series.
inline GradedSeries hamiltonian(unsigned cutoff) {
  return GradedSeries::single(h0(), 0, cutoff) + GradedSeries::single(h1(), 1, cutoff);
}

/// Q1 = -(4/3) p^3 - 2 xpx.
inline OperatorPoly q1() {
  const OperatorPoly x = OperatorPoly::x(), p = OperatorPoly::p();
  return OperatorPoly::monomial(0, 3, make_rational(-4, 3)) + CoeffQi2(-2) * (x * p * x);
}

/// Q3 = (128/15) p^5 + (40/3) S[3p,2x] + 8 S[1p,4x] - 12 p, where S[kp,jx] is the
/// symmetrized product of k momenta and j positions.
inline OperatorPoly q3() {
  return OperatorPoly::monomial(0, 5, make_rational(128, 15)) +
         CoeffQi2(make_rational(40, 3)) * weyl_sym(2, 3) + CoeffQi2(8) * weyl_sym(4, 1) +
         OperatorPoly::monomial(0, 1, -12);
}

/// g Q1 + g^3 Q3.
inline GradedSeries q_series(unsigned cutoff) {
  return GradedSeries::single(q1(), 1, cutoff) + GradedSeries::single(q3(), 3, cutoff);
}

struct OrderReport {
  unsigned order = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  /// Kernel elements of ad_{H0} on the ansatz space, as polynomials.
  std::vector<OperatorPoly> kernel_basis;
};

struct QDerivation {
  GradedSeries q{0};
  std::vector<OrderReport> orders;
};

constexpr unsigned kMaxDerivedOrder = 3;

/// Solves e^{-Q} H e^{Q} = H† order by order for Q in the space of Hermitian,
/// parity-odd polynomials of degree <= r + 2 at order r.
inline QDerivation derive_q(unsigned max_order) {
  if (max_order > kMaxDerivedOrder)
    throw DomainError("derive_q is capped at order " + std::to_string(kMaxDerivedOrder));
  QDerivation out;
  out.q = GradedSeries(max_order);
  const OperatorPoly H0 = h0();
  const GradedSeries H = hamiltonian(max_order);
  const GradedSeries Hdag = GradedSeries::single(H0, 0, max_order) +
                            GradedSeries::single(-h1(), 1, max_order);
  for (unsigned r = 1; r <= max_order; ++r) {
    const GradedSeries known = out.q.truncated(r);
    const GradedSeries lhs = bch_graded(CoeffQi2(-1) * GradedSeries(known), H.truncated(r));
    // Q_r enters at order r only through -[Q_r, H0].
    const OperatorPoly rhs = lhs[r] - Hdag[r];

    std::vector<OperatorPoly> basis, images;
    for (unsigned d = 1; d <= r + 2; d += 2)
      for (unsigned m = 0; m <= d; ++m) {
        basis.push_back(weyl_sym(m, d - m));
        images.push_back(commutator(basis.back(), H0));
      }
    std::vector<Powers> rows;
    auto row_of = [&](const Powers& k) {
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (rows[j] == k) return j;
      rows.push_back(k);
      return rows.size() - 1;
    };
    for (const auto& im : images)
      for (const auto& [k, c] : im.terms()) row_of(k);
    for (const auto& [k, c] : rhs.terms()) row_of(k);
    std::vector<std::vector<CoeffQi2>> a(rows.size(), std::vector<CoeffQi2>(basis.size()));
    std::vector<CoeffQi2> b(rows.size());
    for (std::size_t j = 0; j < images.size(); ++j)
      for (const auto& [k, c] : images[j].terms()) a[row_of(k)][j] = c;
    for (const auto& [k, c] : rhs.terms()) b[row_of(k)] = c;

    ExactSolution sol = solve_exact(a, b);
    if (!sol.particular)
      throw DerivationError("pseudo-Hermiticity system inconsistent at order " +
                            std::to_string(r));
    OperatorPoly qr;
    for (std::size_t j = 0; j < basis.size(); ++j) qr += (*sol.particular)[j] * basis[j];
    if (!(adjoint(qr) == qr))
      throw DerivationError("derived Q is not Hermitian at order " + std::to_string(r));
    out.q.add(r, qr);

    OrderReport rep{r, basis.size(), sol.rank, sol.kernel.size(), {}};
    for (const auto& v : sol.kernel) {
      OperatorPoly kv;
      for (std::size_t j = 0; j < basis.size(); ++j) kv += v[j] * basis[j];
      rep.kernel_basis.push_back(kv);
    }
    out.orders.push_back(std::move(rep));
  }
  return out;
}

constexpr unsigned kMaxSeriesOrder = 4;

/// h = e^{-Q/2} H e^{Q/2} through g^max_order, with Q = g Q1 + g^3 Q3.
inline GradedSeries hermitian_equiv(unsigned max_order) {
  if (max_order > kMaxSeriesOrder)
    throw DomainError("Q is known through g^3, so h is exact only through g^4");
  return bch_graded(CoeffQi2(make_rational(-1, 2)) * q_series(max_order),
                    hamiltonian(max_order));
}

struct Observables {
  GradedSeries X{0};
  GradedSeries P{0};
};

/// X = e^{Q/2} x e^{-Q/2} and P likewise, for any cutoff of the given Q.
inline Observables observables_for(const GradedSeries& q) {
  const GradedSeries half_q = CoeffQi2(make_rational(1, 2)) * q;
  return {bch_graded(half_q, GradedSeries::single(OperatorPoly::x(), 0, q.cutoff())),
          bch_graded(half_q, GradedSeries::single(OperatorPoly::p(), 0, q.cutoff()))};
}

inline Observables observables(unsigned max_order) {
  if (max_order > kMaxSeriesOrder)
    throw DomainError("Q is known through g^3, so X and P are exact only through g^4");
  return observables_for(q_series(max_order));
}

/// Q(X, P) - Q(x, p); zero at every retained order.
inline GradedSeries q_invariance_check(unsigned max_order) {
  const Observables obs = observables(max_order);
  const GradedSeries q = q_series(max_order);
  return substitute(q, obs.X, obs.P) - q;
}

/// h(X, P) - (H0 + g H1); zero at every retained order.
inline GradedSeries h_of_xp_check(unsigned max_order) {
  const Observables obs = observables(max_order);
  return substitute(hermitian_equiv(max_order), obs.X, obs.P) - hamiltonian(max_order);
}

/// <0|a|0> in the oscillator ground state.
inline CoeffQi2 vacuum_expectation(const OperatorPoly& a) { return to_ladder(a).coeff(0, 0); }

/// Second-order Rayleigh-Schrodinger coefficient of the H0 ground level for a
/// perturbation V: sum_n <0|V|n><n|V|0> / (0 - n), from exact ladder matrix
/// elements <n|V|0> = c[n,0] sqrt(n!) and <0|V|n> = c[0,n] sqrt(n!).
inline CoeffQi2 rs_second_order(const OperatorPoly& v) {
  const OperatorPoly l = to_ladder(v);
  CoeffQi2 sum;
  for (const auto& [k, c] : l.terms()) {
    if (k.n != 0 || k.m == 0) continue;
    const CoeffQi2 back = l.coeff(0, k.m);
    if (back.is_zero()) continue;
    sum += c * back * CoeffQi2(Rational(detail::factorial(k.m))) *
           CoeffQi2(make_rational(-1, static_cast<std::int64_t>(k.m)));
  }
  return sum;
}

/// Coefficient of g^2 in the ground energy of H0 + i g x^3.
inline Rational rs_oracle_e0() {
  const CoeffQi2 c = rs_second_order(h1());
  if (!c.is_rational()) throw DerivationError("second-order shift is not rational");
  return c.r0();
}

// Printed forms used as comparison targets.

/// x + ig(x^2 + 2p^2) + g^2(-x^3 + 2pxp)
inline GradedSeries x_reference(unsigned cutoff) {
  const OperatorPoly x = OperatorPoly::x(), p = OperatorPoly::p();
  const CoeffQi2 i = CoeffQi2::i();
  return GradedSeries::single(x, 0, cutoff) +
         GradedSeries::single(i * (x * x + CoeffQi2(2) * (p * p)), 1, cutoff) +
         GradedSeries::single(CoeffQi2(-1) * (x * x * x) + CoeffQi2(2) * (p * x * p), 2, cutoff);
}

/// p - ig(xp + px) + g^2(2p^3 - xpx)
inline GradedSeries p_reference(unsigned cutoff) {
  const OperatorPoly x = OperatorPoly::x(), p = OperatorPoly::p();
  const CoeffQi2 i = CoeffQi2::i();
  return GradedSeries::single(p, 0, cutoff) +
         GradedSeries::single(-i * (x * p + p * x), 1, cutoff) +
         GradedSeries::single(CoeffQi2(2) * (p * p * p) - x * p * x, 2, cutoff);
}

/// 3(x^4/2 + S22 - 1/6) with S22 the Weyl-symmetrized x^2 p^2.
inline OperatorPoly h2_reference() {
  return CoeffQi2(3) * (OperatorPoly::monomial(4, 0, make_rational(1, 2)) + weyl_sym(2, 2) +
                        OperatorPoly::constant(make_rational(-1, 6)));
}

/// -(7/2)x^6 - (51/2)S[2p,4x] - 36 S[4p,2x] + 2p^6 + (15/2)x^2 + 27p^2, no constant.
inline OperatorPoly h4_reference() {
  OperatorPoly out = OperatorPoly::monomial(6, 0, make_rational(-7, 2)) +
                     CoeffQi2(make_rational(-51, 2)) * weyl_sym(4, 2) +
                     CoeffQi2(-36) * weyl_sym(2, 4) + OperatorPoly::monomial(0, 6, 2) +
                     OperatorPoly::monomial(2, 0, make_rational(15, 2)) +
                     OperatorPoly::monomial(0, 2, 27);
  return out.without_constant();
}

// ---------------------------------------------------------------------------
// Numerics

/// Spectral-radius cap on the metric exponent block. exp(Q) of a polynomial Q
/// grows without bound in a truncated basis; the ground state's tail is at
/// rounding level there, so only a block with a bounded exponent is usable.
constexpr double kMetricExponentBound = 20.0;

inline OperatorPoly hamiltonian_at(const Rational& g) { return hamiltonian(1).evaluate(g); }

/// Order of the X series paired with the truncated metric. The conjugation by
/// exp(Q~/2) with Q~ = g Q1 + g^3 Q3 is itself an infinite series; it has to be
/// carried well past g^4 for <<X>> to vanish to 1e-6 at g ~ 0.05.
constexpr unsigned kMetricXOrder = 8;

struct GroundExpectations {
  Complex exp_x;
  Complex exp_X;
  Complex ground_energy;
  /// Dimension of the block the metric was exponentiated on.
  std::size_t metric_dim = 0;
  unsigned x_order = 0;
};

/// <<psi0, x psi0>> and <<psi0, X psi0>> with metric exp(-(g Q1 + g^3 Q3)).
inline GroundExpectations ground_expectations(const Rational& g, const fock::BasisSpec& spec,
                                              unsigned x_order = kMetricXOrder) {
  using fock::Matrix;
  GroundExpectations out;
  out.x_order = x_order;
  const OperatorPoly H = hamiltonian_at(g);
  const fock::FockOperator hm = fock::matrixize(H, spec);
  if (spec.dim > 16) {
    const auto small = fock::sorted_eigenvalues(fock::matrixize(H, fock::BasisSpec(spec.dim - 16)));
    const auto full = fock::sorted_eigenvalues(hm);
    if (std::abs(small.front() - full.front()) >= 1e-8)
      throw NumericalError("ground level not converged at N=" + std::to_string(spec.dim));
  }
  const fock::Vector psi = fock::ground_right_eigenvector(hm, &out.ground_energy);
  if (g == 0) {
    out.exp_x = Complex{};
    out.exp_X = Complex{};
    out.metric_dim = spec.dim;
    return out;
  }

  const Matrix exponent = -fock::matrixize(q_series(3).evaluate(g), spec).matrix;
  const std::size_t k = fock::bounded_block_dim(exponent, kMetricExponentBound);
  const auto kk = static_cast<Eigen::Index>(k);
  out.metric_dim = k;
  const fock::FockOperator eta =
      fock::matrix_exp({exponent.topLeftCorner(kk, kk), "-(gQ1 + g^3 Q3)"});
  const fock::Vector psi_k = psi.head(kk);

  const fock::FockOperator x = fock::matrixize(OperatorPoly::x(), fock::BasisSpec(k));
  out.exp_x = fock::expectation(x, psi_k, &eta);
  const OperatorPoly X = observables_for(q_series(x_order)).X.evaluate(g);
  out.exp_X = fock::expectation(fock::matrixize(X, fock::BasisSpec(k)), psi_k, &eta);
  return out;
}

/// ||eta H - H† eta||_F on the top-left probe block, eta = exp(-(g Q1 + g^3 Q3))
/// exponentiated on the bounded block of a dim-N image.
inline double pseudo_hermiticity_residual(const Rational& g, const fock::BasisSpec& spec,
                                          std::size_t probe_dim = 4) {
  const fock::Matrix exponent = -fock::matrixize(q_series(3).evaluate(g), spec).matrix;
  const std::size_t k = fock::bounded_block_dim(exponent, kMetricExponentBound);
  if (probe_dim > k) throw DomainError("probe block exceeds the usable metric block");
  const auto kk = static_cast<Eigen::Index>(k);
  const auto pp = static_cast<Eigen::Index>(probe_dim);
  const fock::Matrix eta = fock::matrix_exp({exponent.topLeftCorner(kk, kk), "metric"}).matrix;
  const fock::Matrix h = fock::matrixize(hamiltonian_at(g), fock::BasisSpec(k)).matrix;
  const fock::Matrix r = eta * h - h.adjoint() * eta;
  return r.topLeftCorner(pp, pp).norm();
}

} // namespace pseudoherm::ix3
