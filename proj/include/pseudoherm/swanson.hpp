#pragma once

// The Swanson oscillator H = w a†a + alpha a^2 + beta a†^2: the two similarity
// transforms to a Hermitian oscillator, the Bogoliubov family of the
// three-exponential U, wavefunctions and the (X, P) observables.

#include <boost/math/special_functions/hermite.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pseudoherm/basis_change.hpp"
#include "pseudoherm/bch.hpp"
#include "pseudoherm/fock.hpp"
#include "pseudoherm/quadrature.hpp"

namespace pseudoherm::swanson {

struct SwansonParams {
  Rational omega{1};
  Rational alpha{0};
  Rational beta{0};

  double omega_d() const { return to_double(omega); }
  double alpha_d() const { return to_double(alpha); }
  double beta_d() const { return to_double(beta); }
};

/// Throws unless w - alpha - beta > 0 and w^2 - 4 alpha beta > 0.
inline void require_positive_domain(const SwansonParams& s) {
  if (!(s.omega - s.alpha - s.beta > 0))
    throw DomainError("Swanson parameters need omega > alpha + beta");
  if (!(s.omega * s.omega - 4 * s.alpha * s.beta > 0))
    throw DomainError("Swanson parameters need omega^2 > 4 alpha beta");
}

struct DerivedScales {
  double omega_eff = 0; // sqrt(w^2 - 4 alpha beta)
  Rational lambda;      // (beta - alpha) / (w - alpha - beta)
  double mu = 0;        // (w^2 - 4 alpha beta)^{1/4} / (w - alpha - beta)^{1/2}
};

inline DerivedScales derived_scales(const SwansonParams& s) {
  require_positive_domain(s);
  DerivedScales d;
  const Rational disc = s.omega * s.omega - 4 * s.alpha * s.beta;
  const Rational denom = s.omega - s.alpha - s.beta;
  d.omega_eff = std::sqrt(to_double(disc));
  d.lambda = (s.beta - s.alpha) / denom;
  d.mu = std::pow(to_double(disc), 0.25) / std::sqrt(to_double(denom));
  return d;
}

/// Position-basis H, including the -w/2 that normal ordering leaves behind.
inline OperatorPoly hamiltonian(const SwansonParams& s) {
  OperatorPoly l(Basis::Ladder);
  l.add_term({1, 1}, s.omega);
  l.add_term({0, 2}, s.alpha);
  l.add_term({2, 0}, s.beta);
  return to_position(l);
}

/// rho H rho^{-1} with rho = exp(lambda x^2 / 2); exact.
inline OperatorPoly hermitian_equiv_x2(const SwansonParams& s) {
  const DerivedScales d = derived_scales(s);
  return bch_terminating(OperatorPoly::monomial(2, 0, Rational(d.lambda / 2)), hamiltonian(s));
}

/// (w - alpha - beta) p^2 / 2 + (w^2 - 4 alpha beta) / (w - alpha - beta) x^2 / 2 - w/2.
inline OperatorPoly x2_reference(const SwansonParams& s) {
  const Rational denom = s.omega - s.alpha - s.beta;
  return OperatorPoly::monomial(0, 2, Rational(denom / 2)) +
         OperatorPoly::monomial(2, 0, Rational((s.omega * s.omega - 4 * s.alpha * s.beta) / denom / 2)) +
         OperatorPoly::constant(Rational(-s.omega / 2));
}

/// S H S^{-1} with S = exp(N ln(alpha/beta) / 4): a†^m a^n picks up (alpha/beta)^{(m-n)/4}.
inline NumericPoly hermitian_equiv_N(const SwansonParams& s) {
  if (!(s.alpha > 0) || !(s.beta > 0))
    throw DomainError("ln(alpha/beta) needs alpha > 0 and beta > 0");
  const double r = std::pow(to_double(s.alpha / s.beta), 0.25);
  const NumericPoly l = to_numeric(to_ladder(hamiltonian(s)));
  NumericPoly out(Basis::Ladder);
  for (const auto& [k, c] : l.terms())
    out.add_term(k, c * std::pow(r, static_cast<double>(k.m) - static_cast<double>(k.n)));
  return chop(to_position(out), 1e-14);
}

/// p^2 (w - 2 sqrt(alpha beta)) / 2 + x^2 (w + 2 sqrt(alpha beta)) / 2 - w/2.
inline NumericPoly n_reference(const SwansonParams& s) {
  const double w = s.omega_d(), q = std::sqrt(s.alpha_d() * s.beta_d());
  NumericPoly out;
  out.add_term({0, 2}, 0.5 * (w - 2 * q));
  out.add_term({2, 0}, 0.5 * (w + 2 * q));
  out.add_term({0, 0}, -0.5 * w);
  return out;
}

/// Omega (n + 1/2) - w/2 for n = 0..levels-1.
inline std::vector<double> exact_levels(const SwansonParams& s, std::size_t levels) {
  const DerivedScales d = derived_scales(s);
  std::vector<double> out;
  for (std::size_t n = 0; n < levels; ++n)
    out.push_back(d.omega_eff * (static_cast<double>(n) + 0.5) - 0.5 * s.omega_d());
  return out;
}

// ---------------------------------------------------------------------------
// Bogoliubov family

struct BogoliubovFamily {
  double g1 = 0, g2 = 0, g3 = 0, g4 = 0;

  double w() const { return (g3 * g4 - g1 * g2) / (g4 * g4); }
  double z() const { return g4 / g1; }

  /// g1 g4 - g2 g3 - 1, the two quadratic conditions, and g1 g3 - g2 g4.
  std::vector<double> residuals(const SwansonParams& s) const {
    const double w = s.omega_d(), a = s.alpha_d(), b = s.beta_d();
    return {g1 * g4 - g2 * g3 - 1, g2 * g4 * w + g2 * g2 * a + g4 * g4 * b,
            g1 * g3 * w + g1 * g1 * a + g3 * g3 * b, g1 * g3 - g2 * g4};
  }

  double max_residual(const SwansonParams& s, bool with_fourth = false) const {
    const auto r = residuals(s);
    double m = 0;
    for (std::size_t k = 0; k < (with_fourth ? 4u : 3u); ++k) m = std::max(m, std::abs(r[k]));
    return m;
  }
};

namespace detail {

/// Real roots of a u^2 + b u + c = 0; linear when a = 0.
inline std::vector<double> real_roots(double a, double b, double c) {
  if (a == 0) {
    if (b == 0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  const double sq = std::sqrt(disc);
  // Avoid cancellation in the smaller root.
  const double qq = -0.5 * (b + std::copysign(sq, b));
  if (qq == 0) return {0.0, 0.0};
  return {qq / a, c / qq};
}

} // namespace detail

/// Both branches of the one-parameter family at fixed g1 (one per root g3).
inline std::vector<BogoliubovFamily> solve_bogoliubov(double g1, const SwansonParams& s) {
  if (g1 == 0) throw DomainError("g1 must be nonzero");
  const double w = s.omega_d(), a = s.alpha_d(), b = s.beta_d();
  if (s.beta != 0 && w * w - 4 * a * b < 0)
    throw DomainError("no real solution: omega^2 - 4 alpha beta < 0");
  // s3 = g3/g1 solves b s^2 + w s + a = 0; t = g2/g4 solves a t^2 + w t + b = 0.
  const std::vector<double> s_roots = detail::real_roots(b, w, a);
  if (s_roots.empty()) throw DomainError("no real solution for g3");
  const std::vector<double> t_roots = detail::real_roots(a, w, b);
  std::vector<BogoliubovFamily> out;
  for (double s3 : s_roots) {
    BogoliubovFamily f;
    f.g1 = g1;
    f.g3 = g1 * s3;
    double best = 0;
    std::optional<double> t_best;
    for (double t : t_roots)
      if (std::abs(g1 - t * f.g3) > best) {
        best = std::abs(g1 - t * f.g3);
        t_best = t;
      }
    if (t_best && best > 1e-12 * std::abs(g1)) {
      f.g4 = 1 / (g1 - *t_best * f.g3);
      f.g2 = *t_best * f.g4;
    } else if (s.alpha == 0 && f.g3 != 0) {
      // g4 = 0 is admissible only when alpha vanishes.
      f.g4 = 0;
      f.g2 = -1 / f.g3;
    } else {
      throw DomainError("no nonsingular (g2, g4) for g3 = " + std::to_string(f.g3));
    }
    out.push_back(f);
  }
  return out;
}

/// Values of g1 for which some branch also satisfies g1 g3 = g2 g4, i.e.
/// g1^4 = t / (s (1 - t s)^2) with s = g3/g1, t = g2/g4.
inline std::vector<double> fourth_constraint_g1(const SwansonParams& s) {
  std::vector<double> out;
  for (const auto& f : solve_bogoliubov(1.0, s)) {
    if (f.g4 == 0 || f.g3 == 0) continue;
    const double s3 = f.g3 / f.g1, t = f.g2 / f.g4;
    const double q4 = t / (s3 * (1 - t * s3) * (1 - t * s3));
    if (!(q4 > 0)) continue;
    const double g = std::pow(q4, 0.25);
    out.push_back(g);
    out.push_back(-g);
  }
  return out;
}

/// Families satisfying all four conditions.
inline std::vector<BogoliubovFamily> fourth_constraint_families(const SwansonParams& s) {
  std::vector<BogoliubovFamily> out;
  for (double g1 : fourth_constraint_g1(s))
    for (const auto& f : solve_bogoliubov(g1, s))
      if (f.max_residual(s, true) < 1e-12) out.push_back(f);
  return out;
}

struct DirectionReport {
  std::string direction; // "U H U^-1" or "U^-1 H U"
  bool computed = false;
  std::string failure;
  std::vector<Complex> eigenvalues;
  std::size_t converged = 0;
  double max_error = 0; // over converged levels compared with exact_levels
  bool matches = false;
};

struct UReport {
  BogoliubovFamily family;
  double w = 0, z = 0;
  double condition = 0;
  bool ill_conditioned = false;
  std::vector<DirectionReport> directions;
  /// Some direction reproduces the oscillator levels within 1e-6.
  bool any_match() const {
    for (const auto& d : directions)
      if (d.matches) return true;
    return false;
  }
};

/// Builds U = exp((g3/g1 - g2/g4) a†^2 / 2) exp(w d^2 / 2) exp(c d ln z) numerically
/// and checks which conjugation direction yields the oscillator spectrum.
inline UReport verify_swanson_U(const BogoliubovFamily& f, const SwansonParams& s,
                                const fock::BasisSpec& spec, std::size_t levels = 8,
                                std::size_t delta_dim = 16) {
  using fock::Matrix;
  UReport rep;
  rep.family = f;
  rep.w = f.w();
  rep.z = f.z();
  const std::size_t big = spec.dim + 32;
  const auto [am, adm] = fock::ladder_matrices(big);
  const Matrix& a = am.matrix;
  const Matrix& ad = adm.matrix;
  const Matrix c = f.g1 * ad - f.g3 * a;
  const Matrix d = f.g4 * a - f.g2 * ad;
  const Complex ln_z = std::log(Complex(rep.z));
  const Matrix e1 = 0.5 * (f.g3 / f.g1 - f.g2 / f.g4) * (ad * ad);
  const Matrix e2 = 0.5 * rep.w * (d * d);
  const Matrix e3 = ln_z * (c * d);

  Matrix u, u_inv;
  try {
    u = fock::matrix_exp({e1, "U1"}).matrix * fock::matrix_exp({e2, "U2"}).matrix *
        fock::matrix_exp({e3, "U3"}).matrix;
    u_inv = fock::matrix_exp({-e3, "U3^-1"}).matrix * fock::matrix_exp({-e2, "U2^-1"}).matrix *
            fock::matrix_exp({-e1, "U1^-1"}).matrix;
  } catch (const NumericalError& e) {
    rep.ill_conditioned = true;
    for (const char* name : {"U H U^-1", "U^-1 H U"})
      rep.directions.push_back({name, false, e.what(), {}, 0, 0, false});
    return rep;
  }
  Eigen::JacobiSVD<Matrix> svd(u);
  const auto& sv = svd.singularValues();
  rep.condition = sv(0) / sv(sv.size() - 1);
  rep.ill_conditioned = !(rep.condition <= 1e12);

  const Matrix h = fock::matrixize(hamiltonian(s), fock::BasisSpec(big)).matrix;
  const std::vector<double> exact = exact_levels(s, levels);
  auto run = [&](const std::string& name, const Matrix& m) {
    DirectionReport dr;
    dr.direction = name;
    try {
      const auto n = static_cast<Eigen::Index>(spec.dim);
      const auto small = n - static_cast<Eigen::Index>(delta_dim);
      const auto r = fock::eigenvalues({m.topLeftCorner(n, n), name},
                                       {m.topLeftCorner(small, small), name});
      dr.computed = true;
      dr.converged = std::min(levels, r.converged_prefix());
      dr.eigenvalues.assign(r.eigenvalues.begin(),
                            r.eigenvalues.begin() +
                                static_cast<std::ptrdiff_t>(std::min(levels, r.eigenvalues.size())));
      for (std::size_t k = 0; k < dr.converged; ++k)
        dr.max_error = std::max(dr.max_error, std::abs(r.eigenvalues[k] - exact[k]));
      dr.matches = dr.converged == levels && dr.max_error < 1e-6;
    } catch (const Error& e) {
      dr.failure = e.what();
    }
    rep.directions.push_back(std::move(dr));
  };
  run("U H U^-1", u * h * u_inv);
  run("U^-1 H U", u_inv * h * u);
  return rep;
}

// ---------------------------------------------------------------------------
// Wavefunctions

namespace detail {

inline double raw_wavefunction(const DerivedScales& d, unsigned n, double x) {
  const double decay = to_double(d.lambda) + d.mu * d.mu;
  return std::exp(-0.5 * x * x * decay) * boost::math::hermite(n, d.mu * x);
}

/// integral of f(x) e^{lambda x^2} g(x) with f, g of the form e^{-(lambda+mu^2) x^2/2} poly,
/// by Gauss-Hermite in y = mu x.
template <class F>
double weighted_integral(const DerivedScales& d, std::size_t nodes, F&& f) {
  const QuadratureRule rule = gauss_hermite(nodes);
  const double lam = to_double(d.lambda);
  double sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.weights[i] <= 0) continue;
    const double y = rule.nodes[i], x = y / d.mu;
    const double w = std::exp(std::log(rule.weights[i]) + y * y);
    sum += w * f(x) * std::exp(lam * x * x);
  }
  return sum / d.mu;
}

template <class F>
double converged_integral(const DerivedScales& d, std::size_t nodes, F&& f) {
  const double a = weighted_integral(d, nodes, f);
  const double b = weighted_integral(d, nodes + 8, f);
  if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a)))
    throw NumericalError("quadrature did not converge");
  return a;
}

inline DerivedScales normalizable_scales(const SwansonParams& s) {
  const DerivedScales d = derived_scales(s);
  if (!(to_double(d.lambda) + d.mu * d.mu > 0))
    throw DomainError("wavefunction is not normalizable: lambda + mu^2 <= 0");
  return d;
}

} // namespace detail

/// N_n fixed numerically so that the weighted norm is 1.
inline double normalization(const SwansonParams& s, unsigned n) {
  const DerivedScales d = detail::normalizable_scales(s);
  const double norm2 = detail::converged_integral(d, 2 * (2 * n) + 32, [&](double x) {
    const double v = detail::raw_wavefunction(d, n, x);
    return v * v;
  });
  return 1 / std::sqrt(norm2);
}

/// Closed form sqrt(mu / (sqrt(pi) 2^n n!)), for comparison.
inline double normalization_closed_form(const SwansonParams& s, unsigned n) {
  const double mu = derived_scales(s).mu;
  return std::sqrt(mu / (std::sqrt(M_PI) * std::ldexp(std::tgamma(n + 1.0), int(n))));
}

inline double wavefunction(const SwansonParams& s, unsigned n, double x) {
  const DerivedScales d = detail::normalizable_scales(s);
  return normalization(s, n) * detail::raw_wavefunction(d, n, x);
}

/// integral psi_m e^{lambda x^2} psi_n dx.
inline double weighted_overlap(const SwansonParams& s, unsigned m, unsigned n) {
  const DerivedScales d = detail::normalizable_scales(s);
  const double nm = normalization(s, m), nn = m == n ? nm : normalization(s, n);
  return nm * nn * detail::converged_integral(d, 2 * (m + n) + 32, [&](double x) {
           return detail::raw_wavefunction(d, m, x) * detail::raw_wavefunction(d, n, x);
         });
}

// ---------------------------------------------------------------------------
// Observables of the x^2 metric

struct Observables {
  OperatorPoly X;
  OperatorPoly P;
};

/// X = rho^{-1} x rho and P = rho^{-1} p rho.
inline Observables observables(const SwansonParams& s) {
  const DerivedScales d = derived_scales(s);
  const OperatorPoly gen = OperatorPoly::monomial(2, 0, Rational(-d.lambda / 2));
  return {bch_terminating(gen, OperatorPoly::x()), bch_terminating(gen, OperatorPoly::p())};
}

/// e^{lambda x^2} op e^{-lambda x^2} - op†; zero for observables of this metric.
inline OperatorPoly pseudo_hermiticity_check(const OperatorPoly& op, const Rational& lambda) {
  return bch_terminating(OperatorPoly::monomial(2, 0, lambda), op) - adjoint(op);
}

} // namespace pseudoherm::swanson
