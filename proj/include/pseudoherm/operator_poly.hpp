#pragma once

// Noncommutative polynomials in one canonical pair, kept in canonical order:
// standard order x^m p^n in the position basis, normal order a†^m a^n in the
// ladder basis.

#include <algorithm>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pseudoherm/coefficient.hpp"
#include "pseudoherm/errors.hpp"

namespace pseudoherm {

enum class Basis { Position, Ladder };

inline const char* basis_name(Basis b) { return b == Basis::Position ? "xp" : "ladder"; }

/// Exponent pair of a canonical-order monomial: x^m p^n or a†^m a^n.
struct Powers {
  unsigned m = 0;
  unsigned n = 0;

  unsigned degree() const { return m + n; }
  friend bool operator==(const Powers&, const Powers&) = default;
};

/// Output order: descending total degree, then descending m.
struct PowersOrder {
  bool operator()(const Powers& a, const Powers& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.m > b.m;
  }
};

struct Monomial {
  Basis basis = Basis::Position;
  Powers powers;
};

namespace detail {

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned j = 2; j <= n; ++j) r *= j;
  return r;
}

} // namespace detail

template <class Scalar>
class BasicOperatorPoly {
public:
  using scalar_type = Scalar;
  using Traits = ScalarTraits<Scalar>;
  using TermMap = std::map<Powers, Scalar, PowersOrder>;

  explicit BasicOperatorPoly(Basis basis = Basis::Position) : basis_(basis) {}

  static BasicOperatorPoly constant(Scalar c, Basis basis = Basis::Position) {
    BasicOperatorPoly r(basis);
    r.add_term({0, 0}, std::move(c));
    return r;
  }
  static BasicOperatorPoly monomial(unsigned m, unsigned n, Scalar c,
                                    Basis basis = Basis::Position) {
    BasicOperatorPoly r(basis);
    r.add_term({m, n}, std::move(c));
    return r;
  }
  static BasicOperatorPoly x() { return monomial(1, 0, Scalar(1)); }
  static BasicOperatorPoly p() { return monomial(0, 1, Scalar(1)); }
  static BasicOperatorPoly create() { return monomial(1, 0, Scalar(1), Basis::Ladder); }
  static BasicOperatorPoly annihilate() { return monomial(0, 1, Scalar(1), Basis::Ladder); }

  Basis basis() const { return basis_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the canonical monomial (zero when absent).
  Scalar coeff(unsigned m, unsigned n) const {
    auto it = terms_.find(Powers{m, n});
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.degree());
    return d;
  }

  void add_term(Powers k, const Scalar& c) {
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Same polynomial with the constant term removed.
  BasicOperatorPoly without_constant() const {
    BasicOperatorPoly r = *this;
    r.terms_.erase(Powers{0, 0});
    return r;
  }

  /// Applies f to every coefficient, dropping terms that become zero.
  template <class F>
  BasicOperatorPoly map_coeffs(F&& f) const {
    BasicOperatorPoly r(basis_);
    for (const auto& [k, c] : terms_) r.add_term(k, f(k, c));
    return r;
  }

  BasicOperatorPoly operator-() const {
    return map_coeffs([](const Powers&, const Scalar& c) { return -c; });
  }

  BasicOperatorPoly& operator+=(const BasicOperatorPoly& o) {
    check_basis(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  BasicOperatorPoly& operator-=(const BasicOperatorPoly& o) {
    check_basis(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend BasicOperatorPoly operator+(BasicOperatorPoly a, const BasicOperatorPoly& b) {
    return a += b;
  }
  friend BasicOperatorPoly operator-(BasicOperatorPoly a, const BasicOperatorPoly& b) {
    return a -= b;
  }

  friend BasicOperatorPoly operator*(const Scalar& s, const BasicOperatorPoly& a) {
    if (Traits::is_zero(s)) return BasicOperatorPoly(a.basis_);
    return a.map_coeffs([&](const Powers&, const Scalar& c) { return s * c; });
  }

  /// Product reduced to canonical order.
  friend BasicOperatorPoly operator*(const BasicOperatorPoly& a, const BasicOperatorPoly& b) {
    a.check_basis(b);
    BasicOperatorPoly r(a.basis_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.accumulate_product(ka, kb, ca * cb);
    return r;
  }
  BasicOperatorPoly& operator*=(const BasicOperatorPoly& o) { return *this = *this * o; }

  friend bool operator==(const BasicOperatorPoly& a, const BasicOperatorPoly& b) {
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

  void check_basis(const BasicOperatorPoly& o) const {
    if (basis_ != o.basis_)
      throw BasisError(std::string("basis mismatch: ") + basis_name(basis_) + " vs " +
                       basis_name(o.basis_));
  }

private:
  // (x^a p^b)(x^c p^d) = sum_k C(b,k) C(c,k) k! (-i)^k x^{a+c-k} p^{b+d-k}
  // (a†^a a^b)(a†^c a^d) = sum_k C(b,k) C(c,k) k! a†^{a+c-k} a^{b+d-k}
  void accumulate_product(const Powers& l, const Powers& r, const Scalar& c) {
    const unsigned kmax = std::min(l.n, r.m);
    Scalar phase = Scalar(1);
    const Scalar minus_i = -Traits::i();
    for (unsigned k = 0; k <= kmax; ++k) {
      BigInt weight = detail::binomial(l.n, k) * detail::binomial(r.m, k) * detail::factorial(k);
      Scalar term = Traits::from_int(weight) * c;
      if (basis_ == Basis::Position) term = phase * term;
      add_term({l.m + r.m - k, l.n + r.n - k}, term);
      if (basis_ == Basis::Position) phase = phase * minus_i;
    }
  }

  Basis basis_;
  TermMap terms_;
};

using OperatorPoly = BasicOperatorPoly<CoeffQi2>;
using NumericPoly = BasicOperatorPoly<Complex>;

template <class Scalar>
BasicOperatorPoly<Scalar> commutator(const BasicOperatorPoly<Scalar>& a,
                                     const BasicOperatorPoly<Scalar>& b) {
  return a * b - b * a;
}

template <class Scalar>
BasicOperatorPoly<Scalar> power(const BasicOperatorPoly<Scalar>& a, unsigned k) {
  auto r = BasicOperatorPoly<Scalar>::constant(Scalar(1), a.basis());
  for (unsigned j = 0; j < k; ++j) r = r * a;
  return r;
}

/// Hermitian conjugate: reverse factor order, conjugate coefficients.
template <class Scalar>
BasicOperatorPoly<Scalar> adjoint(const BasicOperatorPoly<Scalar>& a) {
  using Poly = BasicOperatorPoly<Scalar>;
  using Traits = ScalarTraits<Scalar>;
  Poly r(a.basis());
  for (const auto& [k, c] : a.terms()) {
    if (a.basis() == Basis::Ladder) {
      r.add_term({k.n, k.m}, Traits::conj(c));
    } else {
      // (x^m p^n)† = p^n x^m
      r += Poly::monomial(0, k.n, Traits::conj(c)) * Poly::monomial(k.m, 0, Scalar(1));
    }
  }
  return r;
}

namespace detail {
template <class Scalar>
void require_position(const BasicOperatorPoly<Scalar>& a, const char* what) {
  if (a.basis() != Basis::Position)
    throw BasisError(std::string(what) + " needs the position basis; convert first");
}
} // namespace detail

/// x -> -x, p -> -p.
template <class Scalar>
BasicOperatorPoly<Scalar> parity(const BasicOperatorPoly<Scalar>& a) {
  detail::require_position(a, "parity");
  return a.map_coeffs([](const Powers& k, const Scalar& c) { return k.degree() % 2 ? -c : c; });
}

/// Antilinear: conjugates coefficients and maps p -> -p.
template <class Scalar>
BasicOperatorPoly<Scalar> time_reversal(const BasicOperatorPoly<Scalar>& a) {
  detail::require_position(a, "time reversal");
  using Traits = ScalarTraits<Scalar>;
  return a.map_coeffs([](const Powers& k, const Scalar& c) {
    Scalar cc = Traits::conj(c);
    return k.n % 2 ? -cc : cc;
  });
}

template <class Scalar>
BasicOperatorPoly<Scalar> pt_transform(const BasicOperatorPoly<Scalar>& a) {
  return parity(time_reversal(a));
}

/// Evaluates at a numeric scalar type (exact -> double complex).
inline NumericPoly to_numeric(const OperatorPoly& a) {
  NumericPoly r(a.basis());
  for (const auto& [k, c] : a.terms()) r.add_term(k, c.to_complex());
  return r;
}

/// Drops numeric coefficients with magnitude below tol.
inline NumericPoly chop(const NumericPoly& a, double tol) {
  return a.map_coeffs([&](const Powers&, const Complex& c) {
    return Complex{std::abs(c.real()) < tol ? 0.0 : c.real(),
                   std::abs(c.imag()) < tol ? 0.0 : c.imag()};
  });
}

/// Largest coefficient magnitude; the numeric analogue of exact equality tests.
inline double max_abs_coeff(const NumericPoly& a) {
  double m = 0.0;
  for (const auto& [k, c] : a.terms()) m = std::max(m, std::abs(c));
  return m;
}

} // namespace pseudoherm
