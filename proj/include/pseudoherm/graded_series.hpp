#pragma once

// Power series in a coupling g with operator-valued coefficients and a hard
// truncation order.

#include <algorithm>
#include <map>
#include <vector>

#include "pseudoherm/operator_poly.hpp"

namespace pseudoherm {

template <class Scalar>
class BasicGradedSeries {
public:
  using Poly = BasicOperatorPoly<Scalar>;

  BasicGradedSeries(unsigned cutoff, Basis basis = Basis::Position)
      : cutoff_(cutoff), basis_(basis) {}

  /// A single polynomial placed at order r (dropped when r exceeds the cutoff).
  static BasicGradedSeries single(const Poly& a, unsigned r, unsigned cutoff) {
    BasicGradedSeries s(cutoff, a.basis());
    s.add(r, a);
    return s;
  }

  unsigned cutoff() const { return cutoff_; }
  Basis basis() const { return basis_; }
  const std::map<unsigned, Poly>& orders() const { return orders_; }

  Poly operator[](unsigned r) const {
    auto it = orders_.find(r);
    return it == orders_.end() ? Poly(basis_) : it->second;
  }

  bool is_zero() const { return orders_.empty(); }

  /// Lowest order carrying a nonzero term (cutoff + 1 for the zero series).
  unsigned min_order() const { return orders_.empty() ? cutoff_ + 1 : orders_.begin()->first; }

  void add(unsigned r, const Poly& a) {
    if (r > cutoff_ || a.is_zero()) return;
    if (a.basis() != basis_) throw BasisError("graded series basis mismatch");
    auto [it, inserted] = orders_.try_emplace(r, a);
    if (!inserted) {
      it->second += a;
      if (it->second.is_zero()) orders_.erase(it);
    }
  }

  /// Re-truncates to a lower cutoff.
  BasicGradedSeries truncated(unsigned cutoff) const {
    BasicGradedSeries s(std::min(cutoff, cutoff_), basis_);
    for (const auto& [r, a] : orders_) s.add(r, a);
    return s;
  }

  BasicGradedSeries operator-() const {
    BasicGradedSeries s(cutoff_, basis_);
    for (const auto& [r, a] : orders_) s.add(r, -a);
    return s;
  }

  friend BasicGradedSeries operator+(const BasicGradedSeries& a, const BasicGradedSeries& b) {
    BasicGradedSeries s(std::min(a.cutoff_, b.cutoff_), a.basis_);
    for (const auto& [r, t] : a.orders_) s.add(r, t);
    for (const auto& [r, t] : b.orders_) s.add(r, t);
    return s;
  }
  friend BasicGradedSeries operator-(const BasicGradedSeries& a, const BasicGradedSeries& b) {
    return a + (-b);
  }

  friend BasicGradedSeries operator*(const Scalar& c, const BasicGradedSeries& a) {
    BasicGradedSeries s(a.cutoff_, a.basis_);
    for (const auto& [r, t] : a.orders_) s.add(r, c * t);
    return s;
  }

  friend BasicGradedSeries operator*(const BasicGradedSeries& a, const BasicGradedSeries& b) {
    BasicGradedSeries s(std::min(a.cutoff_, b.cutoff_), a.basis_);
    for (const auto& [ra, ta] : a.orders_)
      for (const auto& [rb, tb] : b.orders_)
        if (ra + rb <= s.cutoff_) s.add(ra + rb, ta * tb);
    return s;
  }

  friend bool operator==(const BasicGradedSeries& a, const BasicGradedSeries& b) {
    return a.cutoff_ == b.cutoff_ && a.basis_ == b.basis_ && a.orders_ == b.orders_;
  }

  /// Sums g^r * term_r for a concrete coupling value.
  Poly evaluate(const Scalar& g) const {
    Poly out(basis_);
    for (const auto& [r, a] : orders_) {
      Scalar gr = Scalar(1);
      for (unsigned j = 0; j < r; ++j) gr = gr * g;
      out += gr * a;
    }
    return out;
  }

private:
  unsigned cutoff_;
  Basis basis_;
  std::map<unsigned, Poly> orders_;
};

using GradedSeries = BasicGradedSeries<CoeffQi2>;

template <class Scalar>
BasicGradedSeries<Scalar> commutator(const BasicGradedSeries<Scalar>& a,
                                     const BasicGradedSeries<Scalar>& b) {
  return a * b - b * a;
}

/// f(X, P): replaces x -> X and p -> P in a standard-ordered polynomial using
/// graded multiplication.
template <class Scalar>
BasicGradedSeries<Scalar> substitute(const BasicOperatorPoly<Scalar>& f,
                                     const BasicGradedSeries<Scalar>& X,
                                     const BasicGradedSeries<Scalar>& P) {
  using Series = BasicGradedSeries<Scalar>;
  using Poly = BasicOperatorPoly<Scalar>;
  detail::require_position(f, "substitute");
  const unsigned cutoff = std::min(X.cutoff(), P.cutoff());
  std::vector<Series> xp{Series::single(Poly::constant(Scalar(1)), 0, cutoff)};
  std::vector<Series> pp{xp.front()};
  Series out(cutoff);
  for (const auto& [k, c] : f.terms()) {
    while (xp.size() <= k.m) xp.push_back(xp.back() * X);
    while (pp.size() <= k.n) pp.push_back(pp.back() * P);
    out = out + c * (xp[k.m] * pp[k.n]);
  }
  return out;
}

/// Series-valued f: sum_r g^r f_r(X, P).
template <class Scalar>
BasicGradedSeries<Scalar> substitute(const BasicGradedSeries<Scalar>& f,
                                     const BasicGradedSeries<Scalar>& X,
                                     const BasicGradedSeries<Scalar>& P) {
  using Series = BasicGradedSeries<Scalar>;
  using Poly = BasicOperatorPoly<Scalar>;
  const unsigned cutoff = std::min({f.cutoff(), X.cutoff(), P.cutoff()});
  Series out(cutoff);
  for (const auto& [r, fr] : f.orders()) {
    Series shift = Series::single(Poly::constant(Scalar(1)), r, cutoff);
    out = out + shift * substitute(fr, X, P);
  }
  return out;
}

} // namespace pseudoherm
