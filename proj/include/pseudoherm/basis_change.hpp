#pragma once

#include <vector>

#include "pseudoherm/operator_poly.hpp"

namespace pseudoherm {

namespace detail {

template <class Scalar>
BasicOperatorPoly<Scalar> substitute_pair(const BasicOperatorPoly<Scalar>& a,
                                          const BasicOperatorPoly<Scalar>& left,
                                          const BasicOperatorPoly<Scalar>& right,
                                          Basis target) {
  using Poly = BasicOperatorPoly<Scalar>;
  std::vector<Poly> lp{Poly::constant(Scalar(1), target)};
  std::vector<Poly> rp{Poly::constant(Scalar(1), target)};
  Poly out(target);
  for (const auto& [k, c] : a.terms()) {
    while (lp.size() <= k.m) lp.push_back(lp.back() * left);
    while (rp.size() <= k.n) rp.push_back(rp.back() * right);
    out += c * (lp[k.m] * rp[k.n]);
  }
  return out;
}

} // namespace detail

/// x = (a + a†)/sqrt2, p = i(a† - a)/sqrt2, normal ordered.
template <class Scalar>
BasicOperatorPoly<Scalar> to_ladder(const BasicOperatorPoly<Scalar>& a) {
  using Poly = BasicOperatorPoly<Scalar>;
  using Traits = ScalarTraits<Scalar>;
  if (a.basis() == Basis::Ladder) return a;
  const Scalar half_s2 = Traits::sqrt2() * Traits::from_rational(Rational(1, 2));
  const Scalar i_half_s2 = Traits::i() * half_s2;
  Poly x(Basis::Ladder), p(Basis::Ladder);
  x.add_term({1, 0}, half_s2);
  x.add_term({0, 1}, half_s2);
  p.add_term({1, 0}, i_half_s2);
  p.add_term({0, 1}, -i_half_s2);
  return detail::substitute_pair(a, x, p, Basis::Ladder);
}

/// a† = (x - ip)/sqrt2, a = (x + ip)/sqrt2, standard ordered.
template <class Scalar>
BasicOperatorPoly<Scalar> to_position(const BasicOperatorPoly<Scalar>& a) {
  using Poly = BasicOperatorPoly<Scalar>;
  using Traits = ScalarTraits<Scalar>;
  if (a.basis() == Basis::Position) return a;
  const Scalar half_s2 = Traits::sqrt2() * Traits::from_rational(Rational(1, 2));
  const Scalar i_half_s2 = Traits::i() * half_s2;
  Poly adag(Basis::Position), ann(Basis::Position);
  adag.add_term({1, 0}, half_s2);
  adag.add_term({0, 1}, -i_half_s2);
  ann.add_term({1, 0}, half_s2);
  ann.add_term({0, 1}, i_half_s2);
  return detail::substitute_pair(a, adag, ann, Basis::Position);
}

} // namespace pseudoherm
