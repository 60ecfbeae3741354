#pragma once

// Adjoint actions e^G T e^{-G} = sum_k ad_G^k(T)/k!, either terminating
// exactly or truncated by grade.

#include <string>

#include "pseudoherm/graded_series.hpp"

namespace pseudoherm {

/// Exact e^G T e^{-G} when ad_G is nilpotent on T. Reports how many
/// commutator iterates ad_G^k(T), k >= 1, were nonzero.
template <class Scalar>
BasicOperatorPoly<Scalar> bch_terminating(const BasicOperatorPoly<Scalar>& generator,
                                          const BasicOperatorPoly<Scalar>& target,
                                          unsigned max_depth, unsigned* nonzero_iterates) {
  using Traits = ScalarTraits<Scalar>;
  generator.check_basis(target);
  BasicOperatorPoly<Scalar> sum = target;
  BasicOperatorPoly<Scalar> iterate = target;
  BigInt fact = 1;
  unsigned count = 0;
  for (unsigned k = 1;; ++k) {
    iterate = commutator(generator, iterate);
    if (iterate.is_zero()) break;
    if (k > max_depth)
      throw NonNilpotentError("adjoint series did not terminate within depth " +
                              std::to_string(max_depth));
    ++count;
    fact *= k;
    sum += Traits::from_rational(Rational(BigInt(1), fact)) * iterate;
  }
  if (nonzero_iterates) *nonzero_iterates = count;
  return sum;
}

template <class Scalar>
BasicOperatorPoly<Scalar> bch_terminating(const BasicOperatorPoly<Scalar>& generator,
                                          const BasicOperatorPoly<Scalar>& target,
                                          unsigned max_depth = 64) {
  return bch_terminating(generator, target, max_depth, nullptr);
}

/// e^G T e^{-G} for a generator of minimal grade >= 1, exact through the
/// common cutoff.
template <class Scalar>
BasicGradedSeries<Scalar> bch_graded(const BasicGradedSeries<Scalar>& generator,
                                     const BasicGradedSeries<Scalar>& target) {
  using Traits = ScalarTraits<Scalar>;
  if (!generator[0].is_zero())
    throw GradingError("graded generator must have zero order-0 term");
  const unsigned cutoff = std::min(generator.cutoff(), target.cutoff());
  BasicGradedSeries<Scalar> sum = target.truncated(cutoff);
  BasicGradedSeries<Scalar> iterate = sum;
  BigInt fact = 1;
  for (unsigned k = 1; k <= cutoff && !iterate.is_zero(); ++k) {
    iterate = commutator(generator, iterate);
    fact *= k;
    sum = sum + Traits::from_rational(Rational(BigInt(1), fact)) * iterate;
  }
  return sum;
}

} // namespace pseudoherm
