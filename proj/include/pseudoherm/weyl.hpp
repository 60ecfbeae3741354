#pragma once

#include <algorithm>
#include <vector>

#include "pseudoherm/operator_poly.hpp"

namespace pseudoherm {

/// Fully symmetrized product of m factors of x and n factors of p: the average
/// of all (m+n)!/(m! n!) distinct interleavings, in standard order.
inline OperatorPoly weyl_sym(unsigned m, unsigned n) {
  const OperatorPoly x = OperatorPoly::x();
  const OperatorPoly p = OperatorPoly::p();
  OperatorPoly sum;
  BigInt count = 0;
  // Enumerate placements of the x factors as bitmasks of length m+n.
  std::vector<bool> word(m + n, false);
  std::fill(word.begin(), word.begin() + m, true);
  do {
    OperatorPoly prod = OperatorPoly::constant(1);
    for (bool is_x : word) prod = prod * (is_x ? x : p);
    sum += prod;
    ++count;
  } while (std::prev_permutation(word.begin(), word.end()));
  return CoeffQi2(Rational(BigInt(1), count)) * sum;
}

} // namespace pseudoherm
