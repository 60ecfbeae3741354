#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pseudoherm/basis_change.hpp"
#include "pseudoherm/bch.hpp"
#include "pseudoherm/text_format.hpp"
#include "pseudoherm/weyl.hpp"

using namespace pseudoherm;
using pseudoherm::testing::random_poly;
using pseudoherm::testing::reorder_oracle;
using pseudoherm::testing::word;

namespace {

const CoeffQi2 I = CoeffQi2::i();
const OperatorPoly X = OperatorPoly::x();
const OperatorPoly P = OperatorPoly::p();

OperatorPoly mono(unsigned m, unsigned n, CoeffQi2 c = 1) { return OperatorPoly::monomial(m, n, c); }
OperatorPoly constant(CoeffQi2 c) { return OperatorPoly::constant(c); }
CoeffQi2 q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

// Constant of a quadratic in the symmetric basis {x², p², (xp+px)/2, 1}; the
// standard-ordered xp hides +i/2 of it.
CoeffQi2 weyl_constant(const OperatorPoly& a) {
  return a.coeff(0, 0) + a.coeff(1, 1) * I * q(1, 2);
}

} // namespace

TEST(Coefficient, RingAxioms) {
  EXPECT_EQ(I * I, CoeffQi2(-1));
  EXPECT_EQ(CoeffQi2::sqrt2() * CoeffQi2::sqrt2(), CoeffQi2(2));
  CoeffQi2 z{make_rational(1, 3), make_rational(-2), make_rational(5, 7), make_rational(1, 2)};
  EXPECT_EQ(z * z.inverse(), CoeffQi2(1));
  EXPECT_EQ(z.conj().conj(), z);
  EXPECT_THROW(CoeffQi2().inverse(), DomainError);
}

TEST(Coefficient, LowestTermsAndText) {
  CoeffQi2 z{make_rational(6, -4), 0, make_rational(2, 8)};
  EXPECT_EQ(z.str(), "-3/2 + 1/4s2");
  EXPECT_EQ(parse_coeff(z.str()), z);
  EXPECT_EQ(parse_rational("-0.125"), make_rational(-1, 8));
  EXPECT_EQ(parse_rational("3e-2"), make_rational(3, 100));
  EXPECT_EQ(parse_rational("007/010"), make_rational(7, 10));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
}

TEST(Mul, SingleCommutationStep) {
  EXPECT_EQ(P * X, mono(1, 1) + constant(-I));
  EXPECT_EQ(X * X, mono(2, 0));
}

TEST(Mul, MatchesReorderingOracle) {
  // x^2 p^2 - 4i xp - 2
  OperatorPoly expected = reorder_oracle({{"ppxx", 1}}, Basis::Position);
  EXPECT_EQ(mono(0, 2) * mono(2, 0), expected);
  EXPECT_EQ(expected, mono(2, 2) + mono(1, 1, q(-4) * I) + constant(-2));
}

TEST(Mul, MixedBasisRejected) {
  EXPECT_THROW(X * OperatorPoly::create(), BasisError);
  EXPECT_THROW(commutator(X, OperatorPoly::annihilate()), BasisError);
}

TEST(Mul, OracleEquivalenceOnRandomWords) {
  std::mt19937 rng(7);
  for (Basis basis : {Basis::Position, Basis::Ladder}) {
    const char early = basis == Basis::Position ? 'x' : 'A';
    const char late = basis == Basis::Position ? 'p' : 'a';
    const OperatorPoly e = OperatorPoly::monomial(1, 0, 1, basis);
    const OperatorPoly l = OperatorPoly::monomial(0, 1, 1, basis);
    for (int trial = 0; trial < 300; ++trial) {
      const int len = std::uniform_int_distribution<int>(0, 6)(rng);
      std::string w;
      OperatorPoly prod = OperatorPoly::constant(1, basis);
      for (int k = 0; k < len; ++k) {
        const bool is_early = rng() % 2;
        w += is_early ? early : late;
        prod = prod * (is_early ? e : l);
      }
      ASSERT_EQ(prod, reorder_oracle({{w, 1}}, basis)) << w;
    }
  }
}

TEST(Mul, Associative) {
  std::mt19937 rng(11);
  for (Basis basis : {Basis::Position, Basis::Ladder})
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_poly(rng, 4, basis), b = random_poly(rng, 4, basis),
           c = random_poly(rng, 4, basis);
      ASSERT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Commutator, CanonicalPair) { EXPECT_EQ(commutator(X, P), constant(I)); }

TEST(Commutator, Q1WithH0) {
  OperatorPoly q1 = mono(0, 3, q(-4, 3)) + word("xpx", -2);
  OperatorPoly h0 = mono(0, 2, q(1, 2)) + mono(2, 0, q(1, 2));
  EXPECT_EQ(commutator(q1, h0), mono(3, 0, q(2) * I));
}

TEST(Commutator, X2WithSqueezeOperators) {
  // A = a†² + a², B = a†² - a²; [x², A] = 2B.
  OperatorPoly a2 = to_position(OperatorPoly::monomial(0, 2, 1, Basis::Ladder));
  OperatorPoly ad2 = to_position(OperatorPoly::monomial(2, 0, 1, Basis::Ladder));
  OperatorPoly A = ad2 + a2, B = ad2 - a2;
  OperatorPoly C = to_position(OperatorPoly::monomial(1, 1, 1, Basis::Ladder)) + constant(q(1, 2));
  EXPECT_EQ(commutator(mono(2, 0), A), q(2) * B);
  EXPECT_EQ(commutator(mono(2, 0), B), q(2) * A + q(4) * C);
  EXPECT_EQ(commutator(mono(2, 0), C), -B);
  // Number-operator relations [N, A] = 2B, [N, B] = 2A hold for the same B.
  OperatorPoly N = C - constant(q(1, 2));
  EXPECT_EQ(commutator(N, A), q(2) * B);
  EXPECT_EQ(commutator(N, B), q(2) * A);
}

TEST(Commutator, AntisymmetryAndJacobi) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_poly(rng, 3, Basis::Position), b = random_poly(rng, 3, Basis::Position),
         c = random_poly(rng, 3, Basis::Position);
    ASSERT_EQ(commutator(a, b), -commutator(b, a));
    ASSERT_TRUE((commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                 commutator(c, commutator(a, b)))
                    .is_zero());
  }
}

TEST(Adjoint, Examples) {
  EXPECT_EQ(adjoint(mono(3, 0, I)), mono(3, 0, -I));
  EXPECT_EQ(adjoint(mono(1, 1)), mono(1, 1) + constant(-I));
  OperatorPoly q1 = mono(0, 3, q(-4, 3)) + word("xpx", -2);
  EXPECT_EQ(adjoint(q1), q1);
}

TEST(Involutions, RandomInputs) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_poly(rng, 5, Basis::Position);
    ASSERT_EQ(adjoint(adjoint(a)), a);
    ASSERT_EQ(parity(parity(a)), a);
    ASSERT_EQ(pt_transform(pt_transform(a)), a);
    auto l = random_poly(rng, 5, Basis::Ladder);
    ASSERT_EQ(adjoint(adjoint(l)), l);
  }
}

TEST(Involutions, PtAndParityExamples) {
  OperatorPoly h = mono(0, 2, q(1, 2)) + mono(2, 0, q(1, 2)) + mono(3, 0, q(1, 10) * I);
  EXPECT_EQ(pt_transform(h), h);
  OperatorPoly q1 = mono(0, 3, q(-4, 3)) + word("xpx", -2);
  EXPECT_EQ(parity(q1), -q1);
  EXPECT_EQ(time_reversal(mono(1, 0, I)), mono(1, 0, -I));
  EXPECT_THROW(parity(OperatorPoly::create()), BasisError);
  EXPECT_THROW(time_reversal(OperatorPoly::annihilate()), BasisError);
}

TEST(Weyl, Examples) {
  EXPECT_EQ(weyl_sym(1, 1), mono(1, 1) + constant(-I * q(1, 2)));
  // Explicit average of the six orderings through the oracle.
  OperatorPoly avg = reorder_oracle({{"xxpp", q(1, 6)},
                                     {"xpxp", q(1, 6)},
                                     {"xppx", q(1, 6)},
                                     {"pxxp", q(1, 6)},
                                     {"pxpx", q(1, 6)},
                                     {"ppxx", q(1, 6)}},
                                    Basis::Position);
  EXPECT_EQ(weyl_sym(2, 2), avg);
  EXPECT_EQ(weyl_sym(2, 2), mono(2, 2) + mono(1, 1, q(-2) * I) + constant(q(-1, 2)));
  OperatorPoly three_term =
      reorder_oracle({{"xxpp", q(1, 3)}, {"xppx", q(1, 3)}, {"ppxx", q(1, 3)}}, Basis::Position);
  EXPECT_EQ(weyl_sym(2, 2) - three_term, constant(q(1, 6)));
  EXPECT_EQ(weyl_sym(0, 0), constant(1));
  EXPECT_EQ(weyl_sym(3, 0), mono(3, 0));
}

TEST(Weyl, HermitianWithParitySign) {
  for (unsigned m = 0; m <= 8; ++m)
    for (unsigned n = 0; m + n <= 8; ++n) {
      OperatorPoly s = weyl_sym(m, n);
      ASSERT_EQ(adjoint(s), s) << m << "," << n;
      ASSERT_EQ(parity(s), (m + n) % 2 ? -s : s);
    }
}

TEST(Bch, IdentityAndSingleStep) {
  OperatorPoly t = mono(2, 1, q(3)) + mono(0, 1);
  EXPECT_EQ(bch_terminating(OperatorPoly(), t), t);
  unsigned iterates = 0;
  EXPECT_EQ(bch_terminating(X, P, 64, &iterates), P + constant(I));
  EXPECT_EQ(iterates, 1u);
}

TEST(Bch, QuadraticGeneratorTerminatesAfterTwoIterates) {
  // Swanson omega=3, alpha=1, beta=1/2 in position form.
  OperatorPoly h = to_position(OperatorPoly::monomial(1, 1, 3, Basis::Ladder) +
                               OperatorPoly::monomial(0, 2, 1, Basis::Ladder) +
                               OperatorPoly::monomial(2, 0, q(1, 2), Basis::Ladder));
  unsigned iterates = 0;
  OperatorPoly out = bch_terminating(mono(2, 0, q(-1, 6)), h, 64, &iterates);
  EXPECT_EQ(iterates, 2u);
  EXPECT_EQ(weyl_constant(out), weyl_constant(h));
}

TEST(Bch, QuadraticGeneratorPreservesConstants) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-6, 6);
  for (int trial = 0; trial < 30; ++trial) {
    OperatorPoly t = mono(2, 0, q(num(rng), 3)) + mono(0, 2, q(num(rng), 5)) +
                     mono(1, 1, q(num(rng), 2) * I) + constant(q(num(rng), 7));
    OperatorPoly out = bch_terminating(mono(2, 0, q(num(rng), 4)), t);
    ASSERT_EQ(weyl_constant(out), weyl_constant(t));
  }
}

TEST(Bch, NonTerminatingRaises) {
  // x is an eigenvector of ad_{xp}.
  EXPECT_THROW(bch_terminating(mono(1, 1), X, 8), NonNilpotentError);
}

TEST(BchGraded, RejectsOrderZeroGenerator) {
  GradedSeries gen = GradedSeries::single(X, 0, 3);
  GradedSeries tgt = GradedSeries::single(P, 0, 3);
  EXPECT_THROW(bch_graded(gen, tgt), GradingError);
}

TEST(BchGraded, CutoffZeroLeavesTargetUnchanged) {
  OperatorPoly h0 = mono(0, 2, q(1, 2)) + mono(2, 0, q(1, 2));
  OperatorPoly q1 = mono(0, 3, q(-4, 3)) + word("xpx", -2);
  GradedSeries gen = GradedSeries::single(q(-1, 2) * q1, 1, 0);
  GradedSeries tgt = GradedSeries::single(h0, 0, 0) + GradedSeries::single(mono(3, 0, I), 1, 0);
  GradedSeries out = bch_graded(gen, tgt);
  EXPECT_EQ(out[0], h0);
  EXPECT_EQ(out.orders().size(), 1u);
}

TEST(GradedSeries, CutoffIsMinimum) {
  GradedSeries a = GradedSeries::single(X, 1, 5);
  GradedSeries b = GradedSeries::single(P, 2, 3);
  EXPECT_EQ((a + b).cutoff(), 3u);
  EXPECT_EQ((a * b).cutoff(), 3u);
  EXPECT_EQ((a * b)[3], X * P);
  GradedSeries c = GradedSeries::single(X, 4, 3);
  EXPECT_TRUE(c.is_zero());
}

TEST(BasisChange, Examples) {
  EXPECT_EQ(to_position(OperatorPoly::monomial(1, 1, 1, Basis::Ladder)),
            mono(2, 0, q(1, 2)) + mono(0, 2, q(1, 2)) + constant(q(-1, 2)));
  EXPECT_EQ(to_ladder(mono(2, 0) + mono(0, 2)),
            OperatorPoly::monomial(1, 1, 2, Basis::Ladder) + OperatorPoly::constant(1, Basis::Ladder));
}

TEST(BasisChange, SwansonSubstitution) {
  // omega a†a + alpha a² + beta a†² with symbolic-looking rational values.
  const Rational w = 3, al = make_rational(2, 5), be = make_rational(-1, 7);
  OperatorPoly h = to_position(OperatorPoly::monomial(1, 1, w, Basis::Ladder) +
                               OperatorPoly::monomial(0, 2, al, Basis::Ladder) +
                               OperatorPoly::monomial(2, 0, be, Basis::Ladder));
  const CoeffQi2 half = q(1, 2);
  OperatorPoly expected = half * CoeffQi2(w + al + be) * mono(2, 0) +
                          half * CoeffQi2(w - al - be) * mono(0, 2) +
                          I * CoeffQi2(al - be) * (mono(1, 1) + constant(-I * half)) +
                          constant(-half * CoeffQi2(w));
  EXPECT_EQ(h, expected);
}

TEST(BasisChange, RoundTrip) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_poly(rng, 4, Basis::Position);
    ASSERT_EQ(to_position(to_ladder(a)), a);
    auto l = random_poly(rng, 4, Basis::Ladder);
    ASSERT_EQ(to_ladder(to_position(l)), l);
  }
}

TEST(TextFormat, GrammarAndOrder) {
  OperatorPoly a = mono(1, 1) + mono(3, 0, I) + constant(q(-3, 2)) + mono(0, 3, q(1, 4));
  EXPECT_EQ(to_text(a), "(0/1 + 1/1i)*x^3 + (1/4)*p^3 + (1/1)*x^1p^1 + (-3/2)");
  EXPECT_EQ(to_text(OperatorPoly()), "0");
  EXPECT_EQ(to_text(OperatorPoly::monomial(2, 1, CoeffQi2::sqrt2(), Basis::Ladder)),
            "(0/1 + 1/1s2)*ad^2a^1");
  EXPECT_THROW(parse_poly("(1/1)*q^2"), ParseError);
  EXPECT_THROW(parse_poly("1/1"), ParseError);
}

TEST(TextFormat, RoundTripProperty) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial)
    for (Basis basis : {Basis::Position, Basis::Ladder}) {
      auto a = random_poly(rng, 6, basis, 6);
      ASSERT_EQ(parse_poly(to_text(a), basis), a) << to_text(a);
      ASSERT_EQ(poly_from_json(Json::parse(to_json(a).dump())), a);
    }
}
