// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pseudoherm/ixcubed.hpp"
#include "pseudoherm/swanson.hpp"
#include "pseudoherm/text_format.hpp"

using namespace pseudoherm;
using pseudoherm::testing::reorder_oracle;
using pseudoherm::testing::word;

namespace {

CoeffQi2 q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// Symmetrized product of m x's and n p's, averaged over distinct words.
OperatorPoly weyl_oracle(unsigned m, unsigned n) {
  std::string w = std::string(m, 'x') + std::string(n, 'p');
  std::sort(w.begin(), w.end());
  testing::WordSum sum;
  std::size_t count = 0;
  do {
    sum[w] += CoeffQi2(1);
    ++count;
  } while (std::next_permutation(w.begin(), w.end()));
  OperatorPoly out = reorder_oracle(sum, Basis::Position);
  return CoeffQi2(make_rational(1, static_cast<std::int64_t>(count))) * out;
}

} // namespace

int main() {
  const OperatorPoly ix3_word = word("xxx", CoeffQi2::i());
  const OperatorPoly h0_word = word("pp", q(1, 2)) + word("xx", q(1, 2));
  const OperatorPoly q1_word = word("ppp", q(-4, 3)) + word("xpx", -2);

  criterion(1, "[Q1,H0] = 2H1 exactly", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const OperatorPoly r = commutator(ix3::q1(), ix3::h0()) - CoeffQi2(2) * ix3::h1();
    const OperatorPoly r_oracle = q1_word * h0_word - h0_word * q1_word - CoeffQi2(2) * ix3_word;
    const double t = secs_since(t0);
    return Outcome{r.is_zero() && r_oracle.is_zero() && t < 1.0,
                   "residual " + std::string(r.is_zero() ? "0" : to_text(r)) + ", oracle residual " +
                       (r_oracle.is_zero() ? "0" : to_text(r_oracle)) + ", " + fmt(t) + " s < 1 s"};
  });

  criterion(2, "-[Q1, ix^3]/4 = 3(x^4/2 + S22 - 1/6)", [&] {
    const OperatorPoly rhs = CoeffQi2(3) * (word("xxxx", q(1, 2)) + weyl_oracle(2, 2) +
                                            OperatorPoly::constant(q(-1, 6)));
    const OperatorPoly r = q(-1, 4) * commutator(ix3::q1(), ix3::h1()) - rhs;
    const OperatorPoly r2 = ix3::hermitian_equiv(2)[2] - rhs;
    return Outcome{r.is_zero() && r2.is_zero(),
                   "commutator residual " + std::string(r.is_zero() ? "0" : to_text(r)) +
                       ", graded-BCH order-2 residual " + (r2.is_zero() ? "0" : to_text(r2))};
  });

  criterion(3, "h4 non-constant terms match", [&] {
    // Printed S[2,4] has two momenta and four positions.
    const OperatorPoly printed = word("xxxxxx", q(-7, 2)) + q(-51, 2) * weyl_oracle(4, 2) +
                                 CoeffQi2(-36) * weyl_oracle(2, 4) + word("pppppp", 2) +
                                 word("xx", q(15, 2)) + word("pp", 27);
    const OperatorPoly h4 = ix3::hermitian_equiv(4)[4];
    const OperatorPoly r = h4.without_constant() - printed.without_constant();
    return Outcome{r.is_zero(), "non-constant residual " +
                                    std::string(r.is_zero() ? "0" : to_text(r)) +
                                    "; constant (report only) " + h4.coeff(0, 0).str()};
  });

  criterion(4, "derive_q recovers Q1, Q3", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = ix3::derive_q(3);
    const double t = secs_since(t0);
    const OperatorPoly q3_oracle = word("ppppp", q(128, 15)) + q(40, 3) * weyl_oracle(2, 3) +
                                   CoeffQi2(8) * weyl_oracle(4, 1) + word("p", -12);
    std::size_t kernel = 0;
    for (const auto& o : d.orders) kernel += o.kernel_dim;
    const bool ok = d.q[1] == q1_word && d.q[3] == q3_oracle && d.q[2].is_zero() && kernel == 0 &&
                    t < 10.0;
    return Outcome{ok, std::string("Q1 ") + (d.q[1] == q1_word ? "exact" : "MISMATCH") + ", Q3 " +
                           (d.q[3] == q3_oracle ? "exact" : "MISMATCH") + ", Q2 " +
                           (d.q[2].is_zero() ? "0" : "nonzero") + ", kernel dim " +
                           std::to_string(kernel) + ", " + fmt(t) + " s < 10 s"};
  });

  const swanson::SwansonParams sp{3, 1, make_rational(1, 2)};

  criterion(5, "Swanson x^2 transform", [&] {
    // H from a = (x + ip)/sqrt2 spelled out as words.
    const CoeffQi2 i = CoeffQi2::i();
    const OperatorPoly h_words =
        CoeffQi2(3) * q(1, 2) * (word("xx") + word("xp", i) - word("px", i) + word("pp")) +
        q(1, 2) * (word("xx") + word("xp", i) + word("px", i) - word("pp")) +
        q(1, 2) * q(1, 2) * (word("xx") - word("xp", i) - word("px", i) - word("pp"));
    const OperatorPoly h = swanson::hermitian_equiv_x2(sp);
    const OperatorPoly expect = word("pp", q(3, 4)) + word("xx", q(7, 3)) +
                                OperatorPoly::constant(q(-3, 2));
    const OperatorPoly r = h - expect;
    const bool ham_ok = swanson::hamiltonian(sp) == h_words;
    return Outcome{r.is_zero() && ham_ok, "rho H rho^-1 = " + to_text(h) + ", residual " +
                                              (r.is_zero() ? "0" : to_text(r)) + ", H vs word oracle " +
                                              (ham_ok ? "equal" : "DIFFERENT")};
  });

  criterion(6, "Swanson spectrum at N=128", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ev =
        fock::sorted_eigenvalues(fock::matrixize(swanson::hamiltonian(sp), fock::BasisSpec(128)));
    const double t = secs_since(t0);
    double re = 0, im = 0;
    for (std::size_t n = 0; n < 8; ++n) {
      re = std::max(re, std::abs(ev[n].real() - (std::sqrt(7.0) * (n + 0.5) - 1.5)));
      im = std::max(im, std::abs(ev[n].imag()));
    }
    return Outcome{re < 1e-8 && im < 1e-10 && t < 5.0,
                   "max |E_n - sqrt7(n+1/2) + 3/2| = " + fmt(re) + " (< 1e-8), max |Im| = " + fmt(im) +
                       " (< 1e-10), " + fmt(t) + " s < 5 s"};
  });

  criterion(7, "weighted orthonormality m,n <= 5", [&] {
    const double lam = -1.0 / 3;
    const auto scales = swanson::derived_scales(sp);
    // Independent: trapezoid on a fine grid (spectrally accurate for Gaussian tails).
    const double h = 0.005;
    std::vector<std::vector<double>> psi(6);
    std::vector<double> weight;
    for (double x = -14; x <= 14; x += h) weight.push_back(std::exp(lam * x * x));
    for (unsigned n = 0; n <= 5; ++n) {
      const double norm = swanson::normalization(sp, n);
      for (double x = -14; x <= 14; x += h)
        psi[n].push_back(norm * swanson::detail::raw_wavefunction(scales, n, x));
    }
    double lib = 0, trap = 0;
    for (unsigned m = 0; m <= 5; ++m)
      for (unsigned n = 0; n <= 5; ++n) {
        lib = std::max(lib, std::abs(swanson::weighted_overlap(sp, m, n) - (m == n)));
        double s = 0;
        for (std::size_t k = 0; k < weight.size(); ++k) s += psi[m][k] * weight[k] * psi[n][k];
        trap = std::max(trap, std::abs(s * h - (m == n)));
      }
    return Outcome{lib < 1e-8 && trap < 1e-8, "max |G - I| quadrature " + fmt(lib) +
                                                  ", trapezoid oracle " + fmt(trap) + " (< 1e-8)"};
  });

  criterion(8, "igx^3 reality and second-order energy", [&] {
    const auto ev = fock::sorted_eigenvalues(
        fock::matrixize(ix3::hamiltonian_at(make_rational(1, 10)), fock::BasisSpec(64)));
    double im = 0;
    for (int k = 0; k < 4; ++k) im = std::max(im, std::abs(ev[k].imag()));
    // Oracle: sum_n |<n|x^3|0>|^2 / n from the Fock matrix of x.
    const auto x = fock::matrixize(OperatorPoly::x(), fock::BasisSpec(12)).matrix;
    const fock::Matrix x3 = x * x * x;
    double oracle = 0;
    for (int n = 1; n < 6; ++n) oracle += std::norm(x3(n, 0)) / n;
    auto coeff = [](const char* g) {
      const Rational gr = parse_rational(g);
      const auto e = fock::sorted_eigenvalues(
          fock::matrixize(ix3::hamiltonian_at(gr), fock::BasisSpec(64)));
      return (e.front().real() - 0.5) / std::pow(to_double(gr), 2);
    };
    const double ext = (4 * coeff("0.025") - coeff("0.05")) / 3;
    const double lib = to_double(ix3::rs_oracle_e0());
    const bool ok = im < 1e-8 && std::abs(ext - oracle) < 1e-3 && std::abs(lib - oracle) < 1e-14;
    return Outcome{ok, "max |Im E_0..3| at g=0.1 = " + fmt(im) + " (< 1e-8); extrapolated " +
                           fmt(ext) + " vs oracle " + fmt(oracle) + " (= 11/8, rs_oracle_e0 " +
                           to_string(ix3::rs_oracle_e0()) + "), |diff| " +
                           fmt(std::abs(ext - oracle)) + " < 1e-3"};
  });

  criterion(9, "metric expectations of x and X", [&] {
    const fock::BasisSpec spec(64);
    const auto a = ix3::ground_expectations(make_rational(1, 20), spec);
    const auto b = ix3::ground_expectations(make_rational(1, 40), spec);
    const double ra = std::abs(a.exp_x.imag() + 0.075), rb = std::abs(b.exp_x.imag() + 0.0375);
    const double exponent = std::log2(ra / rb);
    const double c = ra / std::pow(0.05, 3);
    const bool ok = std::abs(a.exp_x.real()) < 1e-8 && exponent >= 2.5 && std::abs(a.exp_X) < 1e-6;
    return Outcome{ok, "<<x>> = " + fmt(a.exp_x.real()) + " + " + fmt(a.exp_x.imag()) +
                           "i, |Im + 1.5g| = " + fmt(ra) + " = " + fmt(c) +
                           " g^3, exponent " + fmt(exponent) + " (>= 2.5); |<<X>>| = " +
                           fmt(std::abs(a.exp_X)) + " (< 1e-6); metric block " +
                           std::to_string(a.metric_dim)};
  });

  criterion(10, "pseudo-Hermiticity residual scaling", [&] {
    const fock::BasisSpec spec(64);
    const double r2 = ix3::pseudo_hermiticity_residual(make_rational(1, 5), spec);
    const double r1 = ix3::pseudo_hermiticity_residual(make_rational(1, 10), spec);
    const double r05 = ix3::pseudo_hermiticity_residual(make_rational(1, 20), spec);
    const double lit = r2 / r1, pert = r1 / r05;
    // The literal ratio is huge because g=0.2 is past the perturbative
    // regime; require the 0.1 -> 0.05 ratio to show the g^5 law too.
    const bool ok = lit >= 16 && pert >= 16 && pert <= 64;
    return Outcome{ok, "ratio 0.2/0.1 = " + fmt(lit) + " (>= 16); ratio 0.1/0.05 = " + fmt(pert) +
                           " (in [16, 64], g^5 gives 32)"};
  });

  criterion(11, "property suites", [&] {
    std::mt19937 rng(7);
    std::size_t checks = 0, bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
      for (Basis basis : {Basis::Position, Basis::Ladder}) {
        std::uniform_int_distribution<int> len(0, 6), bit(0, 1);
        auto rand_word = [&] {
          std::string w;
          const int l = len(rng);
          for (int k = 0; k < l; ++k)
            w += basis == Basis::Position ? (bit(rng) ? 'x' : 'p') : (bit(rng) ? 'A' : 'a');
          return w;
        };
        const std::string u = rand_word(), v = rand_word();
        const OperatorPoly pu = reorder_oracle({{u, 1}}, basis), pv = reorder_oracle({{v, 1}}, basis);
        ++checks;
        bad += !(pu * pv == reorder_oracle({{u + v, 1}}, basis));
      }
      const auto a = testing::random_poly(rng, 3, Basis::Position);
      const auto b = testing::random_poly(rng, 3, Basis::Position);
      const auto c = testing::random_poly(rng, 3, Basis::Position);
      checks += 4;
      bad += !(adjoint(adjoint(a)) == a);
      bad += !(pt_transform(pt_transform(a)) == a);
      bad += !(parity(parity(a)) == a);
      bad += !(commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                   commutator(c, commutator(a, b)))
                  .is_zero();
    }
    const auto obs = ix3::observables(2);
    const CoeffQi2 i = CoeffQi2::i();
    const GradedSeries x_printed =
        GradedSeries::single(word("x"), 0, 2) +
        GradedSeries::single(word("xx", i) + word("pp", CoeffQi2(0, 2)), 1, 2) +
        GradedSeries::single(word("xxx", -1) + word("pxp", 2), 2, 2);
    const GradedSeries p_printed =
        GradedSeries::single(word("p"), 0, 2) +
        GradedSeries::single(word("xp", -i) + word("px", -i), 1, 2) +
        GradedSeries::single(word("ppp", 2) - word("xpx"), 2, 2);
    const GradedSeries cxp = commutator(obs.X, obs.P) -
                             GradedSeries::single(OperatorPoly::constant(i), 0, 2);
    const bool series_ok = (obs.X - x_printed).is_zero() && (obs.P - p_printed).is_zero();
    return Outcome{bad == 0 && series_ok && cxp.is_zero(),
                   std::to_string(checks - bad) + "/" + std::to_string(checks) +
                       " oracle/involution/Jacobi checks; [X,P] - i through g^2 " +
                       (cxp.is_zero() ? "0" : "nonzero") + "; X, P printed forms " +
                       (series_ok ? "exact" : "MISMATCH")};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
