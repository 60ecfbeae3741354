#pragma once

// Exact coefficients in Q(i, sqrt 2) plus the scalar traits that let the
// operator algebra run over either exact or double-precision coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "pseudoherm/errors.hpp"

namespace pseudoherm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline Rational make_rational(BigInt num, BigInt den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

namespace detail {
inline std::string strip_leading_zeros(std::string s) {
  const std::size_t sign = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  while (s.size() > sign + 1 && s[sign] == '0') s.erase(sign, 1);
  return s;
}
} // namespace detail

/// Parses "num/den", "num" or a plain decimal such as "-0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt num(detail::strip_leading_zeros(s.substr(0, slash)));
      BigInt den(detail::strip_leading_zeros(s.substr(slash + 1)));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return make_rational(num, den);
    }
    std::string mantissa = s;
    int exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      mantissa = s.substr(0, e);
      exp10 = std::stoi(s.substr(e + 1));
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
      negative = mantissa[0] == '-';
      mantissa.erase(0, 1);
    }
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      exp10 -= static_cast<int>(mantissa.size() - dot - 1);
      mantissa.erase(dot, 1);
    }
    if (mantissa.empty() ||
        mantissa.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed number '" + s + "'");
    // cpp_int reads a leading 0 as an octal prefix.
    mantissa.erase(0, std::min(mantissa.find_first_not_of('0'), mantissa.size() - 1));
    BigInt digits(mantissa);
    if (negative) digits = -digits;
    BigInt scale = boost::multiprecision::pow(BigInt(10), std::abs(exp10));
    return exp10 >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// r0 + r1*i + r2*sqrt2 + r3*i*sqrt2 with exact rational components.
class CoeffQi2 {
public:
  CoeffQi2() = default;
  CoeffQi2(Rational r0) : re_(std::move(r0)) {} // NOLINT(implicit)
  CoeffQi2(std::int64_t r0) : re_(r0) {}        // NOLINT(implicit)
  CoeffQi2(Rational r0, Rational r1, Rational r2 = 0, Rational r3 = 0)
      : re_(std::move(r0)), im_(std::move(r1)), s2_(std::move(r2)),
        is2_(std::move(r3)) {}

  static CoeffQi2 i() { return {0, 1, 0, 0}; }
  static CoeffQi2 sqrt2() { return {0, 0, 1, 0}; }

  const Rational& r0() const { return re_; }
  const Rational& r1() const { return im_; }
  const Rational& r2() const { return s2_; }
  const Rational& r3() const { return is2_; }

  bool is_zero() const { return re_ == 0 && im_ == 0 && s2_ == 0 && is2_ == 0; }
  bool is_rational() const { return im_ == 0 && s2_ == 0 && is2_ == 0; }
  bool is_real() const { return im_ == 0 && is2_ == 0; }

  CoeffQi2 conj() const { return {re_, -im_, s2_, -is2_}; }

  Complex to_complex() const {
    const double s = std::sqrt(2.0);
    return {to_double(re_) + s * to_double(s2_), to_double(im_) + s * to_double(is2_)};
  }

  CoeffQi2 operator-() const { return {-re_, -im_, -s2_, -is2_}; }

  CoeffQi2& operator+=(const CoeffQi2& o) {
    re_ += o.re_;
    im_ += o.im_;
    s2_ += o.s2_;
    is2_ += o.is2_;
    return *this;
  }
  CoeffQi2& operator-=(const CoeffQi2& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    s2_ -= o.s2_;
    is2_ -= o.is2_;
    return *this;
  }

  // Write z = u + v*sqrt2 with Gaussian rationals u = r0 + r1 i, v = r2 + r3 i.
  friend CoeffQi2 operator*(const CoeffQi2& a, const CoeffQi2& b) {
    // u1 u2 + 2 v1 v2
    Rational re = a.re_ * b.re_ - a.im_ * b.im_ + 2 * (a.s2_ * b.s2_ - a.is2_ * b.is2_);
    Rational im = a.re_ * b.im_ + a.im_ * b.re_ + 2 * (a.s2_ * b.is2_ + a.is2_ * b.s2_);
    // u1 v2 + v1 u2
    Rational s2 = a.re_ * b.s2_ - a.im_ * b.is2_ + a.s2_ * b.re_ - a.is2_ * b.im_;
    Rational is2 = a.re_ * b.is2_ + a.im_ * b.s2_ + a.s2_ * b.im_ + a.is2_ * b.re_;
    return {std::move(re), std::move(im), std::move(s2), std::move(is2)};
  }
  CoeffQi2& operator*=(const CoeffQi2& o) { return *this = *this * o; }

  CoeffQi2 inverse() const {
    if (is_zero()) throw DomainError("division by zero in Q(i,sqrt2)");
    // 1/(u + v s) = (u - v s) / (u^2 - 2 v^2); then divide by the Gaussian norm.
    CoeffQi2 conj_s{re_, im_, -s2_, -is2_};
    CoeffQi2 w = *this * conj_s; // purely Gaussian
    Rational norm = w.re_ * w.re_ + w.im_ * w.im_;
    CoeffQi2 w_inv{w.re_ / norm, -w.im_ / norm};
    return conj_s * w_inv;
  }
  friend CoeffQi2 operator/(const CoeffQi2& a, const CoeffQi2& b) { return a * b.inverse(); }
  CoeffQi2& operator/=(const CoeffQi2& o) { return *this = *this / o; }

  friend CoeffQi2 operator+(CoeffQi2 a, const CoeffQi2& b) { return a += b; }
  friend CoeffQi2 operator-(CoeffQi2 a, const CoeffQi2& b) { return a -= b; }

  friend bool operator==(const CoeffQi2& a, const CoeffQi2& b) {
    return a.re_ == b.re_ && a.im_ == b.im_ && a.s2_ == b.s2_ && a.is2_ == b.is2_;
  }

  /// Text form `r0 [+ r1i] [+ r2s2] [+ r3is2]`; zero components after r0 are omitted.
  std::string str() const {
    std::string out = to_string(re_);
    if (im_ != 0) out += " + " + to_string(im_) + "i";
    if (s2_ != 0) out += " + " + to_string(s2_) + "s2";
    if (is2_ != 0) out += " + " + to_string(is2_) + "is2";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const CoeffQi2& c) { return os << c.str(); }

private:
  Rational re_{0}, im_{0}, s2_{0}, is2_{0};
};

/// Parses the coefficient text produced by CoeffQi2::str().
inline CoeffQi2 parse_coeff(std::string_view text) {
  Rational parts[4] = {0, 0, 0, 0};
  std::string s(text);
  std::size_t pos = 0;
  bool first = true;
  while (pos <= s.size()) {
    std::size_t next = s.find(" + ", pos);
    std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    int slot = 0;
    auto ends_with = [&](std::string_view suffix) {
      return tok.size() > suffix.size() &&
             tok.compare(tok.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("is2")) {
      slot = 3;
      tok.resize(tok.size() - 3);
    } else if (ends_with("s2")) {
      slot = 2;
      tok.resize(tok.size() - 2);
    } else if (ends_with("i")) {
      slot = 1;
      tok.resize(tok.size() - 1);
    }
    if (first != (slot == 0)) throw ParseError("malformed coefficient '" + s + "'");
    parts[slot] = parse_rational(tok);
    first = false;
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return {parts[0], parts[1], parts[2], parts[3]};
}

/// Scalar operations the operator algebra needs from its coefficient type.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<CoeffQi2> {
  static constexpr bool exact = true;
  static CoeffQi2 zero() { return {}; }
  static CoeffQi2 from_int(const BigInt& v) { return Rational(v); }
  static CoeffQi2 from_rational(const Rational& v) { return v; }
  static CoeffQi2 i() { return CoeffQi2::i(); }
  static CoeffQi2 sqrt2() { return CoeffQi2::sqrt2(); }
  static CoeffQi2 conj(const CoeffQi2& c) { return c.conj(); }
  static bool is_zero(const CoeffQi2& c) { return c.is_zero(); }
  static Complex to_complex(const CoeffQi2& c) { return c.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {}; }
  static Complex from_int(const BigInt& v) { return {v.convert_to<double>(), 0.0}; }
  static Complex from_rational(const Rational& v) { return {to_double(v), 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static Complex sqrt2() { return {std::sqrt(2.0), 0.0}; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static bool is_zero(const Complex& c) { return c == Complex{}; }
  static Complex to_complex(const Complex& c) { return c; }
};

} // namespace pseudoherm
