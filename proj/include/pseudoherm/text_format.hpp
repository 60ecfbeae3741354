#pragma once

// Operator text grammar and JSON forms.
//
//   poly  := term (' + ' term)*            "0" for the zero polynomial
//   term  := '(' coeff ')' ['*' mono]
//   coeff := r0 [' + ' r1 'i'] [' + ' r2 's2'] [' + ' r3 'is2']
//   mono  := ['x^' m] ['p^' n]              position basis
//          | ['ad^' m] ['a^' n]             ladder basis
//
// JSON: {"basis":"xp"|"ladder","terms":[{"m":int,"n":int,"c":["r0","r1","r2","r3"]}]}

#include "json.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "pseudoherm/graded_series.hpp"

namespace pseudoherm {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string mono_text(Basis basis, const Powers& k) {
  std::string out;
  const char* left = basis == Basis::Position ? "x^" : "ad^";
  const char* right = basis == Basis::Position ? "p^" : "a^";
  if (k.m) out += left + std::to_string(k.m);
  if (k.n) out += right + std::to_string(k.n);
  return out;
}

} // namespace detail

inline std::string to_text(const OperatorPoly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    if (k.degree()) out += "*" + detail::mono_text(a.basis(), k);
  }
  return out;
}

inline OperatorPoly parse_poly(std::string_view text, Basis basis = Basis::Position) {
  OperatorPoly out(basis);
  std::string s(text);
  if (s == "0") return out;
  std::size_t pos = 0;
  const std::string left = basis == Basis::Position ? "x^" : "ad^";
  const std::string right = basis == Basis::Position ? "p^" : "a^";
  auto read_uint = [&](std::size_t& at) {
    std::size_t end = at;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    if (end == at) throw ParseError("expected exponent in '" + s + "'");
    unsigned v = static_cast<unsigned>(std::stoul(s.substr(at, end - at)));
    at = end;
    return v;
  };
  while (true) {
    if (pos >= s.size() || s[pos] != '(') throw ParseError("expected '(' in '" + s + "'");
    std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError("unbalanced '(' in '" + s + "'");
    CoeffQi2 c = parse_coeff(std::string_view(s).substr(pos + 1, close - pos - 1));
    pos = close + 1;
    Powers k;
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      if (s.compare(pos, left.size(), left) == 0) {
        pos += left.size();
        k.m = read_uint(pos);
      }
      if (s.compare(pos, right.size(), right) == 0) {
        pos += right.size();
        k.n = read_uint(pos);
      }
      if (k.degree() == 0) throw ParseError("empty monomial in '" + s + "'");
    }
    out.add_term(k, c);
    if (pos == s.size()) break;
    if (s.compare(pos, 3, " + ") != 0) throw ParseError("expected ' + ' in '" + s + "'");
    pos += 3;
  }
  return out;
}

inline Json to_json(const OperatorPoly& a) {
  Json terms = Json::array();
  for (const auto& [k, c] : a.terms())
    terms.push_back({{"m", k.m},
                     {"n", k.n},
                     {"c", {to_string(c.r0()), to_string(c.r1()), to_string(c.r2()),
                            to_string(c.r3())}}});
  return {{"basis", basis_name(a.basis())}, {"terms", std::move(terms)}};
}

inline OperatorPoly poly_from_json(const Json& j) {
  try {
    const std::string basis = j.at("basis").get<std::string>();
    if (basis != "xp" && basis != "ladder") throw ParseError("unknown basis '" + basis + "'");
    OperatorPoly out(basis == "xp" ? Basis::Position : Basis::Ladder);
    for (const auto& t : j.at("terms")) {
      const auto& c = t.at("c");
      if (c.size() != 4) throw ParseError("coefficient needs four components");
      out.add_term({t.at("m").get<unsigned>(), t.at("n").get<unsigned>()},
                   CoeffQi2(parse_rational(c[0].get<std::string>()),
                            parse_rational(c[1].get<std::string>()),
                            parse_rational(c[2].get<std::string>()),
                            parse_rational(c[3].get<std::string>())));
    }
    return out;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad operator JSON: ") + e.what());
  }
}

/// One line per retained order: `g^r: <poly>`.
inline std::string to_text(const GradedSeries& s) {
  std::ostringstream os;
  for (unsigned r = 0; r <= s.cutoff(); ++r) os << "g^" << r << ": " << to_text(s[r]) << "\n";
  return os.str();
}

inline Json to_json(const GradedSeries& s) {
  Json orders = Json::array();
  for (unsigned r = 0; r <= s.cutoff(); ++r)
    orders.push_back({{"order", r}, {"poly", to_json(s[r])}});
  return {{"cutoff", s.cutoff()}, {"orders", std::move(orders)}};
}

/// Human-readable numeric polynomial, 17 significant digits.
inline std::string to_text(const NumericPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << " + " << c.imag() << "i)";
    if (k.degree()) os << "*" << detail::mono_text(a.basis(), k);
  }
  return os.str();
}

} // namespace pseudoherm
