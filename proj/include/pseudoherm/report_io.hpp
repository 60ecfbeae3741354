#pragma once

// JSON and CSV forms of the numeric reports.

#include <iomanip>
#include <sstream>
#include <string>

#include "pseudoherm/fock.hpp"
#include "pseudoherm/swanson.hpp"
#include "pseudoherm/text_format.hpp"

namespace pseudoherm {

inline Json complex_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

/// 17 significant digits, for CSV cells.
inline std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline Json to_json(const fock::SpectrumReport& r) {
  Json ev = Json::array();
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
    Json e = complex_json(r.eigenvalues[k]);
    e["converged"] = k < r.converged.size() && r.converged[k];
    ev.push_back(std::move(e));
  }
  return Json{{"eigenvalues", std::move(ev)},
              {"dim", r.dim},
              {"delta_dim", r.delta_dim},
              {"tol", r.tol}};
}

inline std::string to_csv(const fock::SpectrumReport& r) {
  std::string out = "index,re,im,converged\n";
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
    const bool c = k < r.converged.size() && r.converged[k];
    out += std::to_string(k) + "," + csv_number(r.eigenvalues[k].real()) + "," +
           csv_number(r.eigenvalues[k].imag()) + "," + (c ? "true" : "false") + "\n";
  }
  return out;
}

/// Keeps the first `levels` eigenvalues.
inline fock::SpectrumReport head(fock::SpectrumReport r, std::size_t levels) {
  if (r.eigenvalues.size() > levels) r.eigenvalues.resize(levels);
  if (r.converged.size() > levels) r.converged.resize(levels);
  return r;
}

inline Json to_json(const swanson::DerivedScales& d) {
  return Json{{"omega_eff", d.omega_eff}, {"lambda", to_double(d.lambda)}, {"mu", d.mu}};
}

} // namespace pseudoherm
