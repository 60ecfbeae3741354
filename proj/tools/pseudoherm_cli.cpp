// pseudoherm: command-line access to the verification ledger, spectra, series
// dumps, wavefunction samples and parameter scans.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pseudoherm/ixcubed.hpp"
#include "pseudoherm/report_io.hpp"
#include "pseudoherm/swanson.hpp"
#include "pseudoherm/text_format.hpp"
#include "pseudoherm/verify.hpp"

using namespace pseudoherm;

namespace {

struct Options {
  std::string format = "json";
  std::string out;

  std::string omega = "3", alpha = "1", beta = "1/2", g = "0.05";
  std::size_t dim = 64;
  std::size_t swanson_dim = 128;
  std::size_t levels = 8;
  std::size_t scan_levels = 4;
  std::size_t delta = 16;
  unsigned order = 4;
  std::optional<double> tol;

  unsigned n = 0;
  std::vector<double> range{-4.0, 4.0};
  std::size_t samples = 201;

  std::vector<std::string> omegas{"3"}, alphas{"1"}, betas{"1/2"}, gs{"0.05"};
  std::vector<std::size_t> dims{64};
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw DomainError("cannot open output file '" + o.out + "'");
  f << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

void require_spectral_dim(std::size_t dim, std::size_t delta) {
  if (dim < 8) throw DomainError("spectral subcommands need --dim >= 8");
  if (delta >= dim) throw DomainError("--delta must be below --dim");
}

swanson::SwansonParams swanson_params(const std::string& w, const std::string& a,
                                      const std::string& b) {
  return {parse_rational(w), parse_rational(a), parse_rational(b)};
}

swanson::SwansonParams swanson_params(const Options& o) {
  return swanson_params(o.omega, o.alpha, o.beta);
}

void emit_spectrum(const Options& o, const fock::SpectrumReport& r) {
  if (o.format == "csv")
    emit(o, to_csv(r));
  else
    emit(o, to_json(r));
}

int cmd_verify(const Options& o) {
  verify::Config cfg;
  cfg.swanson = swanson_params(o);
  cfg.g = parse_rational(o.g);
  cfg.dim = o.dim;
  cfg.tol = o.tol;
  if (o.tol && !(*o.tol > 0)) throw DomainError("--tol must be positive");
  const verify::Ledger ledger = verify::run(cfg);
  if (o.format == "csv")
    emit(o, verify::to_csv(ledger));
  else
    emit(o, verify::to_json(ledger));
  return ledger.passed() ? 0 : 1;
}

int cmd_swanson_spectrum(const Options& o) {
  require_spectral_dim(o.swanson_dim, o.delta);
  const auto s = swanson_params(o);
  swanson::require_positive_domain(s);
  emit_spectrum(o, head(fock::spectrum(swanson::hamiltonian(s), fock::BasisSpec(o.swanson_dim),
                                       o.delta),
                        o.levels));
  return 0;
}

int cmd_swanson_wavefunction(const Options& o) {
  const auto s = swanson_params(o);
  if (o.range.size() != 2 || !(o.range[0] < o.range[1]))
    throw DomainError("--range needs two increasing values");
  if (o.samples < 2) throw DomainError("--samples must be at least 2");
  const double norm = swanson::normalization(s, o.n);
  const auto d = swanson::derived_scales(s);
  std::vector<std::pair<double, double>> rows;
  for (std::size_t k = 0; k < o.samples; ++k) {
    const double x = o.range[0] + (o.range[1] - o.range[0]) * double(k) / double(o.samples - 1);
    rows.emplace_back(x, norm * swanson::detail::raw_wavefunction(d, o.n, x));
  }
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& [x, psi] : rows) arr.push_back(Json{{"x", x}, {"psi", psi}});
    emit(o, Json{{"n", o.n}, {"samples", std::move(arr)}});
  } else {
    std::string out = "x,psi\n";
    for (const auto& [x, psi] : rows) out += csv_number(x) + "," + csv_number(psi) + "\n";
    emit(o, out);
  }
  return 0;
}

int cmd_swanson_scales(const Options& o) {
  const auto d = swanson::derived_scales(swanson_params(o));
  if (o.format == "csv")
    emit(o, "omega_eff,lambda,mu\n" + csv_number(d.omega_eff) + "," +
                csv_number(to_double(d.lambda)) + "," + csv_number(d.mu) + "\n");
  else
    emit(o, to_json(d));
  return 0;
}

int cmd_ix3_h(const Options& o) {
  const GradedSeries h = ix3::hermitian_equiv(o.order);
  if (o.format == "csv") {
    std::string out = "order,m,n,coefficient\n";
    for (const auto& [r, a] : h.orders())
      for (const auto& [k, c] : a.terms())
        out += std::to_string(r) + "," + std::to_string(k.m) + "," + std::to_string(k.n) + ",\"" +
               c.str() + "\"\n";
    emit(o, out);
  } else {
    emit(o, Json{{"order", o.order}, {"text", to_text(h)}, {"series", to_json(h)}});
  }
  return 0;
}

int cmd_ix3_spectrum(const Options& o) {
  require_spectral_dim(o.dim, o.delta);
  emit_spectrum(o, head(fock::spectrum(ix3::hamiltonian_at(parse_rational(o.g)),
                                       fock::BasisSpec(o.dim), o.delta),
                        o.levels));
  return 0;
}

int cmd_ix3_expectation(const Options& o) {
  const auto r = ix3::ground_expectations(parse_rational(o.g), fock::BasisSpec(o.dim));
  if (o.format == "csv")
    emit(o, "quantity,re,im\nexp_x," + csv_number(r.exp_x.real()) + "," +
                csv_number(r.exp_x.imag()) + "\nexp_X," + csv_number(r.exp_X.real()) + "," +
                csv_number(r.exp_X.imag()) + "\n");
  else
    emit(o, Json{{"exp_x", complex_json(r.exp_x)}, {"exp_X", complex_json(r.exp_X)}});
  return 0;
}

struct ScanRow {
  std::vector<std::pair<std::string, std::string>> params;
  std::string status = "ok";
  fock::SpectrumReport report;
};

int emit_scan(const Options& o, const std::vector<ScanRow>& rows) {
  const std::size_t levels = o.scan_levels;
  if (o.format == "json") {
    Json arr = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Json j{{"index", i}};
      for (const auto& [k, v] : rows[i].params) {
        if (k == "dim")
          j[k] = std::stoul(v);
        else
          j[k] = to_double(parse_rational(v));
      }
      j["status"] = rows[i].status;
      std::size_t real = 0;
      for (const auto& e : rows[i].report.eigenvalues) real += std::abs(e.imag()) < 1e-8;
      j["converged"] = rows[i].report.converged_prefix();
      j["all_real"] = !rows[i].report.eigenvalues.empty() &&
                      real == rows[i].report.eigenvalues.size();
      j["spectrum"] = to_json(rows[i].report)["eigenvalues"];
      arr.push_back(std::move(j));
    }
    emit(o, Json{{"rows", std::move(arr)}});
    return 0;
  }
  std::ostringstream out;
  out << "index";
  if (!rows.empty())
    for (const auto& [k, v] : rows.front().params) out << "," << k;
  out << ",status,converged,all_real";
  for (std::size_t k = 0; k < levels; ++k) out << ",e" << k << "_re,e" << k << "_im";
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << i;
    for (const auto& [k, v] : r.params)
      out << "," << (k == "dim" ? v : csv_number(to_double(parse_rational(v))));
    std::size_t real = 0;
    for (const auto& e : r.report.eigenvalues) real += std::abs(e.imag()) < 1e-8;
    const bool all_real = !r.report.eigenvalues.empty() && real == r.report.eigenvalues.size();
    out << ",\"" << r.status << "\"," << r.report.converged_prefix() << ","
        << (all_real ? "true" : "false");
    for (std::size_t k = 0; k < levels; ++k) {
      if (k < r.report.eigenvalues.size())
        out << "," << csv_number(r.report.eigenvalues[k].real()) << ","
            << csv_number(r.report.eigenvalues[k].imag());
      else
        out << ",,";
    }
    out << "\n";
  }
  emit(o, out.str());
  return 0;
}

int cmd_scan_swanson(const Options& o) {
  for (auto d : o.dims) require_spectral_dim(d, o.delta);
  std::vector<ScanRow> rows;
  for (const auto& w : o.omegas)
    for (const auto& a : o.alphas)
      for (const auto& b : o.betas)
        for (auto d : o.dims) {
          ScanRow row;
          row.params = {{"omega", w}, {"alpha", a}, {"beta", b}, {"dim", std::to_string(d)}};
          try {
            const auto s = swanson_params(w, a, b);
            swanson::require_positive_domain(s);
            row.report = head(fock::spectrum(swanson::hamiltonian(s), fock::BasisSpec(d), o.delta),
                              o.scan_levels);
          } catch (const Error& e) {
            row.status = e.what();
          }
          rows.push_back(std::move(row));
        }
  return emit_scan(o, rows);
}

int cmd_scan_ix3(const Options& o) {
  for (auto d : o.dims) require_spectral_dim(d, o.delta);
  std::vector<ScanRow> rows;
  for (const auto& g : o.gs)
    for (auto d : o.dims) {
      ScanRow row;
      row.params = {{"g", g}, {"dim", std::to_string(d)}};
      try {
        row.report = head(fock::spectrum(ix3::hamiltonian_at(parse_rational(g)), fock::BasisSpec(d),
                                         o.delta),
                          o.scan_levels);
      } catch (const Error& e) {
        row.status = e.what();
      }
      rows.push_back(std::move(row));
    }
  return emit_scan(o, rows);
}

void add_swanson_params(CLI::App* app, Options& o) {
  app->add_option("--omega", o.omega, "omega (exact: 3, 1/2 or 0.25)");
  app->add_option("--alpha", o.alpha, "alpha");
  app->add_option("--beta", o.beta, "beta");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-Hermitian oscillators: exact operator algebra and numerical checks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "write output to PATH instead of stdout");

  std::function<int()> action;

  auto* verify = app.add_subcommand("verify", "run the verification ledger");
  verify->fallthrough();
  add_swanson_params(verify, o);
  verify->add_option("--g", o.g, "igx^3 coupling");
  verify->add_option("--dim", o.dim, "Fock dimension for igx^3 checks");
  verify->add_option("--tol", o.tol, "override every numeric tolerance");
  verify->callback([&] { action = [&] { return cmd_verify(o); }; });

  auto* sw = app.add_subcommand("swanson", "Swanson oscillator");
  sw->require_subcommand(1);
  sw->fallthrough();
  auto* sw_spec = sw->add_subcommand("spectrum", "converged low-lying spectrum of H");
  sw_spec->fallthrough();
  add_swanson_params(sw_spec, o);
  sw_spec->add_option("--dim", o.swanson_dim, "Fock dimension");
  sw_spec->add_option("--levels", o.levels, "number of levels to print");
  sw_spec->add_option("--delta", o.delta, "dimension step for the convergence check");
  sw_spec->callback([&] { action = [&] { return cmd_swanson_spectrum(o); }; });
  auto* sw_wf = sw->add_subcommand("wavefunction", "sample psi_n(x)");
  sw_wf->fallthrough();
  add_swanson_params(sw_wf, o);
  sw_wf->add_option("--n", o.n, "level");
  sw_wf->add_option("--range", o.range, "x interval")->expected(2);
  sw_wf->add_option("--samples", o.samples, "number of sample points");
  sw_wf->callback([&] { action = [&] { return cmd_swanson_wavefunction(o); }; });
  auto* sw_sc = sw->add_subcommand("scales", "Omega, lambda and mu");
  sw_sc->fallthrough();
  add_swanson_params(sw_sc, o);
  sw_sc->callback([&] { action = [&] { return cmd_swanson_scales(o); }; });

  auto* ix = app.add_subcommand("ix3", "the igx^3 oscillator");
  ix->require_subcommand(1);
  ix->fallthrough();
  auto* ix_h = ix->add_subcommand("h", "Hermitian counterpart h through g^order");
  ix_h->fallthrough();
  ix_h->add_option("--order", o.order, "series cutoff (at most 4)");
  ix_h->callback([&] { action = [&] { return cmd_ix3_h(o); }; });
  auto* ix_sp = ix->add_subcommand("spectrum", "converged low-lying spectrum of H");
  ix_sp->fallthrough();
  ix_sp->add_option("--g", o.g, "coupling");
  ix_sp->add_option("--dim", o.dim, "Fock dimension");
  ix_sp->add_option("--levels", o.levels, "number of levels to print");
  ix_sp->add_option("--delta", o.delta, "dimension step for the convergence check");
  ix_sp->callback([&] { action = [&] { return cmd_ix3_spectrum(o); }; });
  auto* ix_ex = ix->add_subcommand("expectation", "metric expectations of x and X");
  ix_ex->fallthrough();
  ix_ex->add_option("--g", o.g, "coupling");
  ix_ex->add_option("--dim", o.dim, "Fock dimension");
  ix_ex->callback([&] { action = [&] { return cmd_ix3_expectation(o); }; });

  auto* scan = app.add_subcommand("scan", "spectra over a parameter grid");
  scan->require_subcommand(1);
  scan->fallthrough();
  auto* scan_sw = scan->add_subcommand("swanson", "grid over (omega, alpha, beta, dim)");
  scan_sw->fallthrough();
  scan_sw->add_option("--omega", o.omegas, "comma-separated values")->delimiter(',');
  scan_sw->add_option("--alpha", o.alphas, "comma-separated values")->delimiter(',');
  scan_sw->add_option("--beta", o.betas, "comma-separated values")->delimiter(',');
  scan_sw->add_option("--dim", o.dims, "comma-separated values")->delimiter(',');
  scan_sw->add_option("--levels", o.scan_levels, "levels per row");
  scan_sw->add_option("--delta", o.delta, "dimension step for the convergence check");
  scan_sw->callback([&] { action = [&] { return cmd_scan_swanson(o); }; });
  auto* scan_ix = scan->add_subcommand("ix3", "grid over (g, dim)");
  scan_ix->fallthrough();
  scan_ix->add_option("--g", o.gs, "comma-separated values")->delimiter(',');
  scan_ix->add_option("--dim", o.dims, "comma-separated values")->delimiter(',');
  scan_ix->add_option("--levels", o.scan_levels, "levels per row");
  scan_ix->add_option("--delta", o.delta, "dimension step for the convergence check");
  scan_ix->callback([&] { action = [&] { return cmd_scan_ix3(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
