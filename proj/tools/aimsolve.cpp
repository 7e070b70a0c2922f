// aimsolve: Morse and oscillator spectra by the asymptotic iteration method.
//
//   aimsolve solve --delta 34997/1000 --de-cm1 8940 --levels 25
//   aimsolve compare --delta 34997/1000 --levels 25 --reference data/li2_table1.csv
//   aimsolve wavefunction --molecule 8940,0.616,3.10821,3.5080 --n 2 --mode numeric
//
// Exit codes: 0 success, 2 partial convergence, 3 comparison failure, 64 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aim/eigenfunction.hpp"
#include "aim/report.hpp"

namespace {

using aim::cli::OutputFormat;
using aim::cli::Problem;
using aim::cli::RunConfig;
using aim::cli::UsageError;

constexpr int kExitPartial = 2;
constexpr int kExitCompareFailed = 3;
constexpr int kExitUsage = 64;

struct Options {
  RunConfig cfg;
  std::string problem = "morse";
  std::string mode = "exact";
  std::string output = "csv";
  std::string molecule;
  std::string out_path;
  std::string tol;
  // compare
  std::string reference;
  std::string column = "aim";
  // wavefunction
  int level = 0;
  std::optional<double> beta;
  std::optional<double> xe;
  std::optional<double> x_min;
  std::optional<double> x_max;
  int points = 401;
  std::string domain = "half";
};

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--problem", o.problem, "morse or oscillator")->check(CLI::IsMember({"morse", "oscillator"}));
  cmd->add_option("--delta", o.cfg.delta, "well depth in units of hbar*omega0, as exact text (p/q or decimal)");
  cmd->add_option("--molecule", o.molecule, "De_cm1,beta_per_angstrom,xe_angstrom,mu_amu");
  cmd->add_option("--de-cm1", o.cfg.de_cm1, "De in cm^-1, to report E_n in cm^-1 alongside --delta");
  cmd->add_option("--levels", o.cfg.levels, "number of levels from n = 0");
  cmd->add_option("--mode", o.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
  cmd->add_option("--precision", o.cfg.precision, "decimal digits of numeric mode");
  cmd->add_option("--kmax", o.cfg.k_max, "maximum AIM iterations");
  cmd->add_option("--u-star", o.cfg.u_star, "evaluation point u*");
  cmd->add_option("--output", o.output, "csv, json or pretty")->check(CLI::IsMember({"csv", "json", "pretty"}));
  cmd->add_option("--out", o.out_path, "write the table to FILE instead of stdout");
  cmd->add_option("--workers", o.cfg.workers, "parallel level solves in numeric mode");
}

aim::morse::MorseParameters parse_molecule(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--molecule: '" + item + "' is not a number");
    }
  }
  if (v.size() != 4) throw UsageError("--molecule expects four values: De_cm1,beta,xe,mu");
  return aim::morse::MorseParameters{v[0], v[1], v[2], v[3]};
}

void finish_config(Options& o) {
  o.cfg.problem = o.problem == "oscillator" ? Problem::oscillator : Problem::morse;
  o.cfg.mode = o.mode == "numeric" ? aim::Mode::numeric : aim::Mode::exact;
  o.cfg.output = o.output == "json" ? OutputFormat::json : o.output == "pretty" ? OutputFormat::pretty : OutputFormat::csv;
  if (!o.molecule.empty()) o.cfg.molecule = parse_molecule(o.molecule);
}

// Runs `emit` against the --out file or stdout.
template <class Emit>
void with_output(const Options& o, Emit emit) {
  if (o.out_path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + o.out_path + "'");
  emit(out);
}

void print_warnings(const aim::cli::Report& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
}

int do_solve(Options& o) {
  if (!o.tol.empty()) o.cfg.tol = o.tol;
  const auto report = aim::cli::run_solve(o.cfg);
  if (o.cfg.output != OutputFormat::pretty || !o.out_path.empty()) print_warnings(report);
  with_output(o, [&](std::ostream& os) { aim::cli::write_report(os, report, o.cfg.output); });
  return report.complete ? 0 : kExitPartial;
}

int do_compare(Options& o) {
  const aim::Rational tol = aim::parse_rational(o.tol.empty() ? "1e-15" : o.tol);
  if (sgn(tol) <= 0) throw UsageError("--tol must be positive");
  const auto reference = aim::cli::read_reference_file(o.reference);
  reference.column(o.column);
  const auto report = aim::cli::run_solve(o.cfg);
  print_warnings(report);
  const auto diff = aim::cli::run_compare(report, reference, o.column, tol);
  with_output(o, [&](std::ostream& os) { aim::cli::write_compare(os, diff, o.cfg.output); });
  std::cerr << "compare against '" << o.column << "': max |diff| " << diff.max_abs_diff << ", max rel "
            << diff.max_rel_diff << ", " << (diff.pass ? "PASS" : "FAIL") << '\n';
  if (!diff.pass) return kExitCompareFailed;
  return report.complete ? 0 : kExitPartial;
}

int do_wavefunction(Options& o) {
  using aim::BigReal;
  auto& cfg = o.cfg;
  if (cfg.problem != Problem::morse) throw UsageError("wavefunction supports the morse problem only");
  if (cfg.delta.has_value() == cfg.molecule.has_value()) throw UsageError("give exactly one of --delta and --molecule");
  if (cfg.molecule && (o.beta || o.xe)) throw UsageError("--beta and --xe are taken from --molecule");
  if (cfg.delta && !(o.beta && o.xe)) throw UsageError("--delta needs --beta and --xe for a wavefunction");
  if (cfg.molecule && cfg.mode == aim::Mode::exact) {
    throw UsageError("exact mode needs a rational --delta; Delta derived from --molecule is irrational");
  }
  if (o.points < 2) throw UsageError("--points must be at least 2");
  if (cfg.precision < aim::kMinDigits) throw UsageError("--precision is below the minimum");
  aim::PrecisionGuard guard(cfg.precision);

  const double beta = cfg.molecule ? cfg.molecule->beta_per_angstrom : *o.beta;
  const double xe = cfg.molecule ? cfg.molecule->xe_angstrom : *o.xe;
  if (!(beta > 0) || !(xe > 0)) throw UsageError("--beta and --xe must be positive");
  const auto domain = o.domain == "whole" ? aim::wave::Domain::whole_line : aim::wave::Domain::half_line;

  std::optional<aim::wave::Wavefunction> psi;
  if (cfg.mode == aim::Mode::exact) {
    aim::Rational delta;
    try {
      delta = aim::parse_rational(*cfg.delta);
    } catch (const std::invalid_argument&) {
      throw UsageError("--delta: cannot parse '" + *cfg.delta + "'");
    }
    if (delta <= aim::Rational(3, 8)) throw UsageError("--delta must exceed 3/8");
    if (o.level < 0 || o.level >= aim::morse::bound_state_count(delta)) throw UsageError("--n is not a bound state");
    const auto series = aim::wave::series_solve(aim::morse::closed_form_epsilon(delta, o.level), delta, o.level);
    psi = aim::wave::assemble(series, BigReal(beta), BigReal(xe), domain);
  } else {
    BigReal delta;
    if (cfg.molecule) {
      cfg.molecule->validate();
      delta = aim::morse::reduce_units(*cfg.molecule).delta;
    } else {
      delta = aim::to_big(aim::parse_rational(*cfg.delta));
    }
    if (o.level < 0 || o.level >= aim::morse::bound_state_count(delta)) throw UsageError("--n is not a bound state");
    const auto series = aim::wave::series_solve(aim::morse::closed_form_epsilon(delta, o.level), delta, o.level);
    psi = aim::wave::assemble(series, BigReal(beta), BigReal(xe), domain);
  }
  const double lo = o.x_min.value_or(xe - 2);
  const double hi = o.x_max.value_or(xe + 8);
  if (!(lo < hi)) throw UsageError("--x-min must be below --x-max");
  with_output(o, [&](std::ostream& os) { aim::wave::write_table(os, *psi, BigReal(lo), BigReal(hi), o.points); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state spectra by the asymptotic iteration method"};
  app.set_config("--config", "", "TOML-style key = value file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  add_run_flags(&app, o);
  app.add_option("--tol", o.tol, "solve: numeric stability tolerance (default 1e-30); compare: relative tolerance (default 1e-15)");

  auto* solve = app.add_subcommand("solve", "eigenvalue table");

  auto* compare = app.add_subcommand("compare", "solve, then compare eps_hw0 with a reference column");
  compare->add_option("--reference", o.reference, "reference CSV (n first, then named columns)")->required();
  compare->add_option("--column", o.column, "reference column to compare against");

  auto* wave = app.add_subcommand("wavefunction", "normalised Psi_n(x) on a uniform grid");
  wave->add_option("--n", o.level, "level index");
  wave->add_option("--beta", o.beta, "beta in 1/Angstrom, with --delta");
  wave->add_option("--xe", o.xe, "equilibrium distance in Angstrom, with --delta");
  wave->add_option("--x-min", o.x_min, "grid start (default xe - 2)");
  wave->add_option("--x-max", o.x_max, "grid end (default xe + 8)");
  wave->add_option("--points", o.points, "grid points");
  wave->add_option("--domain", o.domain, "normalisation domain: half or whole")->check(CLI::IsMember({"half", "whole"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    finish_config(o);
    if (*solve) return do_solve(o);
    if (*compare) return do_compare(o);
    return do_wavefunction(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const aim::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
