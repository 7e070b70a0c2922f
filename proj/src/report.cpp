#include "aim/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "aim/aim_engine.hpp"
#include "aim/oracle.hpp"

namespace aim::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kEpsDigits = 19;
constexpr int kWavenumberDigits = 12;
constexpr int kDiffDigits = 3;

Rational parse_or_usage(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(what + ": cannot parse '" + text + "' as a number");
  }
}

std::string diff_text(const Rational& d) { return sgn(d) == 0 ? "0" : format_sci(to_big(d), kDiffDigits); }
std::string diff_text(const BigReal& d) { return d == 0 ? "0" : format_sci(d, kDiffDigits); }

// Shared row assembly for both scalar modes. `energy` maps an eigenvalue to
// eps_hw0, `closed` gives the closed-form eps_hw0 for level n.
template <Scalar T, class Energy, class Closed>
std::vector<ReportRow> make_rows(const std::vector<EigenvalueResult<T>>& results, Energy energy, Closed closed,
                                 const std::optional<BigReal>& hbar_omega0) {
  std::vector<ReportRow> rows;
  for (const auto& r : results) {
    const T e = energy(r.epsilon);
    const T cf = closed(r.n);
    ReportRow row;
    row.n = r.n;
    row.epsilon = format_fixed(r.epsilon, kEpsDigits);
    row.eps_hw0 = format_fixed(e, kEpsDigits);
    if (hbar_omega0) row.E_cm1 = format_fixed(BigReal(to_big(e) * *hbar_omega0), kWavenumberDigits);
    row.closed_form = format_fixed(cf, kEpsDigits);
    row.abs_diff = diff_text(abs_value(T(e - cf)));
    row.k_converged = r.k_converged;
    if constexpr (std::same_as<T, Rational>) {
      row.epsilon_rational = to_fraction_text(r.epsilon);
      row.eps_hw0_rational = to_fraction_text(e);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T, class Solve>
std::vector<EigenvalueResult<T>> collect(Solve solve, Report& report) {
  try {
    return solve();
  } catch (const ConvergenceError<T>& e) {
    report.complete = false;
    report.warnings.push_back(e.what());
    return e.partial();
  }
}

unsigned guard_digits(const RunConfig& cfg) { return cfg.precision + 2 * static_cast<unsigned>(cfg.k_max) + 16; }

Report solve_morse(const RunConfig& cfg) {
  Report report;
  if (cfg.molecule) report.warnings = cfg.molecule->warnings();

  if (cfg.mode == Mode::exact) {
    const Rational delta = parse_rational(*cfg.delta);
    std::optional<BigReal> hw;
    if (cfg.de_cm1) hw = BigReal(*cfg.de_cm1) / to_big(delta);
    const auto problem =
        morse::build_aim_problem(morse::ReducedMorse<Rational>(delta, hw)).with_u_star(parse_rational(cfg.u_star));
    SymbolicOptions options;
    options.max_denominator = morse::exact_root_denominator(delta);
    const auto results = collect<Rational>(
        [&] { return eigenvalues_symbolic(problem, cfg.levels, cfg.k_max, to_big(parse_rational(cfg.tol)), options); },
        report);
    report.rows = make_rows<Rational>(
        results, [&](const Rational& eps) { return morse::epsilon_to_energy(eps, delta); },
        [&](int n) { return morse::closed_form_spectrum(delta, n); }, hw);
    return report;
  }

  PrecisionGuard guard(guard_digits(cfg));
  BigReal delta;
  std::optional<BigReal> hw;
  if (cfg.molecule) {
    const auto reduced = morse::reduce_units(*cfg.molecule);
    delta = reduced.delta;
    hw = reduced.hbar_omega0_cm1;
  } else {
    delta = to_big(parse_rational(*cfg.delta));
    if (cfg.de_cm1) hw = BigReal(*cfg.de_cm1) / delta;
  }
  const auto problem =
      morse::build_aim_problem(morse::ReducedMorse<BigReal>(delta, hw)).with_u_star(to_big(parse_rational(cfg.u_star)));
  ShootingOptions options;
  options.workers = cfg.workers;
  auto results = collect<BigReal>(
      [&] { return eigenvalues_shooting(problem, cfg.levels, cfg.k_max, to_big(parse_rational(cfg.tol)), options); },
      report);
  for (auto& r : results) r.epsilon = round_to_digits(r.epsilon, cfg.precision);
  report.rows = make_rows<BigReal>(
      results, [&](const BigReal& eps) { return morse::epsilon_to_energy(eps, delta); },
      [&](int n) { return morse::closed_form_spectrum(delta, n); }, hw);
  return report;
}

Report solve_oscillator(const RunConfig& cfg) {
  Report report;
  if (cfg.mode == Mode::exact) {
    const auto problem = oracle::oscillator_problem<Rational>().with_u_star(parse_rational(cfg.u_star));
    const auto results = collect<Rational>(
        [&] { return eigenvalues_symbolic(problem, cfg.levels, cfg.k_max, to_big(parse_rational(cfg.tol))); }, report);
    report.rows = make_rows<Rational>(
        results, [](const Rational& e) { return e; }, [](int n) { return Rational(2 * n + 1); }, std::nullopt);
    return report;
  }
  PrecisionGuard guard(guard_digits(cfg));
  const auto problem = oracle::oscillator_problem<BigReal>().with_u_star(to_big(parse_rational(cfg.u_star)));
  ShootingOptions options;
  options.workers = cfg.workers;
  auto results = collect<BigReal>(
      [&] { return eigenvalues_shooting(problem, cfg.levels, cfg.k_max, to_big(parse_rational(cfg.tol)), options); },
      report);
  for (auto& r : results) r.epsilon = round_to_digits(r.epsilon, cfg.precision);
  report.rows = make_rows<BigReal>(
      results, [](const BigReal& e) { return e; }, [](int n) { return BigReal(2 * n + 1); }, std::nullopt);
  return report;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

int parse_int(const std::string& text, int line, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParseError(line, what + " '" + text + "' is not an integer");
  return v;
}

json row_to_json(const ReportRow& r) {
  json j;
  j["n"] = r.n;
  j["epsilon"] = r.epsilon;
  j["eps_hw0"] = r.eps_hw0;
  j["E_cm1"] = r.E_cm1.empty() ? json(nullptr) : json(r.E_cm1);
  j["closed_form"] = r.closed_form;
  j["abs_diff"] = r.abs_diff;
  j["k_converged"] = r.k_converged;
  if (r.epsilon_rational) j["epsilon_rational"] = *r.epsilon_rational;
  if (r.eps_hw0_rational) j["eps_hw0_rational"] = *r.eps_hw0_rational;
  return j;
}

void write_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& table) {
  if (table.empty()) return;
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      os << std::setw(static_cast<int>(width[c])) << row[c];
    }
    os << '\n';
  }
}

}  // namespace

void RunConfig::validate() const {
  if (levels < 1) throw UsageError("--levels must be at least 1");
  if (k_max < levels + 2) throw UsageError("--kmax must be at least levels + 2");
  if (precision < kMinDigits) throw UsageError("--precision must be at least " + std::to_string(kMinDigits));
  if (workers < 1) throw UsageError("--workers must be at least 1");
  if (sgn(parse_or_usage(u_star, "--u-star")) <= 0) throw UsageError("--u-star must be positive");
  if (sgn(parse_or_usage(tol, "--tol")) <= 0) throw UsageError("--tol must be positive");

  if (problem == Problem::oscillator) {
    if (delta || molecule || de_cm1) throw UsageError("--delta, --molecule and --de-cm1 apply to the morse problem only");
    return;
  }
  if (delta.has_value() == molecule.has_value()) throw UsageError("give exactly one of --delta and --molecule");
  if (de_cm1 && molecule) throw UsageError("--de-cm1 is taken from --molecule; do not give both");
  if (de_cm1 && !(*de_cm1 > 0)) throw UsageError("--de-cm1 must be positive");
  if (molecule && mode == Mode::exact) {
    throw UsageError("exact mode needs a rational --delta; Delta derived from --molecule is irrational");
  }

  int available = 0;
  if (delta) {
    const Rational d = parse_or_usage(*delta, "--delta");
    if (d <= Rational(3, 8)) throw UsageError("--delta must exceed 3/8 for a bound state to exist");
    available = morse::bound_state_count(d);
  } else {
    try {
      molecule->validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--molecule: ") + e.what());
    }
    const auto reduced = morse::reduce_units(*molecule);
    available = morse::bound_state_count(reduced.delta);
  }
  if (levels > available) {
    throw UsageError("--levels " + std::to_string(levels) + " exceeds the " + std::to_string(available) +
                     " bound states of this potential");
  }
}

Report run_solve(const RunConfig& cfg) {
  cfg.validate();
  return cfg.problem == Problem::morse ? solve_morse(cfg) : solve_oscillator(cfg);
}

void write_csv(std::ostream& os, const Report& report) {
  os << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    os << r.n << ',' << r.epsilon << ',' << r.eps_hw0 << ',' << r.E_cm1 << ',' << r.closed_form << ',' << r.abs_diff
       << ',' << r.k_converged << '\n';
  }
}

void write_json(std::ostream& os, const Report& report) {
  json arr = json::array();
  for (const auto& r : report.rows) arr.push_back(row_to_json(r));
  os << arr.dump(2) << '\n';
}

void write_pretty(std::ostream& os, const Report& report) {
  std::vector<std::vector<std::string>> table{{"n", "epsilon", "eps/hw0", "E/cm^-1", "closed form", "|diff|", "k"}};
  for (const auto& r : report.rows) {
    table.push_back({std::to_string(r.n), r.epsilon, r.eps_hw0, r.E_cm1.empty() ? "-" : r.E_cm1, r.closed_form,
                     r.abs_diff, std::to_string(r.k_converged)});
  }
  write_aligned(os, table);
  for (const auto& w : report.warnings) os << "warning: " << w << '\n';
}

void write_report(std::ostream& os, const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv:
      write_csv(os, report);
      break;
    case OutputFormat::json:
      write_json(os, report);
      break;
    case OutputFormat::pretty:
      write_pretty(os, report);
      break;
  }
}

Report read_csv(std::istream& is) {
  Report report;
  std::string line;
  int line_no = 0;
  if (!std::getline(is, line)) throw ParseError(1, "empty input, expected a header row");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError(line_no, "unexpected header '" + line + "'");
  while (std::getline(is, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields, found " + std::to_string(f.size()));
    ReportRow r;
    r.n = parse_int(f[0], line_no, "n");
    r.epsilon = f[1];
    r.eps_hw0 = f[2];
    r.E_cm1 = f[3];
    r.closed_form = f[4];
    r.abs_diff = f[5];
    r.k_converged = parse_int(f[6], line_no, "k_converged");
    report.rows.push_back(std::move(r));
  }
  return report;
}

Report read_json(std::istream& is) {
  json arr;
  try {
    arr = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  if (!arr.is_array()) throw ParseError(1, "expected a JSON array of level objects");
  Report report;
  int index = 0;
  for (const auto& j : arr) {
    ++index;
    try {
      ReportRow r;
      r.n = j.at("n").get<int>();
      r.epsilon = j.at("epsilon").get<std::string>();
      r.eps_hw0 = j.at("eps_hw0").get<std::string>();
      r.E_cm1 = j.at("E_cm1").is_null() ? std::string() : j.at("E_cm1").get<std::string>();
      r.closed_form = j.at("closed_form").get<std::string>();
      r.abs_diff = j.at("abs_diff").get<std::string>();
      r.k_converged = j.at("k_converged").get<int>();
      if (j.contains("epsilon_rational")) r.epsilon_rational = j["epsilon_rational"].get<std::string>();
      if (j.contains("eps_hw0_rational")) r.eps_hw0_rational = j["eps_hw0_rational"].get<std::string>();
      report.rows.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(index, std::string("level object: ") + e.what());
    }
  }
  return report;
}

const std::vector<Rational>& ReferenceTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) return values[c];
  }
  throw UsageError("reference table has no column '" + name + "'");
}

ReferenceTable read_reference(std::istream& is) {
  ReferenceTable table;
  std::string line;
  int line_no = 0;
  bool header = false;
  int expected_n = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank(line) || line.front() == '#') continue;
    const auto f = split_fields(line);
    if (!header) {
      if (f.size() < 2 || f[0] != "n") throw ParseError(line_no, "header must start with 'n' and name a column");
      table.columns.assign(f.begin() + 1, f.end());
      table.values.resize(table.columns.size());
      header = true;
      continue;
    }
    if (f.size() != table.columns.size() + 1) {
      throw ParseError(line_no, "expected " + std::to_string(table.columns.size() + 1) + " fields, found " +
                                    std::to_string(f.size()));
    }
    const int n = parse_int(f[0], line_no, "n");
    if (n != expected_n) {
      throw ParseError(line_no, "expected row n = " + std::to_string(expected_n) + ", found n = " + std::to_string(n));
    }
    for (std::size_t c = 1; c < f.size(); ++c) {
      try {
        table.values[c - 1].push_back(parse_rational(f[c]));
      } catch (const std::invalid_argument&) {
        throw ParseError(line_no, "column '" + table.columns[c - 1] + "': '" + f[c] + "' is not a number");
      }
    }
    ++expected_n;
  }
  if (!header) throw ParseError(line_no, "reference table has no header row");
  return table;
}

ReferenceTable read_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open reference table '" + path + "'");
  return read_reference(in);
}

CompareReport run_compare(const Report& report, const ReferenceTable& reference, const std::string& column,
                          const Rational& rel_tol) {
  const auto& ref = reference.column(column);
  CompareReport out;
  out.pass = !report.rows.empty();
  Rational max_abs = 0;
  Rational max_rel = 0;
  for (const auto& r : report.rows) {
    CompareRow row;
    row.n = r.n;
    row.computed = r.eps_hw0;
    if (r.n < 0 || static_cast<std::size_t>(r.n) >= ref.size()) {
      out.pass = false;
      out.rows.push_back(std::move(row));
      continue;
    }
    const Rational computed = parse_rational(r.eps_hw0_rational ? *r.eps_hw0_rational : r.eps_hw0);
    const Rational& expected = ref[static_cast<std::size_t>(r.n)];
    const Rational abs_diff = abs(computed - expected);
    const Rational rel_diff = sgn(expected) == 0 ? abs_diff : Rational(abs_diff / abs(expected));
    row.reference = format_fixed(expected, kEpsDigits);
    row.abs_diff = diff_text(abs_diff);
    row.rel_diff = diff_text(rel_diff);
    row.pass = rel_diff <= rel_tol;
    out.pass = out.pass && row.pass;
    max_abs = std::max(max_abs, abs_diff);
    max_rel = std::max(max_rel, rel_diff);
    out.rows.push_back(std::move(row));
  }
  out.max_abs_diff = diff_text(max_abs);
  out.max_rel_diff = diff_text(max_rel);
  return out;
}

void write_compare(std::ostream& os, const CompareReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv:
      os << "n,computed,reference,abs_diff,rel_diff,pass\n";
      for (const auto& r : report.rows) {
        os << r.n << ',' << r.computed << ',' << r.reference << ',' << r.abs_diff << ',' << r.rel_diff << ','
           << (r.pass ? "yes" : "no") << '\n';
      }
      break;
    case OutputFormat::json: {
      json j;
      j["pass"] = report.pass;
      j["max_abs_diff"] = report.max_abs_diff;
      j["max_rel_diff"] = report.max_rel_diff;
      j["rows"] = json::array();
      for (const auto& r : report.rows) {
        j["rows"].push_back({{"n", r.n},
                             {"computed", r.computed},
                             {"reference", r.reference.empty() ? json(nullptr) : json(r.reference)},
                             {"abs_diff", r.abs_diff},
                             {"rel_diff", r.rel_diff},
                             {"pass", r.pass}});
      }
      os << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::pretty: {
      std::vector<std::vector<std::string>> table{{"n", "computed", "reference", "|diff|", "rel", "ok"}};
      for (const auto& r : report.rows) {
        table.push_back({std::to_string(r.n), r.computed, r.reference.empty() ? "missing" : r.reference, r.abs_diff,
                         r.rel_diff, r.pass ? "yes" : "no"});
      }
      write_aligned(os, table);
      os << "max |diff| " << report.max_abs_diff << ", max rel " << report.max_rel_diff << ": "
         << (report.pass ? "PASS" : "FAIL") << '\n';
      break;
    }
  }
}

}  // namespace aim::cli
