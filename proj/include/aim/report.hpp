#pragma once

// Solver orchestration and table I/O behind the aimsolve command.

#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aim/morse.hpp"

namespace aim::cli {

/// Invalid or conflicting configuration; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Problem { morse, oscillator };
enum class OutputFormat { csv, json, pretty };

struct RunConfig {
  Problem problem = Problem::morse;
  /// Exact rational text such as "34997/1000" or "34.997".
  std::optional<std::string> delta;
  std::optional<morse::MorseParameters> molecule;
  /// D_e in cm^-1 alongside --delta, so that E_n can be reported in cm^-1.
  std::optional<double> de_cm1;
  int levels = 1;
  Mode mode = Mode::exact;
  unsigned precision = kDefaultDigits;
  int k_max = 50;
  std::string u_star = "1";
  /// Stability tolerance of numeric mode.
  std::string tol = "1e-30";
  OutputFormat output = OutputFormat::csv;
  int workers = 1;

  /// Throws UsageError on conflicts.
  void validate() const;
};

/// One level, already formatted. Empty strings mark unavailable values.
struct ReportRow {
  int n = 0;
  std::string epsilon;
  std::string eps_hw0;
  std::string E_cm1;
  std::string closed_form;
  std::string abs_diff;
  int k_converged = 0;
  /// Exact mode only.
  std::optional<std::string> epsilon_rational;
  std::optional<std::string> eps_hw0_rational;

  bool operator==(const ReportRow&) const = default;
};

struct Report {
  std::vector<ReportRow> rows;
  /// False when fewer levels than requested converged.
  bool complete = true;
  std::vector<std::string> warnings;
};

Report run_solve(const RunConfig& cfg);

inline constexpr const char* kCsvHeader = "n,epsilon,eps_hw0,E_cm1,closed_form,abs_diff,k_converged";

void write_csv(std::ostream& os, const Report& report);
void write_json(std::ostream& os, const Report& report);
void write_pretty(std::ostream& os, const Report& report);
void write_report(std::ostream& os, const Report& report, OutputFormat format);

/// Inverse of write_csv (fraction columns are not part of the CSV dialect).
Report read_csv(std::istream& is);
/// Inverse of write_json.
Report read_json(std::istream& is);

/// Reference table: first column n = 0, 1, 2, ... then named numeric columns.
struct ReferenceTable {
  std::vector<std::string> columns;
  /// values[c][n] for column index c.
  std::vector<std::vector<Rational>> values;

  const std::vector<Rational>& column(const std::string& name) const;
};

/// Throws ParseError naming the offending line.
ReferenceTable read_reference(std::istream& is);
ReferenceTable read_reference_file(const std::string& path);

struct CompareRow {
  int n = 0;
  std::string computed;
  std::string reference;
  std::string abs_diff;
  std::string rel_diff;
  bool pass = false;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::string max_abs_diff;
  std::string max_rel_diff;
  bool pass = false;
};

/// Relative comparison of eps_hw0 against one reference column.
CompareReport run_compare(const Report& report, const ReferenceTable& reference, const std::string& column,
                          const Rational& rel_tol);

void write_compare(std::ostream& os, const CompareReport& report, OutputFormat format);

}  // namespace aim::cli
