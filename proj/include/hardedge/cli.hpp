#pragma once

// Library side of the `hardedge` command-line tool: run configuration,
// report tables and the subcommand drivers. The executable in tools/ only
// parses flags into a RunConfig and calls run().

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardedge/real.hpp"

namespace hardedge::cli {

inline constexpr const char* kVersion = "1.0";

/// Invalid configuration; maps to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// `lo:hi:count[:log]`, or a single value.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  bool log = false;

  static GridSpec parse(const std::string& text);
  std::vector<double> values() const;
  std::string str() const;
};

enum class Format { csv, json };

struct RunConfig {
  std::string subcommand;
  double alpha = 1.0;
  double beta = 2.0;
  int n = 6;
  std::optional<GridSpec> t;
  std::optional<GridSpec> s;
  std::optional<GridSpec> b;
  int bits = 0;         // 0: per-route default
  int m = 0;            // 0: per-route default
  double ode_tol = 0.0; // 0: precision-driven
  std::uint64_t seed = 1;
  long samples = 100000;
  std::string out;      // empty: stdout
  Format format = Format::csv;
  int threads = 1;

  // Subcommand-specific switches.
  std::string suite;             // validate
  std::string series = "logdet"; // asymptotic
  bool check_doubling = false;   // fredholm
  bool largest = false;          // finite: P(all eigenvalues <= t)
  std::string seed_mode = "series_at_zero";  // painleve
  double tol = 0.0;              // pass threshold override (0: suite default)

  /// Throws UsageError.
  void validate() const;
  /// Canonical JSON (sorted keys, no whitespace).
  std::string to_json() const;
};

/// One table cell: extended-precision number, double, integer, text or flag.
struct Cell {
  enum class Kind { real, number, integer, text, flag };
  Kind kind = Kind::text;
  Real real;
  double number = 0.0;
  long long integer = 0;
  std::string text;
  bool flag = false;

  static Cell of(const Real& v);
  static Cell of(double v);
  static Cell of_int(long long v);
  static Cell of_text(std::string v);
  static Cell of_flag(bool v);
};

struct ReportRow {
  std::vector<Cell> cells;
  bool pass = true;
  std::string error;  // non-empty when the route threw
};

struct Report {
  std::vector<std::string> columns;  // excluding the trailing pass/error columns
  std::vector<ReportRow> rows;
  int digits = 17;

  bool all_pass() const;
  void write(std::ostream& os, const RunConfig& config) const;
};

/// Executes the subcommand and writes the report. Returns the exit status:
/// 0 all rows pass, 1 some row failed, 2 invalid configuration.
int run(const RunConfig& config);

/// Builds the report without writing it (throws UsageError).
Report build_report(const RunConfig& config);

struct ConstantEstimate {
  Real c_hat;
  Real c_exact;
  Real error;  // |c_hat - c_exact|
  std::vector<double> s_values;
  std::vector<int> points;  // quadrature size used per s
};

/// Mean over a log-spaced s grid of log_fredholm_det minus every
/// s-dependent term of the large-s expansion, against
/// log G(alpha+1) - (alpha/2) log 2pi. m <= 0 selects the default size; each
/// evaluation is checked against 2m.
ConstantEstimate constant_extract(double alpha, double s_lo, double s_hi, int points, int m, const PrecisionCtx& ctx);

/// Decimal digits printed for a working precision: min(30, bits / 3.3).
int report_digits(int bits);

}  // namespace hardedge::cli
