#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mtf::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Csv, Json };

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// Parses "a..b" (inclusive) or a single integer "a".
IntRange parse_range(const std::string& text);

struct RunConfig {
  std::string subcommand;
  int m = 1;
  std::string method;  // analytic | trial | shoot ("" = default for m)
  double kappa = -1.0;  // trial parameter override, < 0 = default
  bool optimize = false;
  double r0 = 1.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::size_t points = 0;
  IntRange l_range{0, 6};
  IntRange n_range{1, 5};
  std::vector<double> boxes{20.0, 40.0, 80.0};
  double box_spacing = 0.01;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::string out;
  Format format = Format::Csv;
  bool plot_stub = false;
};

/// Tabular result shared by the CSV and JSON writers.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;  // ordered header entries
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string summary_json;  // optional extra object merged into JSON output
};

/// Fixed 9-significant-digit rendering used by every writer.
std::string format_number(double x);

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

/// Full command line entry point (argv[0] is the program name). Output files
/// go to cfg.out (resolved against $MTF_OUTPUT_DIR when relative) or `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtf::cli
