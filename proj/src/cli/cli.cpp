#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtf/cli.hpp"
#include "mtf/fluctuation.hpp"
#include "mtf/profile.hpp"
#include "mtf/spectrum.hpp"

namespace mtf::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kReferenceKappa0 = 0.206796;
constexpr double kReferenceKappa1M4 = 2.98428;

/// Thrown for configuration problems that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

numerics::ToleranceSpec tolerance(const RunConfig& cfg) { return {cfg.abs_tol, cfg.rel_tol, 2000}; }

std::string range_text(IntRange r) { return std::to_string(r.lo) + ".." + std::to_string(r.hi); }

std::string config_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "m=" << cfg.m << " method=" << (cfg.method.empty() ? "default" : cfg.method)
     << " kappa=" << format_number(cfg.kappa) << " optimize=" << (cfg.optimize ? 1 : 0)
     << " r0=" << format_number(cfg.r0) << " rho_min=" << format_number(cfg.rho_min)
     << " rho_max=" << format_number(cfg.rho_max) << " points=" << cfg.points << " l=" << range_text(cfg.l_range)
     << " n=" << range_text(cfg.n_range) << " boxes=";
  for (std::size_t i = 0; i < cfg.boxes.size(); ++i) os << (i ? "," : "") << format_number(cfg.boxes[i]);
  os << " box_spacing=" << format_number(cfg.box_spacing) << " abs_tol=" << format_number(cfg.abs_tol)
     << " rel_tol=" << format_number(cfg.rel_tol) << " format=" << (cfg.format == Format::Csv ? "csv" : "json");
  return os.str();
}

Table base_table(const RunConfig& cfg) {
  Table t;
  t.meta.emplace_back("program", std::string("mtf ") + kVersion);
  t.meta.emplace_back("command", cfg.subcommand);
  t.meta.emplace_back("config", config_text(cfg));
  return t;
}

struct ProfileChoice {
  profile::ProfileFunction profile;
  std::string provenance;
};

ProfileChoice make_profile(const RunConfig& cfg) {
  const int m = cfg.m;
  std::string method = cfg.method;
  if (method.empty()) method = (m == 2 || m == 3) ? "analytic" : "trial";

  if (method == "analytic") {
    if (m != 2 && m != 3) throw UsageError("no analytic solution for m=" + std::to_string(m));
    return {profile::analytic_profile(m), "analytic m=" + std::to_string(m)};
  }
  if (method == "shoot") {
    auto p = profile::shoot_profile(m, tolerance(cfg), std::max(40.0, cfg.rho_max));
    return {p, "shoot m=" + std::to_string(m) + " kappa=" + format_number(p.param("kappa"))};
  }
  if (method == "trial") {
    double kappa = cfg.kappa;
    std::string origin = "given";
    if (kappa < 0.0) {
      if (m == 1 && !cfg.optimize) {
        kappa = kReferenceKappa0;
        origin = "reference";
      } else {
        kappa = profile::optimize_trial(m, profile::default_trial_bracket(m), {1e-9, 1e-9, 500}).kappa;
        origin = "optimized";
      }
    }
    auto p = profile::trial_profile(m, kappa);
    return {p, "trial m=" + std::to_string(m) + " kappa=" + format_number(kappa) + " (" + origin + ")"};
  }
  throw UsageError("unknown method '" + method + "' (expected analytic, trial or shoot)");
}

std::vector<double> output_grid(double lo, double hi, std::size_t points, bool include_lo) {
  std::vector<double> rho;
  for (std::size_t i = include_lo ? 0 : 1; i <= points; ++i) {
    rho.push_back(lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(points));
  }
  return rho;
}

std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("MTF_OUTPUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

void write_plot_stub(const std::filesystem::path& data, const Table& table) {
  std::ostringstream os;
  os << "# gnuplot stub for " << data.filename().string() << "\n"
     << "set datafile commentschars \"#\"\n"
     << "set datafile separator \",\"\n"
     << "set key autotitle columnhead\n"
     << "plot '" << data.filename().string() << "' using 1:2 with lines";
  for (std::size_t c = 2; c < table.columns.size(); ++c) os << ", '' using 1:" << c + 1 << " with lines";
  os << "\n";
  auto stub = data;
  stub += ".gp";
  write_file(stub, os.str());
}

void emit(const RunConfig& cfg, const Table& table, std::ostream& out) {
  const std::string text = cfg.format == Format::Csv ? render_csv(table) : render_json(table);
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  const auto path = resolve_output(cfg.out);
  write_file(path, text);
  if (cfg.plot_stub) write_plot_stub(path, table);
}

// ---------------------------------------------------------------------------

int run_profile(RunConfig cfg, std::ostream& out) {
  if (cfg.rho_max <= 0.0) cfg.rho_max = 10.0;
  if (cfg.points == 0) cfg.points = 500;
  if (cfg.rho_min < 0.0 || cfg.rho_min >= cfg.rho_max) throw UsageError("need 0 <= rho_min < rho_max");

  std::optional<profile::TrialOptimum> optimum;
  if (cfg.optimize) {
    if (!cfg.method.empty() && cfg.method != "trial") throw UsageError("--optimize applies to --method trial");
    cfg.method = "trial";
    optimum = profile::optimize_trial(cfg.m, profile::default_trial_bracket(cfg.m), {1e-9, 1e-9, 500});
    cfg.kappa = optimum->kappa;
  }
  const ProfileChoice choice = make_profile(cfg);

  Table table = base_table(cfg);
  table.meta.emplace_back("profile", choice.provenance);
  table.columns = {"rho", "q0", "alpha", "dq0"};
  for (double rho : output_grid(cfg.rho_min, cfg.rho_max, cfg.points, true)) {
    const auto& p = choice.profile;
    table.rows.push_back({format_number(rho), format_number(p.q0(rho)), format_number(p.alpha(rho)),
                          format_number(p.dq0(rho))});
  }

  if (optimum) {
    ordered_json summary;
    summary["m"] = cfg.m;
    summary[cfg.m == 1 ? "kappa0" : "kappa1"] = std::stod(format_number(optimum->kappa));
    if (cfg.m >= 2) summary["kappa2"] = std::stod(format_number(profile::trial_kappa2(cfg.m)));
    summary["energy"] = std::stod(format_number(optimum->energy));
    table.summary_json = summary.dump();
    out << summary.dump(2) << "\n";
    if (cfg.out.empty()) return kExitOk;
  }
  emit(cfg, table, out);
  return kExitOk;
}

int run_potential(RunConfig cfg, std::ostream& out) {
  if (cfg.rho_max <= 0.0) cfg.rho_max = 10.0;
  if (cfg.points == 0) cfg.points = 500;
  if (cfg.rho_min < 0.0 || cfg.rho_min >= cfg.rho_max) throw UsageError("need 0 <= rho_min < rho_max");

  const ProfileChoice choice = make_profile(cfg);
  const auto v = fluctuation::FluctuationPotential::bracket(choice.profile);
  const bool closed = cfg.m == 2 || cfg.m == 3;

  Table table = base_table(cfg);
  table.meta.emplace_back("profile", choice.provenance);
  table.meta.emplace_back("convention", closed ? "v_bracket=bracket v_closed_form=closed-form" : "v_bracket=bracket");
  table.columns = {"rho", "v_bracket"};
  if (closed) table.columns.push_back("v_closed_form");
  for (double rho : output_grid(cfg.rho_min, cfg.rho_max, cfg.points, cfg.rho_min > 0.0)) {
    std::vector<std::string> row{format_number(rho), format_number(v(rho))};
    if (closed) row.push_back(format_number(fluctuation::potential_closed_form(cfg.m, rho)));
    table.rows.push_back(std::move(row));
  }
  emit(cfg, table, out);
  return kExitOk;
}

int run_spectrum(RunConfig cfg, std::ostream& out) {
  if (cfg.l_range.lo < 0 || cfg.l_range.hi < cfg.l_range.lo) throw UsageError("invalid --l range");
  if (!(cfg.r0 > 0.0)) throw UsageError("--r0 must be positive");

  const ProfileChoice choice = make_profile(cfg);
  const auto v = fluctuation::FluctuationPotential::bracket(choice.profile);
  Table table = base_table(cfg);
  table.meta.emplace_back("profile", choice.provenance);
  table.meta.emplace_back("convention", "bracket");

  if (cfg.m == 1) {
    if (cfg.n_range.lo < 1 || cfg.n_range.hi < cfg.n_range.lo) throw UsageError("invalid --n range (n starts at 1)");
    if (cfg.rho_min <= 0.0) cfg.rho_min = 1e-3;
    if (cfg.rho_max <= 0.0) cfg.rho_max = 12.0;
    if (cfg.points == 0) cfg.points = 4000;
    const RadialGrid grid{cfg.rho_min, cfg.rho_max, cfg.points};
    if (grid.n_points < 100 || !(grid.rho_max > grid.rho_min)) throw UsageError("invalid grid");

    table.meta[2].second = config_text(cfg);
    table.meta.emplace_back("grid", "rho_min=" + format_number(grid.rho_min) + " rho_max=" + format_number(grid.rho_max) +
                                        " points=" + std::to_string(grid.n_points) + " refined_points=" +
                                        std::to_string(grid.refined().n_points));
    table.meta.emplace_back("omega2", "Richardson extrapolation of the grid and its halved-spacing refinement");
    table.meta.emplace_back("degeneracy", "each (n, l) level is (2l+1)-fold degenerate in l3");
    table.columns = {"m", "l", "n", "omega2", "omega2_raw", "omega2_oscillator", "nodes"};

    const spectrum::SpectrumTable spec =
        spectrum::compute_spectrum(v, cfg.l_range.lo, cfg.l_range.hi, cfg.n_range.hi, grid, cfg.r0);
    for (const auto& mode : spec.modes) {
      if (mode.n < cfg.n_range.lo) continue;
      table.rows.push_back({std::to_string(cfg.m), std::to_string(mode.l), std::to_string(mode.n),
                            format_number(mode.omega2), format_number(mode.omega2_raw),
                            format_number(spectrum::oscillator_reference(mode.n, mode.l, cfg.r0)),
                            std::to_string(mode.nodes)});
    }
  } else {
    table.meta.emplace_back("spectrum", "continuous; lowest boxed eigenvalue per box size");
    table.columns = {"m", "l", "rho_max", "lambda_min", "negative_count"};
    ordered_json fits = ordered_json::object();
    for (int l = cfg.l_range.lo; l <= cfg.l_range.hi; ++l) {
      const auto probe = spectrum::continuum_probe(v, l, cfg.boxes, cfg.box_spacing);
      for (const auto& box : probe.boxes) {
        table.rows.push_back({std::to_string(cfg.m), std::to_string(l), format_number(box.rho_max),
                              format_number(box.lambda_min / (cfg.r0 * cfg.r0)), std::to_string(box.negative_count)});
      }
      table.meta.emplace_back("fitted_power_l" + std::to_string(l), format_number(probe.fitted_power));
      fits["l" + std::to_string(l)] = std::stod(format_number(probe.fitted_power));
    }
    table.summary_json = ordered_json{{"fitted_power", fits}}.dump();
  }
  emit(cfg, table, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  ordered_json entry;
  bool pass = true;
  bool informational = false;
};

double max_abs_over(const std::function<double(double)>& f, double lo, double hi, int samples, bool log_spaced) {
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double s = static_cast<double>(i) / samples;
    const double x = log_spaced ? lo * std::pow(hi / lo, s) : lo + s * (hi - lo);
    worst = std::max(worst, std::abs(f(x)));
  }
  return worst;
}

std::vector<Check> verification_suite() {
  std::vector<Check> checks;
  const numerics::ToleranceSpec opt_tol{1e-9, 1e-9, 500};

  {
    const auto best = profile::optimize_trial(1, profile::default_trial_bracket(1), opt_tol);
    Check c{"kappa0", {}};
    c.pass = std::abs(best.kappa - kReferenceKappa0) <= 5e-5;
    c.entry = {{"expected", kReferenceKappa0}, {"got", best.kappa}, {"tolerance", 5e-5}, {"energy", best.energy}};
    checks.push_back(c);
  }
  {
    const auto best = profile::optimize_trial(4, profile::default_trial_bracket(4), opt_tol);
    Check c{"kappa1_m4", {}};
    c.pass = std::abs(best.kappa - kReferenceKappa1M4) <= 5e-4;
    c.entry = {{"expected", kReferenceKappa1M4}, {"got", best.kappa}, {"tolerance", 5e-4}};
    checks.push_back(c);
    Check k2{"kappa2_m4", {}};
    k2.pass = profile::trial_kappa2(4) == 36.0 / 19.0;
    k2.entry = {{"expected", 36.0 / 19.0}, {"got", profile::trial_kappa2(4)}};
    checks.push_back(k2);
  }
  for (int m : {2, 3}) {
    const auto p = profile::analytic_profile(m);
    const double worst = max_abs_over([&](double r) { return profile::ode_residual(p, r); }, 1e-2, 50.0, 4000, true);
    Check c{"residual_m" + std::to_string(m) + "_max", {}};
    c.pass = worst < 1e-10;
    c.entry = {{"bound", 1e-10}, {"got", worst}};
    checks.push_back(c);
  }
  for (int m : {2, 3}) {
    const auto exact = profile::analytic_profile(m);
    const auto shot = profile::shoot_profile(m, {1e-13, 1e-13, 2000}, 40.0);
    const double worst =
        max_abs_over([&](double r) { return shot.q0(r) - exact.q0(r); }, 0.0, 20.0, 4000, false);
    Check c{"shoot_m" + std::to_string(m) + "_max_error", {}};
    c.pass = worst < 1e-6;
    c.entry = {{"bound", 1e-6}, {"got", worst}, {"kappa", shot.param("kappa")}};
    checks.push_back(c);
  }
  {
    const auto osc = fluctuation::FluctuationPotential::custom(
        "oscillator", [](double rho) { return 0.5 * rho * rho; }, 0, true);
    const auto modes = spectrum::bound_states(osc, 0, 4, RadialGrid{}, 1.0);
    double worst = 0.0;
    ordered_json got = ordered_json::array();
    for (const auto& mode : modes) {
      const double expected = spectrum::oscillator_reference(mode.n, 0, 1.0);
      worst = std::max(worst, std::abs(mode.omega2 - expected) / expected);
      got.push_back(mode.omega2);
    }
    Check c{"oscillator_l0", {}};
    c.pass = worst < 1e-4;
    c.entry = {{"expected", {1.5, 3.5, 5.5, 7.5}}, {"got", got}, {"max_rel_error", worst}, {"bound", 1e-4}};
    checks.push_back(c);
  }
  {
    const std::vector<std::pair<int, profile::ProfileFunction>> profiles = {
        {2, profile::analytic_profile(2)},
        {3, profile::analytic_profile(3)},
        {4, profile::trial_profile(4, kReferenceKappa1M4)}};
    for (const auto& [m, p] : profiles) {
      double lowest = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 5000; ++i) {
        const double rho = 1e-3 * std::pow(1e5, i / 5000.0);
        lowest = std::min(lowest, fluctuation::potential_bracket(p, rho));
      }
      Check c{"positivity_m" + std::to_string(m), {}};
      c.pass = lowest > 0.0;
      c.entry = {{"min_v", lowest}, {"range", {1e-3, 100.0}}};
      checks.push_back(c);
    }
  }
  for (int m : {3, 2}) {
    const auto p = profile::analytic_profile(m);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i <= 2000; ++i) {
      const double rho = 1e-2 * std::pow(1e4, i / 2000.0);
      const double ratio = fluctuation::potential_closed_form(m, rho) / fluctuation::potential_bracket(p, rho);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double spread = (hi - lo) / std::abs(lo);
    const double at_one = fluctuation::potential_closed_form(m, 1.0) / fluctuation::potential_bracket(p, 1.0);
    Check c{"closed_form_ratio_m" + std::to_string(m), {}};
    c.entry = {{"measured", at_one}, {"measured_min", lo}, {"measured_max", hi}, {"relative_spread", spread}};
    if (m == 3) {
      c.entry["constant_within"] = 1e-8;
      c.pass = spread < 1e-8;
    } else {
      c.informational = true;
    }
    checks.push_back(c);
  }
  {
    const auto v = fluctuation::FluctuationPotential::bracket(profile::analytic_profile(3));
    const std::vector<double> boxes{20.0, 40.0, 80.0};
    const auto probe = spectrum::continuum_probe(v, 0, boxes);
    bool positive = true;
    ordered_json lambdas = ordered_json::array();
    for (const auto& b : probe.boxes) {
      positive = positive && b.negative_count == 0 && b.lambda_min > 0.0;
      lambdas.push_back(b.lambda_min);
    }
    Check c{"continuum_m3", {}};
    c.pass = positive && probe.fitted_power >= -2.2 && probe.fitted_power <= -1.8;
    c.entry = {{"boxes", boxes}, {"lambda_min", lambdas}, {"fitted_power", probe.fitted_power}};
    checks.push_back(c);
  }
  {
    const auto v = fluctuation::FluctuationPotential::bracket(profile::trial_profile(1, kReferenceKappa0));
    const auto modes = spectrum::bound_states(v, 0, 1, RadialGrid{}, 1.0);
    const double g = spectrum::gaussian_tail_check(modes.front());
    Check c{"gaussian_tail_m1", {}};
    c.pass = g >= 0.95 && g <= 1.05;
    c.entry = {{"slope", g}, {"range", {0.95, 1.05}}};
    checks.push_back(c);
    for (int l : {0, 1, 2}) {
      const auto mode = spectrum::bound_states(v, l, 1, RadialGrid{}, 1.0).front();
      const double fitted = spectrum::fitted_origin_exponent(mode);
      const double expected = spectrum::origin_exponent(l);
      Check e{"origin_exponent_l" + std::to_string(l), {}};
      e.pass = std::abs(fitted - expected) <= 0.02 * expected;
      e.entry = {{"expected", expected}, {"got", fitted}, {"relative_tolerance", 0.02}};
      checks.push_back(e);
    }
  }
  return checks;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto checks = verification_suite();
  ordered_json report;
  report["program"] = std::string("mtf ") + kVersion;
  ordered_json entries = ordered_json::object();
  const Check* first_failure = nullptr;
  for (const auto& c : checks) {
    ordered_json e = c.entry;
    if (c.informational) {
      e["informational"] = true;
    } else {
      e["pass"] = c.pass;
      if (!c.pass && !first_failure) first_failure = &c;
    }
    entries[c.name] = e;
  }
  report["checks"] = entries;
  report["all_pass"] = first_failure == nullptr;
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file(resolve_output(cfg.out), text);
  }
  if (first_failure) {
    err << "verify: check '" << first_failure->name << "' failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

IntRange parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid integer range '" + text + "'");
    }
    if (used != s.size()) throw UsageError("invalid integer range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const IntRange r{to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
  if (r.hi < r.lo) throw UsageError("range '" + text + "' is empty");
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hedgehog soliton profiles, fluctuation potentials and normal-mode spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  std::string l_text = "0..6";
  std::string n_text = "1..5";
  std::string format_text = "csv";
  std::string boxes_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "potential power m >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--method", cfg.method, "profile method: analytic, trial or shoot");
    sub->add_option("--kappa", cfg.kappa, "trial parameter (kappa0 for m=1, kappa1 for m>=2)");
    sub->add_option("--rho-min", cfg.rho_min, "lower radius");
    sub->add_option("--rho-max", cfg.rho_max, "upper radius");
    sub->add_option("--points", cfg.points, "grid intervals / points");
    sub->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance");
    sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance");
    sub->add_option("--out", cfg.out, "output file (relative paths resolve against $MTF_OUTPUT_DIR)");
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--plot-stub", cfg.plot_stub, "also write a gnuplot script next to the data");
  };

  auto* profile_cmd = app.add_subcommand("profile", "tabulate q0(rho) = cos alpha(rho)");
  add_common(profile_cmd);
  profile_cmd->add_flag("--optimize", cfg.optimize, "minimise the trial energy and print a JSON summary");

  auto* potential_cmd = app.add_subcommand("potential", "tabulate the fluctuation potential v(rho)");
  add_common(potential_cmd);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "normal-mode spectrum (m=1) or continuum probe (m>=2)");
  add_common(spectrum_cmd);
  spectrum_cmd->add_option("--l", l_text, "angular momenta a..b");
  spectrum_cmd->add_option("--n", n_text, "radial quantum numbers a..b (n >= 1)");
  spectrum_cmd->add_option("--r0", cfg.r0, "length scale r0");
  spectrum_cmd->add_option("--boxes", boxes_text, "comma separated box sizes for m>=2");
  spectrum_cmd->add_option("--box-spacing", cfg.box_spacing, "grid spacing of the continuum boxes");

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification suite");
  verify_cmd->add_option("--out", cfg.out, "report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.format = format_text == "json" ? Format::Json : Format::Csv;
    if (app.got_subcommand(spectrum_cmd)) {
      cfg.l_range = parse_range(l_text);
      cfg.n_range = parse_range(n_text);
      if (spectrum_cmd->count("--l") == 0 && cfg.m >= 2) cfg.l_range = {0, 0};
      if (!boxes_text.empty()) {
        cfg.boxes.clear();
        std::stringstream ss(boxes_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            cfg.boxes.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw UsageError("invalid box size '" + item + "'");
          }
        }
        if (cfg.boxes.size() < 2) throw UsageError("--boxes needs at least two sizes");
      }
    }

    if (app.got_subcommand(profile_cmd)) {
      cfg.subcommand = "profile";
      return run_profile(cfg, out);
    }
    if (app.got_subcommand(potential_cmd)) {
      cfg.subcommand = "potential";
      return run_potential(cfg, out);
    }
    if (app.got_subcommand(spectrum_cmd)) {
      cfg.subcommand = "spectrum";
      return run_spectrum(cfg, out);
    }
    cfg.subcommand = "verify";
    return run_verify(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Unsupported || e.kind() == ErrorKind::BadParameter) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::GridTooSmall) err << "hint: rerun with a larger --rho-max\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace mtf::cli
