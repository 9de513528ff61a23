// One line per acceptance criterion: PASS/FAIL, measured values, wall time.
// Exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mtf/cli.hpp"
#include "mtf/fluctuation.hpp"
#include "mtf/profile.hpp"
#include "mtf/spectrum.hpp"

using namespace mtf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += " [over time budget " + std::to_string(budget_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double sup(const std::function<double(double)>& f, double lo, double hi, int n) {
  double w = 0;
  for (int i = 0; i <= n; ++i) w = std::max(w, std::abs(f(lo + (hi - lo) * i / n)));
  return w;
}

double exact_m2(double r) { return 1 / (1 + std::sqrt(2.0 / 7.0) * r * r); }
double exact_m3(double r) { return 1 / std::sqrt(1 + r * r); }

fluctuation::FluctuationPotential m1_potential() {
  // the reference trial parameter, as the CLI uses by default
  return fluctuation::FluctuationPotential::bracket(profile::trial_profile(1, 0.206796));
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mtf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const numerics::ToleranceSpec tol{1e-10, 1e-10, 200};

  criterion(1, "kappa0 (m=1 trial)", 5.0, [&] {
    const auto r = profile::optimize_trial(1, profile::default_trial_bracket(1), tol);
    const double target = 0.206796;
    return Outcome{std::abs(r.kappa - target) <= 5e-5,
                   fmt("got %.6f want %.6f +-5e-5 (H=%.10f)", r.kappa, target, r.energy)};
  });

  criterion(2, "kappa1, kappa2 (m=4 trial)", 10.0, [&] {
    const auto r = profile::optimize_trial(4, profile::default_trial_bracket(4), tol);
    const double k2 = profile::trial_kappa2(4);
    const bool ok = std::abs(r.kappa - 2.98428) <= 5e-4 && k2 == 36.0 / 19.0;
    return Outcome{ok, fmt("kappa1=%.6f want 2.98428 +-5e-4, kappa2=%.17g", r.kappa, k2)};
  });

  criterion(3, "exact-solution residuals", 0, [&] {
    double worst[2];
    for (int m : {2, 3}) {
      const auto p = profile::analytic_profile(m);
      worst[m - 2] = sup([&](double r) { return profile::ode_residual(p, r); }, 1e-2, 50.0, 20000);
    }
    return Outcome{worst[0] < 1e-10 && worst[1] < 1e-10, fmt("m=2 %.2e, m=3 %.2e (< 1e-10)", worst[0], worst[1])};
  });

  criterion(4, "shooting vs exact m=2,3", 20.0, [&] {
    std::string detail;
    bool ok = true;
    for (int m : {2, 3}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto p = profile::shoot_profile(m, tol);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const double err =
          sup([&](double r) { return p.q0(r) - (m == 2 ? exact_m2(r) : exact_m3(r)); }, 0.0, 20.0, 20000);
      ok = ok && err < 1e-6 && secs < 10.0;
      detail += fmt("m=%d err=%.2e kappa=%.12f %.2fs; ", m, err, p.param("kappa"), secs);
    }
    return Outcome{ok, detail};
  });

  criterion(5, "oscillator oracle l=0", 5.0, [&] {
    const auto v = fluctuation::FluctuationPotential::custom("oscillator", [](double r) { return r * r / 2; }, 0, true);
    const auto modes = spectrum::bound_states(v, 0, 4, RadialGrid{});
    double worst = 0;
    for (const auto& mo : modes) worst = std::max(worst, std::abs(mo.omega2 / (2.0 * mo.n - 0.5) - 1));
    return Outcome{worst < 1e-4, fmt("max rel error %.2e (< 1e-4)", worst)};
  });

  criterion(6, "m=1 spectrum structure", 0, [&] {
    const auto table = spectrum::compute_spectrum(m1_potential(), 0, 8, 5, RadialGrid{});
    bool positive = true, formula = true, monotone = true;
    std::string dev;
    for (const auto& mo : table.modes) {
      positive = positive && mo.omega2 > 0;
      formula = formula && spectrum::oscillator_reference(mo.n, mo.l) == 2.0 * mo.n + mo.l - 0.5;
    }
    for (int n = 1; n <= 5; ++n) {
      dev += fmt("n=%d:", n);
      double prev = INFINITY;
      for (int l = 2; l <= 8; ++l) {
        const auto& mo = table.modes[static_cast<std::size_t>(l * 5 + n - 1)];
        const double d = std::abs(mo.omega2 - spectrum::oscillator_reference(n, l));
        if (!(d < prev)) monotone = false;
        prev = d;
        dev += fmt(" %.4f", d);
      }
      dev += "; ";
    }
    return Outcome{positive && formula && monotone,
                   fmt("positive=%d formula=%d monotone=%d |dev| l=2..8 ", positive, formula, monotone) + dev};
  });

  criterion(7, "origin exponent l=0,1,2", 0, [&] {
    bool ok = true;
    std::string detail;
    for (int l : {0, 1, 2}) {
      const auto mode = spectrum::bound_states(m1_potential(), l, 1, RadialGrid{})[0];
      const double got = spectrum::fitted_origin_exponent(mode);
      const double want = spectrum::origin_exponent(l);
      ok = ok && std::abs(got / want - 1) < 0.02;
      detail += fmt("l=%d %.4f/%.4f ", l, got, want);
    }
    return Outcome{ok, detail};
  });

  criterion(8, "Gaussian tail (1,0)", 0, [&] {
    const auto mode = spectrum::bound_states(m1_potential(), 0, 1, RadialGrid{})[0];
    const double g = spectrum::gaussian_tail_check(mode);
    return Outcome{g >= 0.95 && g <= 1.05, fmt("g=%.4f in [0.95, 1.05]", g)};
  });

  criterion(9, "continuum m=3", 0, [&] {
    const std::vector<double> boxes{20.0, 40.0, 80.0};
    const auto probe = spectrum::continuum_probe(
        fluctuation::FluctuationPotential::bracket(profile::analytic_profile(3)), 0, boxes);
    bool ok = probe.fitted_power >= -2.2 && probe.fitted_power <= -1.8;
    std::string detail;
    for (const auto& b : probe.boxes) {
      ok = ok && b.negative_count == 0 && b.lambda_min > 0;
      detail += fmt("L=%g lambda=%.5g neg=%zu; ", b.rho_max, b.lambda_min, b.negative_count);
    }
    return Outcome{ok, detail + fmt("power=%.4f", probe.fitted_power)};
  });

  criterion(10, "potential positivity m=2,3,4", 0, [&] {
    std::vector<profile::ProfileFunction> ps{profile::analytic_profile(2), profile::analytic_profile(3),
                                             profile::trial_profile(4, 2.98428)};
    bool ok = true;
    std::string detail;
    for (const auto& p : ps) {
      double lowest = INFINITY;
      for (int i = 0; i <= 100000; ++i) {
        const double r = 1e-3 * std::pow(1e5, i / 100000.0);
        lowest = std::min(lowest, fluctuation::potential_bracket(p, r));
      }
      ok = ok && lowest > 0;
      detail += fmt("m=%d min=%.3e ", p.m(), lowest);
    }
    return Outcome{ok, detail};
  });

  criterion(11, "r0 scaling", 0, [&] {
    const auto a = spectrum::compute_spectrum(m1_potential(), 0, 4, 3, RadialGrid{}, 1.0);
    const auto b = spectrum::compute_spectrum(m1_potential(), 0, 4, 3, RadialGrid{}, 2.0);
    double worst = 0;
    for (std::size_t i = 0; i < a.modes.size(); ++i) {
      worst = std::max(worst, std::abs(4 * b.modes[i].omega2 / a.modes[i].omega2 - 1));
    }
    return Outcome{worst < 1e-8, fmt("max rel deviation %.2e (< 1e-8)", worst)};
  });

  criterion(12, "closed-form ratio m=3", 0, [&] {
    const auto p = profile::analytic_profile(3);
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i <= 5000; ++i) {
      const double r = 1e-3 * std::pow(1e5, i / 5000.0);
      const double ratio = fluctuation::potential_closed_form(3, r) / fluctuation::potential_bracket(p, r);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double spread = (hi - lo) / lo;
    return Outcome{spread < 1e-8, fmt("ratio=%.12f spread=%.2e (< 1e-8)", lo, spread)};
  });

  criterion(13, "CLI determinism", 0, [&] {
    const fs::path dir = fs::temp_directory_path() / ("mtf_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    ::setenv("MTF_OUTPUT_DIR", dir.c_str(), 1);
    const std::vector<std::vector<std::string>> runs{
        {"profile", "--m", "1", "--method", "shoot", "--format", "json"},
        {"profile", "--m", "4", "--method", "trial"},
        {"potential", "--m", "2"},
        {"spectrum", "--m", "1", "--l", "0..6", "--n", "1..5"},
        {"spectrum", "--m", "3", "--boxes", "20,40,80"},
        {"verify"},
    };
    bool ok = true;
    std::string detail;
    int k = 0;
    for (const auto& args : runs) {
      std::string bytes[2];
      for (auto& b : bytes) {
        auto a = args;
        const std::string name = "run" + std::to_string(k++) + ".out";
        a.insert(a.end(), {"--out", name});
        run_cli(a);
        b = slurp(dir / name);
      }
      const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
      ok = ok && same;
      detail += args[0] + (same ? " same; " : " DIFFERS; ");
    }
    ::unsetenv("MTF_OUTPUT_DIR");
    fs::remove_all(dir);
    return Outcome{ok, detail};
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
