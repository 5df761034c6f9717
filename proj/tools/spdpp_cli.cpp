// Command-line front end over the C API.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdpp/spdpp.h"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

struct Failure {
  spdpp_status status;
  std::string message;
};

void check(spdpp_status status) {
  if (status != SPDPP_OK) throw Failure{status, spdpp_last_error()};
}

struct TableDeleter {
  void operator()(spdpp_table* t) const { spdpp_table_destroy(t); }
};
struct SpectrumDeleter {
  void operator()(spdpp_spectrum* s) const { spdpp_spectrum_destroy(s); }
};
struct EnsembleDeleter {
  void operator()(spdpp_ensemble* e) const { spdpp_ensemble_destroy(e); }
};
using Table = std::unique_ptr<spdpp_table, TableDeleter>;
using SpectrumPtr = std::unique_ptr<spdpp_spectrum, SpectrumDeleter>;
using EnsemblePtr = std::unique_ptr<spdpp_ensemble, EnsembleDeleter>;

double scalar(const Table& table, const char* name) {
  double value = 0.0;
  check(spdpp_table_scalar(table.get(), name, &value));
  return value;
}

struct Config {
  std::size_t n = 0;
  int k = 0;
  int m = 1;
  double tau = 1.0;
  std::optional<std::uint64_t> seed;
  std::string spectrum = "linear";
  std::string matrix;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  std::size_t grid_points = 40;
  std::size_t draws = 0;
  std::size_t subsets = 100;
  std::size_t repeats = 20;
  std::vector<std::size_t> ns;
  std::string rule = "automatic";
  std::string out = "-";
  bool check = false;
};

bool stochastic_spectrum(const std::string& spec) {
  return spec.rfind("uniform", 0) == 0 || spec == "gaussian_cloud";
}

std::uint64_t require_seed(const Config& c, const char* command) {
  if (!c.seed)
    throw Failure{SPDPP_ERR_INPUT, std::string(command) + " needs --seed"};
  return *c.seed;
}

EnsemblePtr build_ensemble(const Config& c, const char* command) {
  spdpp_ensemble* raw = nullptr;
  if (!c.matrix.empty()) {
    check(spdpp_ensemble_from_csv(c.matrix.c_str(), &raw));
  } else if (c.spectrum == "gaussian_cloud") {
    check(spdpp_ensemble_gaussian_cloud(c.n, require_seed(c, command), c.tau, &raw));
  } else {
    const std::uint64_t seed =
        stochastic_spectrum(c.spectrum) ? require_seed(c, command) : c.seed.value_or(0);
    spdpp_spectrum* s = nullptr;
    check(spdpp_spectrum_from_spec(c.spectrum.c_str(), c.n, seed, c.tau, &s));
    SpectrumPtr spectrum(s);
    check(spdpp_ensemble_diagonal(spectrum.get(), &raw));
  }
  return EnsemblePtr(raw);
}

void report(bool ok, const std::string& summary) {
  std::cerr << (ok ? "check passed: " : "check FAILED: ") << summary << '\n';
}

int cmd_esp(const Config& c) {
  const std::uint64_t seed =
      stochastic_spectrum(c.spectrum) ? require_seed(c, "esp") : c.seed.value_or(0);
  spdpp_spectrum* s = nullptr;
  check(spdpp_spectrum_from_spec(c.spectrum.c_str(), c.n, seed, c.tau, &s));
  SpectrumPtr spectrum(s);
  spdpp_table* t = nullptr;
  check(spdpp_run_esp(spectrum.get(), &t));
  Table table(t);
  check(spdpp_table_write_csv(table.get(), c.out.c_str()));

  const double lo = scalar(table, "min_ratio");
  const double hi = scalar(table, "max_ratio");
  const auto overflow = static_cast<long>(scalar(table, "first_overflow"));
  char line[256];
  std::snprintf(line, sizeof line,
                "ratio range [%.6f, %.6f], band [%.6f, 1.09]; unguarded overflow at k = %ld; "
                "%.0f rows with k >= positive eigenvalues",
                lo, hi, 1.0 / 1.09, overflow, scalar(table, "infeasible_rows"));
  if (!c.check) {
    std::cerr << line << '\n';
    return 0;
  }
  const bool ok = lo >= 1.0 / 1.09 && hi <= 1.09;
  report(ok, line);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_inclusion(const Config& c) {
  if (c.k < 1) throw Failure{SPDPP_ERR_INPUT, "inclusion needs --k >= 1"};
  if (c.m > 1) require_seed(c, "inclusion");
  EnsemblePtr ensemble = build_ensemble(c, "inclusion");
  spdpp_table* t = nullptr;
  check(spdpp_run_inclusion(ensemble.get(), c.k, c.m, c.subsets, c.draws,
                            c.seed.value_or(0), &t));
  Table table(t);
  check(spdpp_table_write_csv(table.get(), c.out.c_str()));

  const bool mc = scalar(table, "monte_carlo") != 0.0;
  const double rows = static_cast<double>(spdpp_table_rows(table.get()));
  const double within = scalar(table, "within_3se");
  const double mad_b = scalar(table, "mad_basic");
  const double mad_c = scalar(table, "mad_corrected");
  char line[256];
  std::snprintf(line, sizeof line,
                "%s reference%s; mean abs deviation basic %.4g, corrected %.4g; "
                "%.0f/%.0f corrected within 3 standard errors",
                mc ? "Monte Carlo" : "exact", mc ? (" (" + std::to_string(c.draws) + " draws)").c_str() : "",
                mad_b, mad_c, within, rows);
  if (!c.check) {
    std::cerr << line << '\n';
    return 0;
  }
  const bool ok = mad_c <= mad_b && (!mc || within >= 0.95 * rows);
  report(ok, line);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_rates(const Config& c) {
  const std::uint64_t seed = require_seed(c, "rates");
  double lo = 1.0, hi = 10.0;
  if (c.spectrum != "uniform") {
    const std::string prefix = "uniform:";
    if (c.spectrum.rfind(prefix, 0) != 0)
      throw Failure{SPDPP_ERR_INPUT, "rates needs --spectrum uniform[:LO:HI]"};
    const std::string rest = c.spectrum.substr(prefix.size());
    const auto colon = rest.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("colon");
      lo = std::stod(rest.substr(0, colon));
      hi = std::stod(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw Failure{SPDPP_ERR_INPUT, "expected --spectrum uniform:LO:HI"};
    }
  }
  const std::vector<std::size_t> ns =
      c.ns.empty() ? std::vector<std::size_t>{25, 50, 100, 200, 400, 800} : c.ns;
  spdpp_table* t = nullptr;
  check(spdpp_run_rates(ns.data(), ns.size(), c.repeats, seed, lo, hi, &t));
  Table table(t);
  check(spdpp_table_write_csv(table.get(), c.out.c_str()));

  const double sb = scalar(table, "slope_basic");
  const double sc = scalar(table, "slope_corrected");
  char line[256];
  std::snprintf(line, sizeof line,
                "slope_basic %.6f (band [-1.25, -0.75]), slope_corrected %.6f (band [-2.3, -1.7])",
                sb, sc);
  if (!c.check) {
    std::cerr << line << '\n';
    return 0;
  }
  const bool ok = sb >= -1.25 && sb <= -0.75 && sc >= -2.3 && sc <= -1.7;
  report(ok, line);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_sample(const Config& c) {
  const std::uint64_t seed = require_seed(c, "sample");
  if (c.k < 1) throw Failure{SPDPP_ERR_INPUT, "sample needs --k >= 1"};
  EnsemblePtr ensemble = build_ensemble(c, "sample");
  spdpp_rule rule = SPDPP_RULE_AUTOMATIC;
  if (c.rule == "exact") rule = SPDPP_RULE_EXACT;
  else if (c.rule == "corrected") rule = SPDPP_RULE_CORRECTED;

  spdpp_sampler* raw = nullptr;
  check(spdpp_sampler_create(ensemble.get(), c.k, rule, &raw));
  std::unique_ptr<spdpp_sampler, void (*)(spdpp_sampler*)> sampler(raw, spdpp_sampler_destroy);
  spdpp_rng* r = nullptr;
  check(spdpp_rng_create(seed, &r));
  std::unique_ptr<spdpp_rng, void (*)(spdpp_rng*)> rng(r, spdpp_rng_destroy);

  std::ofstream file;
  if (c.out != "-") {
    file.open(c.out, std::ios::binary);
    if (!file) throw Failure{SPDPP_ERR_IO, "cannot open " + c.out};
  }
  std::ostream& out = c.out == "-" ? std::cout : file;
  std::vector<std::size_t> items(static_cast<std::size_t>(c.k));
  const std::size_t draws = c.draws == 0 ? 1 : c.draws;
  for (std::size_t d = 0; d < draws; ++d) {
    check(spdpp_sampler_draw(sampler.get(), rng.get(), items.data(), items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? " " : "") << items[i] + 1;
    out << '\n';
  }
  out.flush();
  if (!out) throw Failure{SPDPP_ERR_IO, "write failed"};
  return 0;
}

int cmd_infer(const Config& c) {
  const std::uint64_t seed = require_seed(c, "infer");
  const int k = c.k > 0 ? c.k : static_cast<int>(c.n / 10);
  const double lo = c.grid_lo > 0.0 ? c.grid_lo : c.tau / 10.0;
  const double hi = c.grid_hi > 0.0 ? c.grid_hi : c.tau * 10.0;
  spdpp_table* t = nullptr;
  check(spdpp_run_infer(c.n, k, c.tau, lo, hi, c.grid_points, seed, &t));
  Table table(t);
  check(spdpp_table_write_csv(table.get(), c.out.c_str()));

  const auto a = static_cast<long>(scalar(table, "argmax_kdpp"));
  const auto b = static_cast<long>(scalar(table, "argmax_dpp"));
  const double gap = scalar(table, "max_abs_gap_residual");
  char line[256];
  std::snprintf(line, sizeof line,
                "argmax k-DPP %ld, DPP profile %ld (grid indices); max |gap residual| %.3g",
                a, b, gap);
  if (!c.check) {
    std::cerr << line << '\n';
    return 0;
  }
  const bool ok = std::labs(a - b) <= 1 && gap <= 1e-9;
  report(ok, line);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_tv(const Config& c) {
  const std::uint64_t seed = require_seed(c, "tv");
  const std::vector<std::size_t> ns =
      c.ns.empty() ? std::vector<std::size_t>{8, 12, 16} : c.ns;
  spdpp_table* t = nullptr;
  check(spdpp_run_tv(ns.data(), ns.size(), c.repeats, seed, 1.0, 10.0, &t));
  Table table(t);
  check(spdpp_table_write_csv(table.get(), c.out.c_str()));
  const bool ok = scalar(table, "decreasing") != 0.0;
  const std::string line = ok ? "mean D1 strictly decreasing in n"
                              : "mean D1 not strictly decreasing in n";
  if (!c.check) {
    std::cerr << line << '\n';
    return 0;
  }
  report(ok, line);
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddlepoint approximations for k-DPPs"};
  app.set_version_flag("--version", std::string(spdpp_version()));
  app.require_subcommand(1);

  Config c;
  auto add_common = [&c](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "64-bit seed (required for stochastic runs)");
    sub->add_option("--out", c.out, "Output path, - for stdout")->capture_default_str();
    sub->add_flag("--check", c.check, "Exit 1 when the acceptance band is violated");
  };
  auto add_source = [&c](CLI::App* sub) {
    sub->add_option("--n", c.n, "Ground set size");
    sub->add_option("--spectrum", c.spectrum,
                    "linear, exp_decay, exp_decay10, flat, uniform[:LO:HI], "
                    "gaussian_cloud or from_file:PATH")
        ->capture_default_str();
    sub->add_option("--tau", c.tau, "Kernel bandwidth for gaussian_cloud")
        ->capture_default_str();
  };

  auto* esp = app.add_subcommand("esp", "Exact vs saddlepoint log-ESP for k = 1..n-1");
  add_source(esp);
  add_common(esp);

  auto* inclusion = app.add_subcommand("inclusion", "Inclusion probabilities vs reference");
  add_source(inclusion);
  add_common(inclusion);
  inclusion->add_option("--matrix", c.matrix, "CSV file holding L (overrides --spectrum)");
  inclusion->add_option("--k", c.k, "Sample size")->required();
  inclusion->add_option("--m", c.m, "Subset order")->capture_default_str();
  inclusion->add_option("--subsets", c.subsets, "Random subsets when m >= 2")
      ->capture_default_str();
  c.draws = 200000;
  inclusion->add_option("--draws", c.draws, "Monte Carlo draws when enumeration is too large")
      ->capture_default_str();

  auto* rates = app.add_subcommand("rates", "Error of basic and corrected estimates vs n");
  rates->add_option("--spectrum", c.spectrum, "uniform[:LO:HI]");
  rates->add_option("--ns", c.ns, "Sizes (default 25 50 100 200 400 800)")->delimiter(',');
  rates->add_option("--repeats", c.repeats, "Spectra per size")->capture_default_str();
  add_common(rates);

  auto* sample = app.add_subcommand("sample", "Draw k-DPP samples, one per line");
  add_source(sample);
  add_common(sample);
  sample->add_option("--matrix", c.matrix, "CSV file holding L (overrides --spectrum)");
  sample->add_option("--k", c.k, "Sample size")->required();
  sample->add_option("--draws", c.draws, "Number of samples");
  sample->add_option("--rule", c.rule, "automatic, exact or corrected")
      ->check(CLI::IsMember({"automatic", "exact", "corrected"}))
      ->capture_default_str();

  auto* infer = app.add_subcommand("infer", "Likelihood curves over the bandwidth");
  infer->add_option("--n", c.n, "Number of points")->required();
  infer->add_option("--k", c.k, "Observed set size (default n/10)");
  infer->add_option("--tau", c.tau, "True bandwidth")->capture_default_str();
  infer->add_option("--grid-lo", c.grid_lo, "Smallest grid bandwidth (default tau/10)");
  infer->add_option("--grid-hi", c.grid_hi, "Largest grid bandwidth (default 10 tau)");
  infer->add_option("--grid-points", c.grid_points, "Log-spaced grid points")
      ->capture_default_str();
  add_common(infer);

  auto* tv = app.add_subcommand("tv", "Total variation between k-DPP and matched DPP");
  tv->add_option("--ns", c.ns, "Sizes (default 8 12 16)")->delimiter(',');
  tv->add_option("--repeats", c.repeats, "Spectra per size")->capture_default_str();
  add_common(tv);

  CLI11_PARSE(app, argc, argv);
  if (sample->parsed() && sample->count("--draws") == 0) c.draws = 1;

  try {
    if (esp->parsed()) return cmd_esp(c);
    if (inclusion->parsed()) return cmd_inclusion(c);
    if (rates->parsed()) return cmd_rates(c);
    if (sample->parsed()) return cmd_sample(c);
    if (infer->parsed()) return cmd_infer(c);
    if (tv->parsed()) return cmd_tv(c);
  } catch (const Failure& f) {
    std::cerr << "error (" << spdpp_status_string(f.status) << "): " << f.message << '\n';
    return kExitError;
  }
  return kExitError;
}
