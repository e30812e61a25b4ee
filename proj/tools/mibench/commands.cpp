#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mibench/analytic.hpp"
#include "mibench/estimators.hpp"
#include "mibench/harness.hpp"
#include "mibench/ingest.hpp"
#include "mibench/sampling.hpp"
#include "mibench/serialize.hpp"

#ifndef MIBENCH_VERSION
#define MIBENCH_VERSION "dev"
#endif

namespace mibench::cli {
namespace {

using nlohmann::ordered_json;

constexpr std::size_t kLargestDeskN = 100'000;

// Bad flag values discovered after parsing; reported like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

template <typename T, typename Parse>
T parse_choice(const std::string& text, Parse parse, const char* flag) {
  const auto value = parse(text);
  if (!value) throw UsageError(std::string("unrecognized value '") + text + "' for " + flag);
  return *value;
}

Units parse_units(const std::string& text) {
  if (text == "nats") return Units::nats;
  if (text == "bits") return Units::bits;
  throw UsageError("--units must be nats or bits");
}

// ---------------------------------------------------------------------------
// Shared option groups

struct DistOptions {
  std::string config;
  std::string dist = "normal";
  double rho = 0.0;
  double nu = 3.0;
  double mu1 = 0.0, mu2 = 0.0;
  double sigma1 = 1.0, sigma2 = 1.0;
  std::string transform = "none";
};

void add_dist_options(CLI::App* app, DistOptions& o) {
  app->add_option("--config", o.config, "Distribution file (JSON or key=value); flags override");
  app->add_option("--dist", o.dist, "normal | lognormal | student");
  app->add_option("--rho", o.rho, "Correlation / scale-matrix off-diagonal, |rho| < 1");
  app->add_option("--nu", o.nu, "Student-t degrees of freedom");
  app->add_option("--mu1", o.mu1);
  app->add_option("--mu2", o.mu2);
  app->add_option("--sigma1", o.sigma1);
  app->add_option("--sigma2", o.sigma2);
  app->add_option("--transform", o.transform, "none | cube | cuberoot | exp");
}

DistributionSpec make_spec(const DistOptions& o, const CLI::App* app) {
  DistributionSpec spec;
  if (!o.config.empty()) spec = parse_spec_config(read_file(o.config));
  const auto given = [&](const char* flag) { return app->count(flag) > 0; };
  if (o.config.empty() || given("--dist")) {
    spec.family = parse_choice<Family>(o.dist, parse_family, "--dist");
  }
  if (o.config.empty() || given("--transform")) {
    spec.transform = parse_choice<Transform>(o.transform, parse_transform, "--transform");
  }
  if (o.config.empty() || given("--rho")) spec.rho = o.rho;
  if (o.config.empty() || given("--nu")) spec.nu = o.nu;
  if (o.config.empty() || given("--mu1")) spec.mu[0] = o.mu1;
  if (o.config.empty() || given("--mu2")) spec.mu[1] = o.mu2;
  if (o.config.empty() || given("--sigma1")) spec.sigma[0] = o.sigma1;
  if (o.config.empty() || given("--sigma2")) spec.sigma[1] = o.sigma2;
  spec.validate();
  return spec;
}

struct EstimatorOptions {
  std::string estimator = "ksg";
  std::size_t k = 4;
  std::size_t bins = 0;
  bool miller_madow = false;
  std::string duplicates;
};

void add_estimator_options(CLI::App* app, EstimatorOptions& o) {
  app->add_option("--estimator", o.estimator, "ksg | plugin");
  app->add_option("--k", o.k, "KSG neighbour count");
  app->add_option("--bins", o.bins, "Plugin bins per axis (0: ceil(n^(1/3)) in [8, 256])");
  app->add_flag("--mm", o.miller_madow, "Apply the Miller-Madow correction (plugin)");
  app->add_option("--duplicates", o.duplicates, "Repeated pairs: keep | jitter | drop");
}

EstimatorConfig make_estimator(const EstimatorOptions& o, DuplicatePolicy default_policy) {
  EstimatorConfig config;
  config.kind = parse_choice<EstimatorKind>(o.estimator, parse_estimator_kind, "--estimator");
  config.k = o.k;
  config.bins = o.bins;
  config.miller_madow = o.miller_madow;
  config.duplicates = o.duplicates.empty()
                          ? default_policy
                          : parse_choice<DuplicatePolicy>(o.duplicates, parse_duplicate_policy,
                                                          "--duplicates");
  config.validate();
  return config;
}

ordered_json estimator_json(const EstimatorConfig& e) {
  return {{"kind", to_string(e.kind)},
          {"k", e.k},
          {"bins", e.bins},
          {"miller_madow", e.miller_madow},
          {"duplicates", to_string(e.duplicates)}};
}

struct OutputOptions {
  std::string out;
  std::string format = "csv";
  std::string units = "nats";
};

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--out", o.out, "Output file (default: stdout, no manifest)");
  app->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--units", o.units, "nats | bits")->check(CLI::IsMember({"nats", "bits"}));
}

// Writes <primary>.manifest.json next to the first output.
void write_manifest(const std::string& command, const std::vector<std::string>& args,
                    ordered_json config, std::uint64_t seed, const std::string& started,
                    const std::vector<std::string>& outputs) {
  if (outputs.empty()) return;
  ordered_json m;
  m["command"] = command;
  m["argv"] = args;
  m["config"] = std::move(config);
  m["master_seed"] = seed;
  m["tool_version"] = MIBENCH_VERSION;
  m["started_at"] = started;
  m["finished_at"] = utc_timestamp();
  m["outputs"] = outputs;
  auto file = open_output(outputs.front() + ".manifest.json");
  file << m.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  DistOptions dist;
  EstimatorOptions estimator;
  OutputOptions output;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double q_lo = 0.05;
  double q_hi = 0.95;
  unsigned workers = 1;
  bool full_scale = false;
};

int cmd_sweep(const SweepOptions& o, const CLI::App* app, const std::vector<std::string>& args,
              std::ostream& out) {
  const std::string started = utc_timestamp();
  ExperimentConfig config;
  Units units{};
  try {
    config.spec = make_spec(o.dist, app);
    config.estimator = make_estimator(o.estimator, DuplicatePolicy::keep);
    if (!o.n_grid.empty()) config.n_grid = o.n_grid;
    if (o.replicates != 0) config.replicates = o.replicates;
    config.master_seed = o.seed;
    config.quantiles = {o.q_lo, o.q_hi};
    config.workers = o.workers;
    config.validate();
    units = parse_units(o.output.units);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto largest = *std::max_element(config.n_grid.begin(), config.n_grid.end());
  if (largest > kLargestDeskN && !o.full_scale) {
    throw UsageError("N above " + std::to_string(kLargestDeskN) + " requires --full-scale");
  }

  const ExperimentResult result = run_ci_experiment(config);

  std::ostringstream table;
  if (o.output.format == "json") {
    write_result_json(table, result, units);
  } else {
    write_result_csv(table, result, units);
  }
  if (o.output.out.empty()) {
    out << table.str();
    return kSuccess;
  }
  open_output(o.output.out) << table.str();

  ordered_json echo;
  echo["spec"] = ordered_json::parse(spec_to_json(config.spec));
  echo["estimator"] = estimator_json(config.estimator);
  echo["n_grid"] = config.n_grid;
  ordered_json reps = ordered_json::array();
  for (const auto n : config.n_grid) reps.push_back(config.replicates_for(n));
  echo["replicates"] = reps;
  echo["quantiles"] = {config.quantiles.first, config.quantiles.second};
  echo["workers"] = config.workers;
  echo["units"] = to_string(units);
  echo["format"] = o.output.format;
  ordered_json timing = ordered_json::array();
  for (const auto& cell : result.cells) timing.push_back({{"N", cell.n}, {"wall_seconds", cell.wall_seconds}});
  echo["wall_time"] = timing;
  write_manifest("sweep", args, std::move(echo), config.master_seed, started, {o.output.out});
  out << "wrote " << o.output.out << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// stocks

struct StocksOptions {
  std::string file_a;
  std::string file_b;
  std::string date_col = "Date";
  std::string price_col = "Adj Close";
  EstimatorOptions estimator;
  OutputOptions output;
  std::size_t bootstrap = 50;
  std::uint64_t seed = 0;
  std::string transform_a = "none";
  std::string transform_b = "none";
  std::vector<std::size_t> lengths;
  unsigned workers = 1;
};

std::vector<std::size_t> default_lengths(std::size_t n) {
  std::vector<std::size_t> lengths;
  for (std::size_t decade = 100; decade < n; decade *= 10) {
    for (const std::size_t m : {1, 2, 5}) {
      if (decade * m < n) lengths.push_back(decade * m);
    }
  }
  lengths.push_back(n);
  return lengths;
}

int cmd_stocks(const StocksOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const std::string started = utc_timestamp();
  EstimatorConfig estimator;
  Transform ta{}, tb{};
  Units units{};
  try {
    estimator = make_estimator(o.estimator, DuplicatePolicy::drop);
    ta = parse_choice<Transform>(o.transform_a, parse_transform, "--transform-a");
    tb = parse_choice<Transform>(o.transform_b, parse_transform, "--transform-b");
    units = parse_units(o.output.units);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.bootstrap == 0) throw UsageError("--bootstrap must be at least 1");

  const PriceColumns columns{o.date_col, o.price_col};
  const PriceSeries a = load_price_csv(o.file_a, columns);
  const PriceSeries b = load_price_csv(o.file_b, columns);
  auto returns_a = log_returns(a);
  auto returns_b = log_returns(b);
  for (auto& r : returns_a) r.value = apply_transform(r.value, ta);
  for (auto& r : returns_b) r.value = apply_transform(r.value, tb);
  const Sample sample = align_pairs(returns_a, returns_b);

  std::vector<std::size_t> lengths = o.lengths.empty() ? default_lengths(sample.size()) : o.lengths;
  const auto curve = length_curve(sample, lengths, o.bootstrap, estimator, o.seed, o.workers);

  const double rho = pearson_correlation(sample);
  const double gaussian = analytic_mi_gauss(rho).value;
  out << "series: " << a.symbol << " (" << a.size() << " prices), " << b.symbol << " ("
      << b.size() << " prices)\n"
      << "aligned_pairs: " << sample.size() << '\n'
      << "pearson_rho: " << format_real(rho) << '\n'
      << "gaussian_mi: " << format_real(to_units(gaussian, units)) << ' ' << to_string(units) << '\n'
      << "estimate: " << format_real(to_units(curve.back().estimate, units)) << ' '
      << to_string(units) << " (N=" << curve.back().n << ", bootstrap=" << o.bootstrap << ")\n";

  std::ostringstream table;
  if (o.output.format == "json") {
    ordered_json j;
    j["units"] = to_string(units);
    j["pearson_rho"] = rho;
    j["gaussian_mi"] = to_units(gaussian, units);
    j["curve"] = ordered_json::array();
    for (const auto& p : curve) {
      j["curve"].push_back({{"N", p.n},
                            {"pearson_rho", p.pearson},
                            {"gaussian_mi", to_units(p.gaussian_mi, units)},
                            {"estimate", to_units(p.estimate, units)}});
    }
    table << j.dump(2) << '\n';
  } else {
    table << "N,pearson_rho,gaussian_mi,estimate\n";
    for (const auto& p : curve) {
      table << p.n << ',' << format_real(p.pearson) << ','
            << format_real(to_units(p.gaussian_mi, units)) << ','
            << format_real(to_units(p.estimate, units)) << '\n';
    }
  }
  if (o.output.out.empty()) {
    out << table.str();
    return kSuccess;
  }
  open_output(o.output.out) << table.str();

  ordered_json echo;
  echo["inputs"] = {o.file_a, o.file_b};
  echo["columns"] = {o.date_col, o.price_col};
  echo["transforms"] = {to_string(ta), to_string(tb)};
  echo["estimator"] = estimator_json(estimator);
  echo["bootstrap"] = o.bootstrap;
  echo["lengths"] = lengths;
  echo["workers"] = o.workers;
  echo["units"] = to_string(units);
  echo["format"] = o.output.format;
  write_manifest("stocks", args, std::move(echo), o.seed, started, {o.output.out});
  return kSuccess;
}

// ---------------------------------------------------------------------------
// extrapolate

struct ExtrapolateOptions {
  std::string input;
  std::string append_corrected;
  std::string format = "text";
};

int cmd_extrapolate(const ExtrapolateOptions& o, const std::vector<std::string>& args,
                    std::ostream& out) {
  const std::string started = utc_timestamp();
  const std::string text = read_file(o.input);
  std::istringstream in(text);
  const auto rows = read_n_mean_csv(in);
  const BiasFit fit = bias_extrapolate(rows);

  if (o.format == "json") {
    ordered_json j;
    j["intercept"] = fit.intercept;
    j["slope"] = fit.slope;
    j["rms_residual"] = fit.rms_residual;
    j["points"] = fit.points;
    out << j.dump(2) << '\n';
  } else {
    out << "points: " << fit.points.size() << '\n'
        << "intercept: " << format_real(fit.intercept) << '\n'
        << "slope: " << format_real(fit.slope) << '\n'
        << "rms_residual: " << format_real(fit.rms_residual) << '\n';
  }

  if (!o.append_corrected.empty()) {
    std::istringstream lines(text);
    std::ostringstream table;
    std::string line;
    std::size_t row = 0;
    bool header = true;
    while (std::getline(lines, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (header) {
        table << line << ",mean_bias_corrected\n";
        header = false;
        continue;
      }
      const auto [n, mean] = rows.at(row++);
      table << line << ',' << format_real(mean - fit.slope / static_cast<double>(n)) << '\n';
    }
    open_output(o.append_corrected) << table.str();
    ordered_json echo;
    echo["input"] = o.input;
    echo["format"] = o.format;
    write_manifest("extrapolate", args, std::move(echo), 0, started, {o.append_corrected});
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// simulate / estimate

struct SimulateOptions {
  DistOptions dist;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string as_prices;
};

// Business days starting Monday 2000-01-03.
std::vector<Date> business_days(std::size_t count) {
  std::vector<Date> dates;
  std::chrono::sys_days day = std::chrono::sys_days{Date{std::chrono::year{2000}, std::chrono::January, std::chrono::day{3}}};
  while (dates.size() < count) {
    const std::chrono::weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) dates.emplace_back(day);
    day += std::chrono::days{1};
  }
  return dates;
}

int cmd_simulate(const SimulateOptions& o, const CLI::App* app,
                 const std::vector<std::string>& args, std::ostream& out) {
  const std::string started = utc_timestamp();
  DistributionSpec spec;
  try {
    spec = make_spec(o.dist, app);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.n == 0) throw UsageError("--n must be at least 1");
  const Sample sample = draw_sample(spec, o.n, o.seed);

  ordered_json echo;
  echo["spec"] = ordered_json::parse(spec_to_json(spec));
  echo["n"] = o.n;

  if (!o.as_prices.empty()) {
    // Daily returns of 1% scale compounded from a price of 100. The second
    // series skips every 97th session so alignment has work to do.
    const auto dates = business_days(o.n + 1);
    PriceSeries a{"a", {dates.front()}, {100.0}};
    PriceSeries b{"b", {dates.front()}, {100.0}};
    for (std::size_t i = 0; i < o.n; ++i) {
      a.dates.push_back(dates[i + 1]);
      a.prices.push_back(a.prices.back() * std::exp(0.01 * sample.x[i]));
      const double next_b = b.prices.back() * std::exp(0.01 * sample.y[i]);
      if ((i + 1) % 97 == 0) continue;
      b.dates.push_back(dates[i + 1]);
      b.prices.push_back(next_b);
    }
    const std::string path_a = o.as_prices + "_a.csv";
    const std::string path_b = o.as_prices + "_b.csv";
    {
      auto fa = open_output(path_a);
      write_price_csv(fa, a);
      auto fb = open_output(path_b);
      write_price_csv(fb, b);
    }
    write_manifest("simulate", args, std::move(echo), o.seed, started, {path_a, path_b});
    out << "wrote " << path_a << ", " << path_b << '\n';
    return kSuccess;
  }

  if (o.out.empty()) {
    write_sample_csv(out, sample);
    return kSuccess;
  }
  {
    auto file = open_output(o.out);
    write_sample_csv(file, sample);
  }
  write_manifest("simulate", args, std::move(echo), o.seed, started, {o.out});
  return kSuccess;
}

struct EstimateOptions {
  std::string input;
  EstimatorOptions estimator;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 0;
  std::string units = "nats";
  std::string out;
  unsigned workers = 1;
};

int cmd_estimate(const EstimateOptions& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  const std::string started = utc_timestamp();
  EstimatorConfig estimator;
  Units units{};
  try {
    estimator = make_estimator(o.estimator, o.bootstrap > 0 ? DuplicatePolicy::drop
                                                            : DuplicatePolicy::keep);
    units = parse_units(o.units);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::istringstream in(read_file(o.input));
  const Sample sample = read_sample_csv(in);
  const double mi = o.bootstrap > 0 ? bootstrap_mi(sample, o.bootstrap, estimator, o.seed, o.workers)
                                    : estimate_mi(sample, estimator);
  std::ostringstream report;
  report << "n: " << sample.size() << '\n'
         << "mi: " << format_real(to_units(mi, units)) << ' ' << to_string(units) << '\n';
  if (o.out.empty()) {
    out << report.str();
    return kSuccess;
  }
  open_output(o.out) << report.str();
  ordered_json echo;
  echo["input"] = o.input;
  echo["estimator"] = estimator_json(estimator);
  echo["bootstrap"] = o.bootstrap;
  echo["units"] = o.units;
  write_manifest("estimate", args, std::move(echo), o.seed, started, {o.out});
  return kSuccess;
}

// ---------------------------------------------------------------------------
// rerun

int cmd_rerun(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  const auto manifest = nlohmann::json::parse(read_file(manifest_path));
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    throw std::runtime_error(manifest_path + ": manifest has no argv array");
  }
  const auto argv = manifest["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.front() == "rerun") {
    throw std::runtime_error(manifest_path + ": refusing to rerun a rerun");
  }
  return run(argv, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mibench - mutual information estimator benchmark"};
  app.name("mibench");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MIBENCH_VERSION));

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Replicate-ensemble confidence intervals over an N grid");
  add_dist_options(sweep_cmd, sweep.dist);
  add_estimator_options(sweep_cmd, sweep.estimator);
  add_output_options(sweep_cmd, sweep.output);
  sweep_cmd->add_option("--n-grid", sweep.n_grid, "Comma-separated, strictly increasing sample sizes")
      ->delimiter(',');
  sweep_cmd->add_option("--replicates", sweep.replicates,
                        "Replicates per N (default 1000 / 100 / 10 by N)");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  sweep_cmd->add_option("--q-lo", sweep.q_lo, "Lower quantile");
  sweep_cmd->add_option("--q-hi", sweep.q_hi, "Upper quantile");
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (results do not depend on it)");
  sweep_cmd->add_flag("--full-scale", sweep.full_scale, "Allow N above 1e5");

  StocksOptions stocks;
  auto* stocks_cmd = app.add_subcommand("stocks", "MI between aligned log returns of two price files");
  stocks_cmd->add_option("a", stocks.file_a, "First price CSV")->required();
  stocks_cmd->add_option("b", stocks.file_b, "Second price CSV")->required();
  stocks_cmd->add_option("--date-col", stocks.date_col);
  stocks_cmd->add_option("--price-col", stocks.price_col);
  add_estimator_options(stocks_cmd, stocks.estimator);
  add_output_options(stocks_cmd, stocks.output);
  stocks_cmd->add_option("--bootstrap", stocks.bootstrap, "Pair-bootstrap resamples per length");
  stocks_cmd->add_option("--seed", stocks.seed);
  stocks_cmd->add_option("--transform-a", stocks.transform_a, "Map applied to the first series' returns");
  stocks_cmd->add_option("--transform-b", stocks.transform_b, "Map applied to the second series' returns");
  stocks_cmd->add_option("--lengths", stocks.lengths, "Data-length prefixes to evaluate")->delimiter(',');
  stocks_cmd->add_option("--workers", stocks.workers);

  ExtrapolateOptions extrapolate;
  auto* extrapolate_cmd = app.add_subcommand("extrapolate", "Fit mean MI against 1/N and report the intercept");
  extrapolate_cmd->add_option("input", extrapolate.input, "CSV with N and mean columns")->required();
  extrapolate_cmd->add_option("--append-corrected", extrapolate.append_corrected,
                              "Write the input with a bias-corrected mean column");
  extrapolate_cmd->add_option("--format", extrapolate.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw a seeded bivariate sample");
  add_dist_options(simulate_cmd, simulate.dist);
  simulate_cmd->add_option("--n", simulate.n, "Number of pairs");
  simulate_cmd->add_option("--seed", simulate.seed);
  simulate_cmd->add_option("--out", simulate.out, "Sample CSV (x,y)");
  simulate_cmd->add_option("--as-prices", simulate.as_prices,
                           "Write PREFIX_a.csv and PREFIX_b.csv price series instead");

  EstimateOptions estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate MI of a sample CSV");
  estimate_cmd->add_option("input", estimate.input, "Sample CSV with x,y header")->required();
  add_estimator_options(estimate_cmd, estimate.estimator);
  estimate_cmd->add_option("--bootstrap", estimate.bootstrap, "Average over B pair-bootstrap resamples");
  estimate_cmd->add_option("--seed", estimate.seed);
  estimate_cmd->add_option("--units", estimate.units)->check(CLI::IsMember({"nats", "bits"}));
  estimate_cmd->add_option("--workers", estimate.workers);
  estimate_cmd->add_option("--out", estimate.out, "Write the report here (with a manifest)");

  std::string manifest_path;
  auto* rerun_cmd = app.add_subcommand("rerun", "Re-execute the command recorded in a manifest");
  rerun_cmd->add_option("manifest", manifest_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << MIBENCH_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }

  const CLI::App* active = app.get_subcommands().front();
  try {
    if (active == sweep_cmd) return cmd_sweep(sweep, sweep_cmd, args, out);
    if (active == stocks_cmd) return cmd_stocks(stocks, args, out);
    if (active == extrapolate_cmd) return cmd_extrapolate(extrapolate, args, out);
    if (active == simulate_cmd) return cmd_simulate(simulate, simulate_cmd, args, out);
    if (active == estimate_cmd) return cmd_estimate(estimate, args, out);
    if (active == rerun_cmd) return cmd_rerun(manifest_path, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << active->get_name() << ": " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace mibench::cli
