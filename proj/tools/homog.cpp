// Command line front end: classify, sweep, selftest.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "homog/config.hpp"
#include "homog/error.hpp"
#include "homog/experiments.hpp"
#include "homog/regime.hpp"
#include "selftest.hpp"

#ifndef HOMOG_VERSION
#define HOMOG_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRegime = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("homog");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("HOMOG_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to "off"
    if (level != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(level);
    } else {
      spdlog::warn("HOMOG_LOG='{}' not recognized, using 'warn'", env);
    }
  }
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string compact_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

// JSON has no NaN; non-finite values are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct SweepArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string eps;
  std::string regime;
  bool timing = false;
};

void apply_overrides(homog::SweepConfig& config, const SweepArgs& args) {
  if (args.seed) config.seed = *args.seed;
  config.threads = args.threads;
  if (args.timing) config.timing = true;
  try {
    if (!args.eps.empty()) config.eps_list = homog::parse_number_list(args.eps);
    if (!args.regime.empty()) {
      const auto ab = homog::parse_number_list(args.regime);
      if (ab.size() != 2) throw std::invalid_argument("expected 'alpha,beta'");
      config.alpha = ab[0];
      config.beta = ab[1];
    }
  } catch (const std::invalid_argument& e) {
    throw homog::ConfigError(std::string("command line override: ") + e.what());
  }
  config.validate();
}

json manifest_entry(const homog::SweepResult& result, const SweepArgs& args,
                    const std::string& csv_path, std::chrono::system_clock::time_point start,
                    std::chrono::system_clock::time_point end) {
  const auto& c = result.config;
  json config = json::object();
  for (const auto& [key, value] : homog::config_entries(c)) config[key] = value;

  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"eps", row.eps},
                    {"mean_u_plain", number_or_null(row.mean_u_plain)},
                    {"n_over_cap", row.n_over_cap},
                    {"mse_one_sided", number_or_null(row.mse_one_sided)},
                    {"mse_two_sided", number_or_null(row.mse_two_sided)}});
  }

  json entry;
  entry["run_id"] = c.name + "-" + std::to_string(c.seed) + "-" + compact_timestamp(start);
  entry["version"] = HOMOG_VERSION;
  entry["seed"] = c.seed;
  entry["threads"] = c.threads;
  entry["config_file"] = args.config_path;
  entry["config"] = config;
  entry["regime"] = {{"alpha", result.regime.alpha},
                     {"beta", result.regime.beta},
                     {"gamma", result.regime.gamma},
                     {"tag", homog::to_string(result.regime.tag)}};
  entry["started_at"] = utc_timestamp(start);
  entry["finished_at"] = utc_timestamp(end);
  entry["outputs"] = json::array({csv_path});
  if (result.regime.deterministic_limit()) {
    entry["sigma_one_sided"] = result.sigma_one_sided;
    entry["sigma_two_sided"] = result.sigma_two_sided;
    entry["target_one_sided"] = result.target_one_sided;
    entry["target_two_sided"] = result.target_two_sided;
  }
  entry["rows"] = rows;
  return entry;
}

int cmd_classify(double alpha, double beta) {
  try {
    const homog::ScalingRegime r = homog::classify(alpha, beta);
    std::cout << "gamma=" << homog::format_number(r.gamma) << " regime=" << homog::to_string(r.tag)
              << '\n';
  } catch (const std::invalid_argument& e) {
    std::cout << "error: " << e.what() << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const SweepArgs& args) {
  homog::SweepConfig config;
  try {
    config = homog::load_sweep_config(args.config_path);
    apply_overrides(config, args);
  } catch (const homog::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  const homog::ScalingRegime regime = homog::classify(config.alpha, config.beta);
  try {
    homog::require_supported(regime);
  } catch (const homog::WrongRegime& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRegime;
  }

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec || !fs::is_directory(args.out_dir)) {
    std::cerr << "error: cannot create output directory '" << args.out_dir << "'\n";
    return kExitError;
  }
  const fs::path csv_path = fs::path(args.out_dir) / (config.name + ".csv");
  const fs::path manifest_path = fs::path(args.out_dir) / (config.name + ".manifest.jsonl");

  spdlog::info("sweep '{}' regime {} gamma {} eps count {} threads {}", config.name,
               homog::to_string(regime.tag), regime.gamma, config.eps_list.size(), config.threads);
  const auto start = std::chrono::system_clock::now();
  homog::SweepResult result;
  try {
    result = homog::run_sweep(config);
  } catch (const homog::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  const auto end = std::chrono::system_clock::now();
  for (const auto& row : result.rows) {
    spdlog::info("eps {} mean_u {} var_u {} ks {}", row.eps, row.mean_u, row.var_u,
                 row.ks_distance);
  }

  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      std::cerr << "error: cannot write '" << csv_path.string() << "'\n";
      return kExitError;
    }
    homog::write_csv(result, csv);
  }
  {
    std::ofstream manifest(manifest_path, std::ios::binary | std::ios::app);
    if (!manifest) {
      std::cerr << "error: cannot write '" << manifest_path.string() << "'\n";
      return kExitError;
    }
    manifest << manifest_entry(result, args, csv_path.string(), start, end).dump() << '\n';
  }
  spdlog::info("wrote {} and {}", csv_path.string(), manifest_path.string());
  std::cout << csv_path.string() << '\n';
  return kExitOk;
}

int cmd_selftest() {
  const auto results = homog::tools::run_selftest();
  return homog::tools::print_selftest(results, std::cout) ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Monte Carlo homogenization of parabolic equations with random potentials"};
  app.set_version_flag("--version", HOMOG_VERSION);
  app.require_subcommand(1);

  double alpha = 0.0;
  double beta = 0.0;
  auto* classify = app.add_subcommand("classify", "print gamma and the regime tag");
  classify->add_option("--alpha", alpha, "time scaling exponent")->required();
  classify->add_option("--beta", beta, "space scaling exponent")->required();

  SweepArgs sweep_args;
  std::uint64_t seed = 0;
  auto* sweep = app.add_subcommand("sweep", "run an eps ladder, write CSV and manifest");
  sweep->add_option("--config", sweep_args.config_path, "key = value config file")->required();
  sweep->add_option("--out", sweep_args.out_dir, "output directory")->required();
  auto* seed_opt = sweep->add_option("--seed", seed, "master seed (overrides the config)");
  sweep->add_option("--threads", sweep_args.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--eps", sweep_args.eps, "comma-separated eps list (overrides the config)");
  sweep->add_option("--regime", sweep_args.regime, "alpha,beta (overrides the config)");
  sweep->add_flag("--timing", sweep_args.timing, "fill the runtime_s column");

  auto* selftest = app.add_subcommand("selftest", "run the built-in known-answer checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*classify) return cmd_classify(alpha, beta);
  if (*sweep) {
    if (*seed_opt) sweep_args.seed = seed;
    return cmd_sweep(sweep_args);
  }
  if (*selftest) return cmd_selftest();
  return kExitError;
}
