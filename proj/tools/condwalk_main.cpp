// condwalk: sampling lattice random walks conditioned to avoid a linear
// subspace, with an exact enumeration oracle and statistical diagnostics.
//
// Subcommands: oracle-check, sample, converge, bench, presets.
// Exit codes: 0 success, 1 identity or experiment check failed,
// 2 configuration or precondition error, 3 sampling budget failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "condwalk/experiments.hpp"
#include "condwalk/io.hpp"
#include "condwalk/oracle.hpp"
#include "condwalk/samplers.hpp"
#include "condwalk/scaled_path.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

int default_workers() {
  if (const char* env = std::getenv("CONDWALK_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << content;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

// Options shared by the sampling-driven subcommands. A --config JSON file
// supplies values that explicit flags override; flags override config
// overrides built-in defaults.
struct CommonOpts {
  std::string dist = "srw2d";
  std::string subspace = "origin";
  std::int64_t n = 64;
  std::string mode = "interpolated";
  std::string sampler;
  std::int64_t replicas = 1;
  std::uint64_t seed = 1;
  int workers = default_workers();
  std::int64_t step_budget = 0;
  std::int64_t max_attempts = 0;
  std::string config_file;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_dist = true) {
  if (with_dist) {
    cmd->add_option("--dist", opts.dist,
                    "step distribution: preset, product(a,b), inline JSON, or "
                    "@file");
    cmd->add_option("--subspace", opts.subspace,
                    "forbidden subspace: preset, inline JSON, or @file");
  }
  cmd->add_option("--n", opts.n, "window length n");
  cmd->add_option("--mode", opts.mode, "interpolated | lattice-only");
  cmd->add_option("--replicas", opts.replicas, "number of replicas");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--workers", opts.workers,
                  "worker threads (default: CONDWALK_WORKERS or hardware)");
  cmd->add_option("--step-budget", opts.step_budget,
                  "shift sampler step budget (0 = max(1e7, 1000n))");
  cmd->add_option("--max-attempts", opts.max_attempts,
                  "rejection sampler attempt budget (0 = 1e6)");
  cmd->add_option("--config", opts.config_file,
                  "JSON config file; explicit flags take precedence");
}

void apply_config_file(const CLI::App* cmd, CommonOpts& opts) {
  if (opts.config_file.empty()) return;
  std::ifstream in(opts.config_file);
  if (!in)
    throw std::invalid_argument("cannot open config file '" +
                                opts.config_file + "'");
  const nlohmann::json j = nlohmann::json::parse(in);
  auto load = [&](const char* flag, const char* key, auto& slot) {
    if (!j.contains(key)) return;
    // Keys that have no matching flag on this subcommand are ignored, so one
    // config file can serve several commands.
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (opt == nullptr || opt->count() > 0) return;
    slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  load("--dist", "dist", opts.dist);
  load("--subspace", "subspace", opts.subspace);
  load("--n", "n", opts.n);
  load("--mode", "mode", opts.mode);
  load("--sampler", "sampler", opts.sampler);
  load("--replicas", "replicas", opts.replicas);
  load("--seed", "seed", opts.seed);
  load("--workers", "workers", opts.workers);
  load("--step-budget", "step_budget", opts.step_budget);
  load("--max-attempts", "max_attempts", opts.max_attempts);
}

nlohmann::json config_echo(const CommonOpts& opts, std::string_view sampler) {
  return {{"dist", opts.dist},      {"subspace", opts.subspace},
          {"n", opts.n},            {"mode", opts.mode},
          {"sampler", sampler},     {"replicas", opts.replicas},
          {"seed", opts.seed},      {"workers", opts.workers},
          {"step_budget", opts.step_budget},
          {"max_attempts", opts.max_attempts}};
}

int cmd_oracle_check(const CommonOpts& opts, std::int64_t horizon,
                     const std::string& out_path) {
  if (opts.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (horizon < opts.n)
    throw std::invalid_argument("--horizon must be >= n");
  const condwalk::StepDistribution dist =
      condwalk::resolve_distribution(opts.dist);
  const condwalk::Subspace A =
      condwalk::resolve_subspace(opts.subspace, dist.d());
  const condwalk::AvoidanceMode mode = condwalk::parse_mode(opts.mode);

  const condwalk::LemmaReport report =
      condwalk::verify_lemma(dist, A, opts.n, horizon, mode);
  nlohmann::json j = condwalk::lemma_report_to_json(report);
  j["dist"] = opts.dist;
  j["subspace"] = opts.subspace;
  emit(out_path, j.dump(2) + "\n");
  if (out_path.empty()) std::cout.flush();
  if (!report.pass) {
    std::cerr << "oracle-check: tv distance " << report.tv_distance.str()
              << " != 0\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_sample(const CommonOpts& opts, const std::string& functional_spec,
               const std::string& out_path, const std::string& report_path) {
  if (opts.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (opts.replicas < 1)
    throw std::invalid_argument("--replicas must be >= 1");
  const condwalk::StepDistribution dist =
      condwalk::resolve_distribution(opts.dist);
  const condwalk::Subspace A =
      condwalk::resolve_subspace(opts.subspace, dist.d());
  const condwalk::AvoidanceMode mode = condwalk::parse_mode(opts.mode);
  const condwalk::SamplerKind kind =
      condwalk::parse_sampler(opts.sampler.empty() ? "rejection"
                                                   : opts.sampler);
  const std::int64_t budget =
      kind == condwalk::SamplerKind::Shift
          ? (opts.step_budget > 0 ? opts.step_budget
                                  : condwalk::default_step_budget(opts.n))
          : (opts.max_attempts > 0 ? opts.max_attempts
                                   : condwalk::kDefaultMaxAttempts);

  std::ostringstream csv;
  condwalk::SampleReport report;
  std::vector<condwalk::ReplicaFailure> failures;

  if (!functional_spec.empty()) {
    const condwalk::Functional f = condwalk::parse_functional(functional_spec);
    condwalk::FunctionalBatch batch = condwalk::batch_sample_functional(
        kind, dist, A, opts.n, mode, opts.replicas, opts.seed, opts.workers,
        budget, [&](const condwalk::WalkPath& p) {
          return condwalk::apply_functional(
              f, condwalk::ScaledPath(
                     std::make_shared<const condwalk::WalkPath>(p), opts.n));
        });
    report = batch.report;
    failures = std::move(batch.failures);
    csv << condwalk::functional_name(f) << ";n=" << opts.n
        << ";sampler=" << condwalk::sampler_name(kind)
        << ";mode=" << opts.mode << ";seed=" << opts.seed << "\n";
    for (std::int64_t i = 0; i < opts.replicas; ++i)
      csv << condwalk::format_double(batch.values[i]) << "\n";
  } else {
    condwalk::BatchResult batch =
        condwalk::batch_sample(kind, dist, A, opts.n, mode, opts.replicas,
                               opts.seed, opts.workers, budget);
    report = batch.report;
    failures = std::move(batch.failures);
    csv << "replica,k";
    for (int i = 0; i < dist.d(); ++i) csv << ",x" << i;
    csv << "\n";
    for (std::int64_t r = 0; r < opts.replicas; ++r) {
      const condwalk::WalkPath& p = batch.paths[r];
      if (p.pos.empty()) continue;  // replica failed; listed in the report
      for (std::int64_t k = 0; k <= p.length(); ++k) {
        csv << r << ',' << k;
        for (const auto c : p.at(k)) csv << ',' << c;
        csv << "\n";
      }
    }
  }

  emit(out_path, csv.str());
  nlohmann::json jr = condwalk::sample_report_to_json(report);
  jr["config"] = config_echo(opts, condwalk::sampler_name(kind));
  if (!failures.empty()) {
    nlohmann::json jf = nlohmann::json::array();
    for (const auto& f : failures)
      jf.push_back({{"replica", f.replica},
                    {"budget_used", f.budget_used},
                    {"message", f.message}});
    jr["failures"] = jf;
  }
  if (!report_path.empty())
    write_file(report_path, jr.dump(2) + "\n");
  else if (!out_path.empty())
    std::cout << jr.dump(2) << "\n";

  if (!failures.empty()) {
    std::cerr << "sample: " << failures.size()
              << " replica(s) exhausted their budget\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_converge(const CommonOpts& opts, const std::string& preset,
                 const std::string& out_path, double two_sample_threshold,
                 double rayleigh_threshold, double gaussian_min_d) {
  condwalk::ConvergeConfig config;
  config.preset = preset;
  config.n = opts.n;
  config.replicas = opts.replicas;
  config.seed = opts.seed;
  config.workers = opts.workers;
  if (!opts.sampler.empty())
    config.sampler = condwalk::parse_sampler(opts.sampler);
  if (!opts.mode.empty()) config.mode = condwalk::parse_mode(opts.mode);
  config.step_budget = opts.step_budget;
  config.max_attempts = opts.max_attempts;
  if (two_sample_threshold > 0.0)
    config.two_sample_threshold = two_sample_threshold;
  if (rayleigh_threshold > 0.0) config.rayleigh_threshold = rayleigh_threshold;
  if (gaussian_min_d > 0.0) config.gaussian_min_d = gaussian_min_d;

  const condwalk::ConvergeVerdict verdict = condwalk::run_converge(config);
  emit(out_path, verdict.report.dump(2) + "\n");
  if (verdict.sampling_failures > 0) {
    std::cerr << "converge: " << verdict.sampling_failures
              << " replica(s) exhausted their budget\n";
    return kExitBudget;
  }
  if (!verdict.pass) {
    std::cerr << "converge: " << preset << " checks failed\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_bench(const CommonOpts& opts, const std::string& n_list,
              const std::string& out_path) {
  condwalk::BenchConfig config;
  config.dist_spec = opts.dist;
  config.subspace_spec = opts.subspace;
  config.mode = condwalk::parse_mode(opts.mode);
  config.replicas = opts.replicas;
  config.seed = opts.seed;
  config.workers = opts.workers;
  config.step_budget = opts.step_budget;
  config.max_attempts = opts.max_attempts;
  std::stringstream ss(n_list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) config.ns.push_back(std::stoll(item));
  if (config.ns.empty())
    throw std::invalid_argument("--n-list must name at least one n");
  for (const auto n : config.ns)
    if (n < 1) throw std::invalid_argument("--n-list entries must be >= 1");

  const std::vector<condwalk::BenchRow> rows = condwalk::run_bench(config);
  emit(out_path, condwalk::bench_csv(rows));
  for (const auto& row : rows)
    if (row.status != "ok") {
      std::cerr << "bench: budget exhausted for sampler="
                << condwalk::sampler_name(row.kind) << " n=" << row.n << "\n";
      return kExitBudget;
    }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditioned lattice random walk sampling"};
  app.require_subcommand(1);

  CommonOpts oracle_opts;
  std::int64_t horizon = 8;
  std::string oracle_out;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check",
      "verify the shift-window identity exactly by enumeration");
  oracle_opts.dist = "srw1d";
  oracle_opts.n = 2;
  add_common(oracle, oracle_opts);
  oracle->add_option("--horizon", horizon, "enumeration horizon N (>= n)");
  oracle->add_option("--out", oracle_out, "write the JSON report here");

  CommonOpts sample_opts;
  std::string functional_spec, sample_out, sample_report;
  CLI::App* sample = app.add_subcommand(
      "sample", "draw conditioned walks and write paths or functionals");
  add_common(sample, sample_opts);
  sample->add_option("--sampler", sample_opts.sampler,
                     "rejection | shift (default rejection)");
  sample->add_option("--functional", functional_spec,
                     "endpoint-coordinate:i | endpoint-norm | sup-norm | "
                     "marginal:t:i");
  sample->add_option("--out", sample_out, "CSV output path (default stdout)");
  sample->add_option("--report", sample_report, "JSON report path");

  CommonOpts converge_opts;
  converge_opts.n = 4096;
  converge_opts.replicas = 20000;
  converge_opts.mode.clear();  // empty means "the preset's mode"
  std::string preset, converge_out;
  double two_sample_threshold = 0.0, rayleigh_threshold = 0.0,
         gaussian_min_d = 0.0;
  CLI::App* converge = app.add_subcommand(
      "converge", "run a limit-theorem experiment preset");
  converge->add_option("--preset", preset,
                       "meander2d | meander2d-lattice | belkin1d | collide2d")
      ->required();
  add_common(converge, converge_opts, /*with_dist=*/false);
  converge->add_option("--sampler", converge_opts.sampler,
                       "override the preset's sampler");
  converge->add_option("--two-sample-threshold", two_sample_threshold,
                       "override the two-sample KS pass threshold");
  converge->add_option("--rayleigh-threshold", rayleigh_threshold,
                       "override the Rayleigh-fit threshold (default 0.02)");
  converge->add_option("--gaussian-min-d", gaussian_min_d,
                       "override the Gaussian-rejection minimum D "
                       "(default 0.10)");
  converge->add_option("--out", converge_out, "JSON verdict path");

  CommonOpts bench_opts;
  bench_opts.replicas = 1000;
  std::string n_list = "64,256,1024,4096", bench_out;
  CLI::App* bench = app.add_subcommand(
      "bench", "compare sampler cost across window lengths");
  add_common(bench, bench_opts);
  bench->add_option("--n-list", n_list, "comma-separated window lengths");
  bench->add_option("--out", bench_out, "CSV output path (default stdout)");

  CLI::App* presets =
      app.add_subcommand("presets", "list built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (oracle->parsed()) {
      apply_config_file(oracle, oracle_opts);
      return cmd_oracle_check(oracle_opts, horizon, oracle_out);
    }
    if (sample->parsed()) {
      apply_config_file(sample, sample_opts);
      return cmd_sample(sample_opts, functional_spec, sample_out,
                        sample_report);
    }
    if (converge->parsed()) {
      apply_config_file(converge, converge_opts);
      return cmd_converge(converge_opts, preset, converge_out,
                          two_sample_threshold, rayleigh_threshold,
                          gaussian_min_d);
    }
    if (bench->parsed()) {
      apply_config_file(bench, bench_opts);
      return cmd_bench(bench_opts, n_list, bench_out);
    }
    if (presets->parsed()) {
      std::cout << condwalk::preset_listing();
      return kExitOk;
    }
  } catch (const condwalk::SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const condwalk::BudgetExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
