#include "condwalk/experiments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "condwalk/io.hpp"
#include "condwalk/stats.hpp"

namespace condwalk {

namespace {

struct PresetSetup {
  StepDistribution dist;
  Subspace subspace;
  AvoidanceMode mode;
  SamplerKind default_sampler;
  bool two_sample;  // compare against an unconditioned batch
  bool covariance_check;
};

PresetSetup make_setup(const std::string& preset) {
  if (preset == "meander2d")
    return {step_distribution_srw2d(), subspace_origin(2),
            AvoidanceMode::Interpolated, SamplerKind::Rejection, true, false};
  if (preset == "meander2d-lattice")
    return {step_distribution_srw2d(), subspace_origin(2),
            AvoidanceMode::LatticeOnly, SamplerKind::Rejection, true, false};
  if (preset == "belkin1d")
    // The shift sampler is the cheap route here: zero-visits are dense in
    // d=1, so the shift time stays O(n) while plain rejection pays 1/q_n
    // full-length attempts.
    return {step_distribution_srw1d(), subspace_origin(1),
            AvoidanceMode::Interpolated, SamplerKind::Shift, false, false};
  if (preset == "collide2d")
    return {step_distribution_product(step_distribution_srw2d(),
                                      step_distribution_srw2d()),
            subspace_collision2d(), AvoidanceMode::Interpolated,
            SamplerKind::Rejection, true, true};
  throw std::invalid_argument("unknown converge preset '" + preset + "'");
}

nlohmann::json ks_to_json(const KsResult& ks) {
  return {{"d", ks.statistic},
          {"p_value", ks.p_value},
          {"n1", ks.n1},
          {"n2", ks.n2}};
}

}  // namespace

ConvergeVerdict run_converge(const ConvergeConfig& config) {
  if (config.n < 1 || config.replicas < 1)
    throw std::invalid_argument("converge: n and replicas must be >= 1");
  PresetSetup setup = make_setup(config.preset);
  setup.mode = config.mode.value_or(setup.mode);
  const SamplerKind sampler = config.sampler.value_or(setup.default_sampler);
  const std::int64_t budget =
      sampler == SamplerKind::Shift
          ? (config.step_budget > 0 ? config.step_budget
                                    : default_step_budget(config.n))
          : (config.max_attempts > 0 ? config.max_attempts
                                     : kDefaultMaxAttempts);

  const int d = setup.dist.d();
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.n));
  auto endpoint_fill = [d, n = config.n, scale](const WalkPath& p,
                                                double* out) {
    const auto end = p.at(n);
    for (int i = 0; i < d; ++i) out[i] = static_cast<double>(end[i]) * scale;
  };

  RowBatch conditioned = batch_sample_rows(
      sampler, setup.dist, setup.subspace, config.n, setup.mode,
      config.replicas, config.seed, config.workers, budget, d, endpoint_fill);

  ConvergeVerdict verdict;
  verdict.sampling_failures =
      static_cast<std::int64_t>(conditioned.failures.size());

  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json stats;
  bool pass = true;

  if (verdict.sampling_failures > 0) {
    pass = false;
  } else if (setup.two_sample) {
    std::vector<double> cond_x(static_cast<std::size_t>(config.replicas));
    for (std::int64_t i = 0; i < config.replicas; ++i)
      cond_x[i] = conditioned.values[static_cast<std::size_t>(i) * d];
    // Unconditioned comparison batch on disjoint stream ids.
    std::vector<double> uncond_x = batch_unconditioned_functional(
        setup.dist, config.n, config.replicas, config.seed,
        static_cast<std::uint64_t>(config.replicas), config.workers,
        [scale](const WalkPath& p) {
          return static_cast<double>(p.at(p.length())[0]) * scale;
        });
    const KsResult ks = ks_two_sample(cond_x, uncond_x);
    const double threshold =
        config.two_sample_threshold > 0.0
            ? config.two_sample_threshold
            : 1.63 * std::sqrt(static_cast<double>(ks.n1 + ks.n2) /
                               (static_cast<double>(ks.n1) *
                                static_cast<double>(ks.n2)));
    const bool ok = ks.statistic <= threshold;
    pass = pass && ok;
    stats["ks_two_sample"] = ks_to_json(ks);
    checks.push_back({{"name", "two_sample_ks"},
                      {"value", ks.statistic},
                      {"threshold", threshold},
                      {"pass", ok}});

    if (setup.covariance_check) {
      const std::vector<double> cov = empirical_covariance(
          std::span<const double>(conditioned.values), d);
      nlohmann::json cov_json = nlohmann::json::array();
      bool cov_ok = true;
      for (int i = 0; i < d; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < d; ++j) {
          const double c = cov[static_cast<std::size_t>(i) * d + j];
          row.push_back(c);
          if (i == j)
            cov_ok = cov_ok && std::abs(c - 0.5) <= config.cov_rel_tol * 0.5;
          else
            cov_ok = cov_ok && std::abs(c) <= config.cov_abs_off;
        }
        cov_json.push_back(row);
      }
      pass = pass && cov_ok;
      stats["endpoint_covariance"] = cov_json;
      checks.push_back({{"name", "endpoint_covariance"},
                        {"target_diagonal", 0.5},
                        {"rel_tol", config.cov_rel_tol},
                        {"abs_off_diagonal", config.cov_abs_off},
                        {"pass", cov_ok}});
    }
  } else {
    // belkin1d: endpoint law should match the two-sided Rayleigh and stay far
    // from the Gaussian with the same scale.
    std::vector<double> cond_x(static_cast<std::size_t>(config.replicas));
    for (std::int64_t i = 0; i < config.replicas; ++i)
      cond_x[i] = conditioned.values[static_cast<std::size_t>(i) * d];
    const KsResult rayleigh = ks_one_sample(
        cond_x, {ReferenceCdf::Kind::TwoSidedRayleigh, 1.0});
    const KsResult gauss =
        ks_one_sample(cond_x, {ReferenceCdf::Kind::Gaussian, 1.0});
    const bool rayleigh_ok = rayleigh.statistic <= config.rayleigh_threshold;
    const bool gauss_ok = gauss.statistic >= config.gaussian_min_d;
    pass = pass && rayleigh_ok && gauss_ok;
    stats["ks_two_sided_rayleigh"] = ks_to_json(rayleigh);
    stats["ks_gaussian"] = ks_to_json(gauss);
    checks.push_back({{"name", "two_sided_rayleigh_fit"},
                      {"value", rayleigh.statistic},
                      {"threshold", config.rayleigh_threshold},
                      {"pass", rayleigh_ok}});
    checks.push_back({{"name", "gaussian_rejected"},
                      {"value", gauss.statistic},
                      {"min_d", config.gaussian_min_d},
                      {"pass", gauss_ok}});
  }

  verdict.pass = pass;
  verdict.report = {{"preset", config.preset},
                    {"n", config.n},
                    {"replicas", config.replicas},
                    {"seed", config.seed},
                    {"mode", mode_name(setup.mode)},
                    {"sampler", sampler_name(sampler)},
                    {"functional", "endpoint-coordinate:0"},
                    {"rng", RngStream::identity()},
                    {"sampling_failures", verdict.sampling_failures},
                    {"statistics", stats},
                    {"checks", checks},
                    {"pass", pass}};
  return verdict;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  const StepDistribution dist = resolve_distribution(config.dist_spec);
  const Subspace A = resolve_subspace(config.subspace_spec, dist.d());
  std::vector<BenchRow> rows;
  for (const SamplerKind kind : {SamplerKind::Rejection, SamplerKind::Shift}) {
    for (const std::int64_t n : config.ns) {
      const std::int64_t budget =
          kind == SamplerKind::Shift
              ? (config.step_budget > 0 ? config.step_budget
                                        : default_step_budget(n))
              : (config.max_attempts > 0 ? config.max_attempts
                                         : kDefaultMaxAttempts);
      RowBatch batch = batch_sample_rows(
          kind, dist, A, n, config.mode, config.replicas, config.seed,
          config.workers, budget, 1,
          [](const WalkPath&, double* out) { *out = 0.0; });
      BenchRow row;
      row.kind = kind;
      row.n = n;
      row.replicas = config.replicas;
      row.completed = batch.report.completed;
      if (batch.report.completed > 0)
        row.steps_per_sample =
            static_cast<double>(batch.report.steps) /
            static_cast<double>(batch.report.completed);
      row.acceptance_rate = batch.report.acceptance_rate;
      row.mean_shift_time = batch.report.mean_shift_time;
      row.max_shift_time = batch.report.max_shift_time;
      row.wall_time_s = batch.report.wall_time_s;
      row.status = batch.failures.empty() ? "ok" : "budget-exhausted";
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "sampler,n,replicas,completed,steps_per_sample,acceptance_rate,"
         "mean_shift_time,max_shift_time,wall_time_s,status\n";
  for (const auto& row : rows) {
    out << sampler_name(row.kind) << ',' << row.n << ',' << row.replicas << ','
        << row.completed << ',' << format_double(row.steps_per_sample) << ',';
    if (row.kind == SamplerKind::Rejection)
      out << format_double(row.acceptance_rate);
    out << ',';
    if (row.kind == SamplerKind::Shift)
      out << format_double(row.mean_shift_time);
    out << ',';
    if (row.kind == SamplerKind::Shift) out << row.max_shift_time;
    out << ',' << format_double(row.wall_time_s) << ',' << row.status << '\n';
  }
  return out.str();
}

}  // namespace condwalk
