#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "condwalk/samplers.hpp"
#include "condwalk/subspace.hpp"

namespace condwalk {

// Limit-theorem experiments packaged as named presets:
//   meander2d          srw2d vs origin, interpolated; two-sample KS of the
//                      conditioned vs unconditioned endpoint first coordinate
//   meander2d-lattice  same with lattice-only avoidance
//   belkin1d           srw1d vs origin; one-sample KS of conditioned endpoints
//                      against the two-sided Rayleigh law (expected to fit)
//                      and the Gaussian (expected not to)
//   collide2d          product(srw2d, srw2d) vs the collision subspace;
//                      two-sample KS on the first walker's endpoint
//                      coordinate plus an endpoint covariance check
struct ConvergeConfig {
  std::string preset;
  std::int64_t n = 4096;
  std::int64_t replicas = 20000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::optional<SamplerKind> sampler;  // preset default when unset
  std::optional<AvoidanceMode> mode;   // preset default when unset
  std::int64_t step_budget = 0;        // 0 -> default_step_budget(n)
  std::int64_t max_attempts = 0;       // 0 -> 1,000,000

  // Verdict thresholds; zero means "derive the default". The two-sample
  // default is the 1% asymptotic critical value 1.63*sqrt((n1+n2)/(n1*n2)).
  double two_sample_threshold = 0.0;
  double rayleigh_threshold = 0.02;
  double gaussian_min_d = 0.10;
  double cov_rel_tol = 0.10;
  double cov_abs_off = 0.05;
};

struct ConvergeVerdict {
  nlohmann::json report;
  bool pass = false;
  std::int64_t sampling_failures = 0;
};

ConvergeVerdict run_converge(const ConvergeConfig& config);

struct BenchConfig {
  std::string dist_spec = "srw2d";
  std::string subspace_spec = "origin";
  std::vector<std::int64_t> ns;
  AvoidanceMode mode = AvoidanceMode::Interpolated;
  std::int64_t replicas = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::int64_t step_budget = 0;   // 0 -> default_step_budget(n)
  std::int64_t max_attempts = 0;  // 0 -> 1,000,000
};

struct BenchRow {
  SamplerKind kind;
  std::int64_t n = 0;
  std::int64_t replicas = 0;
  std::int64_t completed = 0;
  double steps_per_sample = 0.0;  // over completed samples
  double acceptance_rate = 0.0;   // rejection only
  double mean_shift_time = 0.0;   // shift only
  std::int64_t max_shift_time = 0;
  double wall_time_s = 0.0;
  std::string status;  // "ok" or "budget-exhausted"
};

// One row per (sampler, n); budget exhaustion marks the row and the run
// continues. No winner is asserted, the table is the deliverable.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows);

inline constexpr std::int64_t kDefaultMaxAttempts = 1'000'000;

}  // namespace condwalk
