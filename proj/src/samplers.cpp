#include "condwalk/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace condwalk {

RejectionDraw rejection_sample(const StepDistribution& dist, const Subspace& A,
                               std::int64_t n, AvoidanceMode mode,
                               RngStream& rng, std::int64_t max_attempts) {
  if (n < 1) throw std::invalid_argument("rejection_sample: n must be >= 1");
  if (max_attempts < 1)
    throw std::invalid_argument("rejection_sample: max_attempts must be >= 1");
  for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    WalkPath path = sample_walk(dist, n, rng);
    if (window_avoids(A, path, 0, n, mode)) return {std::move(path), attempt};
  }
  throw BudgetExhaustedError(
      SamplerKind::Rejection, max_attempts, -1,
      "rejection_sample: no accepted walk in " + std::to_string(max_attempts) +
          " attempts");
}

std::int64_t default_step_budget(std::int64_t n) {
  return std::max<std::int64_t>(10'000'000, 1000 * n);
}

ShiftDraw shift_sample(const StepDistribution& dist, const Subspace& A,
                       std::int64_t n, AvoidanceMode mode, RngStream& rng,
                       std::int64_t step_budget) {
  if (n < 1) throw std::invalid_argument("shift_sample: n must be >= 1");
  if (step_budget < n)
    throw std::invalid_argument("shift_sample: step_budget must be >= n");

  const int d = dist.d();
  // Positions for times [base, t], flat; trimmed to the active candidate.
  std::vector<std::int64_t> buf(static_cast<std::size_t>(d), 0);
  std::int64_t base = 0;
  std::vector<std::int64_t> next(static_cast<std::size_t>(d));

  ShiftScanner scanner(A, n, mode,
                       std::span<const std::int64_t>(buf.data(), d));
  for (std::int64_t t = 1; t <= step_budget; ++t) {
    const auto v = dist.step(dist.sample_index(rng));
    const std::size_t last = buf.size() - d;
    for (int i = 0; i < d; ++i) next[i] = buf[last + i] + v[i];

    const auto prev_span =
        std::span<const std::int64_t>(buf.data() + last, d);
    const auto found = scanner.advance(prev_span, next);
    buf.insert(buf.end(), next.begin(), next.end());

    if (found) {
      const std::int64_t k = *found;
      WalkPath z;
      z.d = d;
      z.pos.reserve(static_cast<std::size_t>(n + 1) * d);
      const std::size_t origin = static_cast<std::size_t>(k - base) * d;
      for (std::int64_t j = 0; j <= n; ++j)
        for (int i = 0; i < d; ++i)
          z.pos.push_back(buf[origin + static_cast<std::size_t>(j) * d + i] -
                          buf[origin + i]);
      return {std::move(z), k, t};
    }

    // Nothing before the active candidate (or the current time) can matter.
    const std::int64_t keep_from = scanner.pending() ? scanner.candidate() : t;
    if (keep_from - base > 4096) {
      buf.erase(buf.begin(),
                buf.begin() + static_cast<std::size_t>(keep_from - base) * d);
      base = keep_from;
    }
  }
  throw BudgetExhaustedError(
      SamplerKind::Shift, step_budget,
      scanner.pending() ? scanner.candidate() : -1,
      "shift_sample: no shift time confirmed within " +
          std::to_string(step_budget) + " steps");
}

namespace {

// Preconditions are rejected before any worker threads start; inside a
// replica only budget exhaustion is a recoverable outcome.
void validate_batch(SamplerKind kind, std::int64_t n, std::int64_t budget) {
  if (n < 1) throw std::invalid_argument("batch_sample: n must be >= 1");
  if (kind == SamplerKind::Shift && budget < n)
    throw std::invalid_argument("batch_sample: step budget must be >= n");
  if (kind == SamplerKind::Rejection && budget < 1)
    throw std::invalid_argument("batch_sample: attempt budget must be >= 1");
}

struct ReplicaStats {
  bool ok = false;
  std::int64_t attempts = 0;  // rejection
  std::int64_t steps = 0;
  std::int64_t shift_time = 0;
  std::int64_t budget_used = 0;
  std::string error;
};

// Runs `replicas` independent replicas across `workers` threads; `run` fills
// the replica's output slot and returns its stats. Aggregation happens on the
// calling thread in replica order, so reports are scheduling-independent.
template <typename Run>
SampleReport run_batch(SamplerKind kind, std::int64_t replicas, int workers,
                       std::uint64_t seed, std::vector<ReplicaStats>& stats,
                       Run&& run) {
  if (replicas < 1)
    throw std::invalid_argument("batch_sample: replicas must be >= 1");
  if (workers < 1)
    throw std::invalid_argument("batch_sample: workers must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  stats.assign(static_cast<std::size_t>(replicas), {});

  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(workers, replicas));
  if (nthreads == 1) {
    for (std::int64_t i = 0; i < replicas; ++i) stats[i] = run(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w)
      pool.emplace_back([&, w] {
        for (std::int64_t i = w; i < replicas; i += nthreads)
          stats[i] = run(i);
      });
    for (auto& th : pool) th.join();
  }

  SampleReport report;
  report.kind = kind;
  report.replicas = replicas;
  report.seed = seed;
  report.rng_identity = RngStream::identity();
  std::int64_t shift_sum = 0;
  for (const auto& s : stats) {
    report.steps += s.steps;
    report.attempts += s.attempts;
    if (s.ok) {
      ++report.completed;
      shift_sum += s.shift_time;
      report.max_shift_time = std::max(report.max_shift_time, s.shift_time);
    }
  }
  if (kind == SamplerKind::Rejection && report.attempts > 0)
    report.acceptance_rate =
        static_cast<double>(report.completed) /
        static_cast<double>(report.attempts);
  if (kind == SamplerKind::Shift && report.completed > 0)
    report.mean_shift_time =
        static_cast<double>(shift_sum) / static_cast<double>(report.completed);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::vector<ReplicaFailure> collect_failures(
    const std::vector<ReplicaStats>& stats) {
  std::vector<ReplicaFailure> failures;
  for (std::size_t i = 0; i < stats.size(); ++i)
    if (!stats[i].ok)
      failures.push_back({static_cast<std::int64_t>(i), stats[i].budget_used,
                          stats[i].error});
  return failures;
}

template <typename Sink>
ReplicaStats run_one(SamplerKind kind, const StepDistribution& dist,
                     const Subspace& A, std::int64_t n, AvoidanceMode mode,
                     std::uint64_t seed, std::int64_t replica,
                     std::int64_t budget, Sink&& sink) {
  RngStream rng(seed, static_cast<std::uint64_t>(replica));
  ReplicaStats s;
  try {
    if (kind == SamplerKind::Rejection) {
      RejectionDraw draw = rejection_sample(dist, A, n, mode, rng, budget);
      s.attempts = draw.attempts;
      s.steps = draw.attempts * n;
      s.ok = true;
      sink(std::move(draw.path));
    } else {
      ShiftDraw draw = shift_sample(dist, A, n, mode, rng, budget);
      s.steps = draw.steps;
      s.shift_time = draw.shift_time;
      s.ok = true;
      sink(std::move(draw.path));
    }
  } catch (const BudgetExhaustedError& e) {
    s.budget_used = e.budget_used;
    s.steps = kind == SamplerKind::Rejection ? e.budget_used * n
                                             : e.budget_used;
    s.attempts = kind == SamplerKind::Rejection ? e.budget_used : 0;
    s.error = e.what();
  }
  return s;
}

}  // namespace

BatchResult batch_sample(SamplerKind kind, const StepDistribution& dist,
                         const Subspace& A, std::int64_t n, AvoidanceMode mode,
                         std::int64_t replicas, std::uint64_t seed,
                         int workers, std::int64_t budget) {
  validate_batch(kind, n, budget);
  BatchResult result;
  result.paths.assign(static_cast<std::size_t>(replicas), WalkPath{});
  std::vector<ReplicaStats> stats;
  result.report = run_batch(
      kind, replicas, workers, seed, stats, [&](std::int64_t i) {
        return run_one(kind, dist, A, n, mode, seed, i, budget,
                       [&](WalkPath&& p) { result.paths[i] = std::move(p); });
      });
  result.failures = collect_failures(stats);
  return result;
}

FunctionalBatch batch_sample_functional(
    SamplerKind kind, const StepDistribution& dist, const Subspace& A,
    std::int64_t n, AvoidanceMode mode, std::int64_t replicas,
    std::uint64_t seed, int workers, std::int64_t budget,
    const std::function<double(const WalkPath&)>& f) {
  validate_batch(kind, n, budget);
  FunctionalBatch result;
  result.values.assign(static_cast<std::size_t>(replicas),
                       std::numeric_limits<double>::quiet_NaN());
  std::vector<ReplicaStats> stats;
  result.report = run_batch(
      kind, replicas, workers, seed, stats, [&](std::int64_t i) {
        return run_one(kind, dist, A, n, mode, seed, i, budget,
                       [&](WalkPath&& p) { result.values[i] = f(p); });
      });
  result.failures = collect_failures(stats);
  return result;
}

RowBatch batch_sample_rows(
    SamplerKind kind, const StepDistribution& dist, const Subspace& A,
    std::int64_t n, AvoidanceMode mode, std::int64_t replicas,
    std::uint64_t seed, int workers, std::int64_t budget, int stride,
    const std::function<void(const WalkPath&, double*)>& fill) {
  validate_batch(kind, n, budget);
  if (stride < 1)
    throw std::invalid_argument("batch_sample_rows: stride must be >= 1");
  RowBatch result;
  result.stride = stride;
  result.values.assign(static_cast<std::size_t>(replicas) * stride,
                       std::numeric_limits<double>::quiet_NaN());
  std::vector<ReplicaStats> stats;
  result.report = run_batch(
      kind, replicas, workers, seed, stats, [&](std::int64_t i) {
        return run_one(kind, dist, A, n, mode, seed, i, budget,
                       [&](WalkPath&& p) {
                         fill(p, result.values.data() +
                                     static_cast<std::size_t>(i) * stride);
                       });
      });
  result.failures = collect_failures(stats);
  return result;
}

std::vector<double> batch_unconditioned_functional(
    const StepDistribution& dist, std::int64_t n, std::int64_t replicas,
    std::uint64_t seed, std::uint64_t stream_offset, int workers,
    const std::function<double(const WalkPath&)>& f) {
  if (replicas < 1)
    throw std::invalid_argument("batch: replicas must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(replicas));
  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), replicas));
  auto work = [&](int w) {
    for (std::int64_t i = w; i < replicas; i += nthreads) {
      RngStream rng(seed, stream_offset + static_cast<std::uint64_t>(i));
      values[i] = f(sample_walk(dist, n, rng));
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  return values;
}

}  // namespace condwalk
