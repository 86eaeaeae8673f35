#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "condwalk/shift_scan.hpp"
#include "condwalk/walk.hpp"

namespace condwalk {

enum class SamplerKind { Rejection, Shift };

// Raised when a sampler runs out of budget. For rejection this means
// max_attempts rejected walks; for the shift sampler it means the walk reached
// step_budget steps without a confirmed shift time (the event has probability
// one, so this signals an undersized budget or a heavy-tailed configuration).
class BudgetExhaustedError : public std::runtime_error {
public:
  BudgetExhaustedError(SamplerKind kind, std::int64_t budget_used,
                       std::int64_t last_candidate, const std::string& what)
      : std::runtime_error(what),
        kind(kind),
        budget_used(budget_used),
        last_candidate(last_candidate) {}

  SamplerKind kind;
  std::int64_t budget_used;    // attempts (rejection) or steps (shift)
  std::int64_t last_candidate; // longest surviving candidate time, -1 if none
};

struct RejectionDraw {
  WalkPath path;
  std::int64_t attempts = 0;
};

// Direct conditioning: freshly sample n-step walks until one avoids A on
// (0, n]. Each attempt consumes exactly n draws from the stream.
RejectionDraw rejection_sample(const StepDistribution& dist, const Subspace& A,
                               std::int64_t n, AvoidanceMode mode,
                               RngStream& rng, std::int64_t max_attempts);

struct ShiftDraw {
  WalkPath path;              // Z_k = S_{T_n + k} - S_{T_n}, length n
  std::int64_t shift_time = 0;
  std::int64_t steps = 0;     // total walk steps consumed (= T_n + n)
};

// Rejection-free sampler via the shift time: grow one walk, feed the
// incremental scan, and translate the confirmed window back to the origin.
// Only the window behind the active candidate is buffered, so memory stays
// O(n) regardless of how long the scan runs.
ShiftDraw shift_sample(const StepDistribution& dist, const Subspace& A,
                       std::int64_t n, AvoidanceMode mode, RngStream& rng,
                       std::int64_t step_budget);

std::int64_t default_step_budget(std::int64_t n);

struct SampleReport {
  SamplerKind kind = SamplerKind::Rejection;
  std::int64_t replicas = 0;
  std::int64_t completed = 0;
  std::int64_t attempts = 0;        // rejection: total attempts
  std::int64_t steps = 0;           // total walk steps consumed
  double acceptance_rate = 0.0;     // rejection: completed / attempts
  double mean_shift_time = 0.0;     // shift: mean T_n over completed replicas
  std::int64_t max_shift_time = 0;  // shift: max T_n over completed replicas
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string rng_identity;
};

struct ReplicaFailure {
  std::int64_t replica;
  std::int64_t budget_used;
  std::string message;
};

struct BatchResult {
  std::vector<WalkPath> paths;  // ordered by replica index; empty on failure
  SampleReport report;
  std::vector<ReplicaFailure> failures;
};

// Replica i draws from stream id i of the given seed, so results are
// independent of worker count and scheduling. budget is max_attempts for the
// rejection sampler and step_budget for the shift sampler.
BatchResult batch_sample(SamplerKind kind, const StepDistribution& dist,
                         const Subspace& A, std::int64_t n, AvoidanceMode mode,
                         std::int64_t replicas, std::uint64_t seed,
                         int workers, std::int64_t budget);

struct FunctionalBatch {
  std::vector<double> values;  // one per replica, NaN for failed replicas
  SampleReport report;
  std::vector<ReplicaFailure> failures;
};

// Same stream discipline as batch_sample but maps each path through `f`
// instead of retaining it, keeping memory flat for large experiments.
FunctionalBatch batch_sample_functional(
    SamplerKind kind, const StepDistribution& dist, const Subspace& A,
    std::int64_t n, AvoidanceMode mode, std::int64_t replicas,
    std::uint64_t seed, int workers, std::int64_t budget,
    const std::function<double(const WalkPath&)>& f);

struct RowBatch {
  std::vector<double> values;  // replicas * stride, NaN rows on failure
  int stride = 1;
  SampleReport report;
  std::vector<ReplicaFailure> failures;
};

// As batch_sample_functional but `fill` writes `stride` doubles per path.
RowBatch batch_sample_rows(
    SamplerKind kind, const StepDistribution& dist, const Subspace& A,
    std::int64_t n, AvoidanceMode mode, std::int64_t replicas,
    std::uint64_t seed, int workers, std::int64_t budget, int stride,
    const std::function<void(const WalkPath&, double*)>& fill);

// Unconditioned n-step walks under the same stream-per-replica contract;
// stream ids start at `stream_offset` so a conditioned batch with ids
// [0, replicas) stays independent of its unconditioned comparison batch.
std::vector<double> batch_unconditioned_functional(
    const StepDistribution& dist, std::int64_t n, std::int64_t replicas,
    std::uint64_t seed, std::uint64_t stream_offset, int workers,
    const std::function<double(const WalkPath&)>& f);

}  // namespace condwalk
