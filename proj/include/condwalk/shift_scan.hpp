#pragma once

#include <cstdint>
#include <optional>

#include "condwalk/subspace.hpp"

namespace condwalk {

enum class ScanOutcome { Found, InsufficientData, NotFoundInPath };

struct ScanResult {
  ScanOutcome outcome;
  std::int64_t shift_time = -1;  // valid when outcome == Found
};

// Incremental scan for the shift time: the first lattice time k with S_k in A
// whose following window (k, k+n] is A-free in the requested mode.
//
// Candidates are lattice times sitting on A. A hit of A at time u (lattice, or
// inside a segment in Interpolated mode) invalidates every candidate k with
// u - n <= k < u. An unconfirmed candidate always satisfies k + n >= current
// time, so any hit kills *all* active candidates, and only a lattice hit
// creates a new one at the hit itself. The active set therefore never holds
// more than one candidate; the front candidate k is confirmed once the scan
// reaches k + n with k still alive. This is O(1) work per arriving segment;
// equivalence with the quadratic per-candidate definition is covered by an
// exhaustive test against a naive reference.
class ShiftScanner {
public:
  ShiftScanner(const Subspace& A, std::int64_t n, AvoidanceMode mode,
               std::span<const std::int64_t> start)
      : A_(&A), n_(n), mode_(mode), has_candidate_(A.contains(start)) {}

  // Feed the segment (time, time+1]; returns the confirmed shift time if this
  // step completes a clean window.
  std::optional<std::int64_t> advance(std::span<const std::int64_t> prev,
                                      std::span<const std::int64_t> next) {
    const bool end_hit = A_->contains(next);
    const bool hit =
        mode_ == AvoidanceMode::Interpolated
            ? segment_hits(*A_, prev, next, SegmentInterval::OpenClosed)
            : end_hit;
    if (hit) has_candidate_ = false;
    if (end_hit) {
      // The hit at time+1 does not fall inside its own window (k, k+n].
      candidate_ = time_ + 1;
      has_candidate_ = true;
    }
    ++time_;
    if (has_candidate_ && candidate_ + n_ == time_) return candidate_;
    return std::nullopt;
  }

  std::int64_t time() const { return time_; }
  bool pending() const { return has_candidate_; }
  std::int64_t candidate() const { return candidate_; }

private:
  const Subspace* A_;
  std::int64_t n_;
  AvoidanceMode mode_;
  std::int64_t time_ = 0;
  bool has_candidate_;
  std::int64_t candidate_ = 0;
};

// Scan a complete path. Found(k) for the minimal confirmed candidate;
// InsufficientData when a still-active candidate's window extends past the end
// of the path; NotFoundInPath when no candidate is active at the end.
ScanResult scan_shift_time(const WalkPath& path, const Subspace& A,
                           std::int64_t n, AvoidanceMode mode);

}  // namespace condwalk
