#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "condwalk/walk.hpp"

namespace condwalk {

// Whether avoidance constrains the linearly interpolated trajectory or only
// the lattice positions.
enum class AvoidanceMode { Interpolated, LatticeOnly };

enum class SegmentInterval { OpenClosed, Closed };  // (0,1] vs [0,1]

// Linear subspace A of R^d given as the kernel of an integer constraint
// matrix. Rows are canonicalized at construction by exact integer row
// reduction (gcd-scaled elimination, each row divided by its content, leading
// coefficient positive); rank is the number of surviving rows. A always
// contains the origin. dim(A) = d - rank.
class Subspace {
public:
  static Subspace create(int d,
                         const std::vector<std::vector<std::int64_t>>& rows);

  int d() const { return d_; }
  int rank() const { return rank_; }
  int subspace_dim() const { return d_ - rank_; }

  std::vector<std::vector<std::int64_t>> rows() const;

  bool contains(std::span<const std::int64_t> x) const;

  std::span<const std::int64_t> row(int i) const {
    return {rows_.data() + static_cast<std::size_t>(i) * d_,
            static_cast<std::size_t>(d_)};
  }

private:
  Subspace() = default;

  int d_ = 0;
  int rank_ = 0;
  std::vector<std::int64_t> rows_;  // rank x d, row-major, canonical
};

// True iff some t in the interval has (1-t)x + t*y in A. Exact: each
// constraint restricts t to everything, nothing, or one rational root, and the
// intersection is tested with integer arithmetic only.
bool segment_hits(const Subspace& A, std::span<const std::int64_t> x,
                  std::span<const std::int64_t> y, SegmentInterval interval);

// Avoidance of A on the window (a, b]: lattice times a < k <= b in LatticeOnly
// mode, every interpolated segment with per-segment interval (0,1] in
// Interpolated mode. The left edge a is excluded in both modes, so the walk
// may stand on A at time a.
bool window_avoids(const Subspace& A, const WalkPath& path, std::int64_t a,
                   std::int64_t b, AvoidanceMode mode);

Subspace subspace_origin(int d);
Subspace subspace_diagonal2();
Subspace subspace_collision2d();

}  // namespace condwalk
