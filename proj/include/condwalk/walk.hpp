#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "condwalk/step_distribution.hpp"

namespace condwalk {

// Lattice trajectory S_0 = 0, S_1, ..., S_m, stored flat in time-major order.
struct WalkPath {
  int d = 0;
  std::vector<std::int64_t> pos;  // (m+1) * d entries

  std::int64_t length() const {
    return static_cast<std::int64_t>(pos.size()) / d - 1;
  }
  std::span<const std::int64_t> at(std::int64_t k) const {
    return {pos.data() + static_cast<std::size_t>(k) * d,
            static_cast<std::size_t>(d)};
  }
};

WalkPath sample_walk(const StepDistribution& dist, std::int64_t length,
                     RngStream& rng);

// Appends `count` freshly sampled steps; on the same stream this splices:
// extend_walk(sample_walk(m), k) == sample_walk(m + k).
WalkPath extend_walk(const WalkPath& path, const StepDistribution& dist,
                     std::int64_t count, RngStream& rng);

}  // namespace condwalk
