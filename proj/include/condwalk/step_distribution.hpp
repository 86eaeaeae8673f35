#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "condwalk/rational.hpp"
#include "condwalk/rng.hpp"

namespace condwalk {

struct StepEntry {
  std::vector<std::int64_t> step;
  Rational prob;
};

// Finite-support step law on Z^d with exact rational probabilities. The
// validated invariants are: probabilities positive and summing to exactly 1,
// steps pairwise distinct and of dimension d, and exact zero mean. Probability
// arithmetic stays rational; sampling goes through a cumulative double table
// built once at construction, consuming exactly one uniform draw per step.
class StepDistribution {
public:
  static StepDistribution create(int d, std::vector<StepEntry> entries);

  int d() const { return d_; }
  const std::vector<StepEntry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  std::span<const std::int64_t> step(std::size_t i) const {
    return {entries_[i].step.data(), entries_[i].step.size()};
  }

  std::size_t sample_index(RngStream& rng) const {
    const double u = rng.next_double();
    std::size_t i = 0;
    while (u >= cum_[i]) ++i;  // cum_.back() == 1.0 > u, so this terminates
    return i;
  }

  // Exact covariance matrix sum(p * v * v^T), row-major d x d.
  std::vector<Rational> covariance() const;

private:
  StepDistribution() = default;

  int d_ = 0;
  std::vector<StepEntry> entries_;
  std::vector<double> cum_;
};

StepDistribution step_distribution_srw1d();
StepDistribution step_distribution_srw2d();
StepDistribution step_distribution_lazy1d();

// Composite walk of two independent distributions: support is the cartesian
// product, probabilities multiply, dimension is the sum.
StepDistribution step_distribution_product(const StepDistribution& a,
                                           const StepDistribution& b);

}  // namespace condwalk
