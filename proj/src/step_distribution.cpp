#include "condwalk/step_distribution.hpp"

#include <algorithm>
#include <stdexcept>

namespace condwalk {

StepDistribution StepDistribution::create(int d,
                                          std::vector<StepEntry> entries) {
  if (d < 1) throw std::invalid_argument("StepDistribution: d must be >= 1");
  if (entries.empty())
    throw std::invalid_argument("StepDistribution: empty support");

  for (const auto& e : entries) {
    if (static_cast<int>(e.step.size()) != d)
      throw std::invalid_argument(
          "StepDistribution: step vector has wrong dimension");
    if (!(e.prob > Rational(0)))
      throw std::invalid_argument(
          "StepDistribution: probabilities must be positive");
  }

  {
    std::vector<std::vector<std::int64_t>> steps;
    steps.reserve(entries.size());
    for (const auto& e : entries) steps.push_back(e.step);
    std::sort(steps.begin(), steps.end());
    if (std::adjacent_find(steps.begin(), steps.end()) != steps.end())
      throw std::invalid_argument("StepDistribution: duplicate step");
  }

  Rational total(0);
  std::vector<Rational> mean(d, Rational(0));
  for (const auto& e : entries) {
    total += e.prob;
    for (int i = 0; i < d; ++i) mean[i] += e.prob * Rational(e.step[i]);
  }
  if (total != Rational(1))
    throw std::invalid_argument(
        "StepDistribution: probabilities sum to " + total.str() + ", not 1");
  for (int i = 0; i < d; ++i)
    if (!mean[i].is_zero())
      throw std::invalid_argument("StepDistribution: mean is nonzero (" +
                                  mean[i].str() + " in coordinate " +
                                  std::to_string(i) + ")");

  StepDistribution dist;
  dist.d_ = d;
  dist.entries_ = std::move(entries);
  dist.cum_.reserve(dist.entries_.size());
  Rational acc(0);
  for (const auto& e : dist.entries_) {
    acc += e.prob;
    dist.cum_.push_back(acc.to_double());
  }
  dist.cum_.back() = 1.0;
  return dist;
}

std::vector<Rational> StepDistribution::covariance() const {
  std::vector<Rational> cov(static_cast<std::size_t>(d_) * d_, Rational(0));
  for (const auto& e : entries_)
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        cov[static_cast<std::size_t>(i) * d_ + j] +=
            e.prob * Rational(e.step[i]) * Rational(e.step[j]);
  return cov;
}

StepDistribution step_distribution_srw1d() {
  return StepDistribution::create(
      1, {{{1}, Rational(1, 2)}, {{-1}, Rational(1, 2)}});
}

StepDistribution step_distribution_srw2d() {
  return StepDistribution::create(2, {{{1, 0}, Rational(1, 4)},
                                      {{-1, 0}, Rational(1, 4)},
                                      {{0, 1}, Rational(1, 4)},
                                      {{0, -1}, Rational(1, 4)}});
}

StepDistribution step_distribution_lazy1d() {
  return StepDistribution::create(1, {{{0}, Rational(1, 2)},
                                      {{1}, Rational(1, 4)},
                                      {{-1}, Rational(1, 4)}});
}

StepDistribution step_distribution_product(const StepDistribution& a,
                                           const StepDistribution& b) {
  std::vector<StepEntry> entries;
  entries.reserve(a.support_size() * b.support_size());
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries()) {
      StepEntry e;
      e.step = ea.step;
      e.step.insert(e.step.end(), eb.step.begin(), eb.step.end());
      e.prob = ea.prob * eb.prob;
      entries.push_back(std::move(e));
    }
  return StepDistribution::create(a.d() + b.d(), std::move(entries));
}

}  // namespace condwalk
