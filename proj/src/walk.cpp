#include "condwalk/walk.hpp"

#include <stdexcept>

namespace condwalk {

namespace {

void append_steps(WalkPath& path, const StepDistribution& dist,
                  std::int64_t count, RngStream& rng) {
  const int d = path.d;
  path.pos.reserve(path.pos.size() + static_cast<std::size_t>(count) * d);
  for (std::int64_t k = 0; k < count; ++k) {
    const auto v = dist.step(dist.sample_index(rng));
    const std::size_t base = path.pos.size() - d;
    for (int i = 0; i < d; ++i) path.pos.push_back(path.pos[base + i] + v[i]);
  }
}

}  // namespace

WalkPath sample_walk(const StepDistribution& dist, std::int64_t length,
                     RngStream& rng) {
  if (length < 0) throw std::invalid_argument("sample_walk: negative length");
  WalkPath path;
  path.d = dist.d();
  path.pos.assign(static_cast<std::size_t>(dist.d()), 0);
  append_steps(path, dist, length, rng);
  return path;
}

WalkPath extend_walk(const WalkPath& path, const StepDistribution& dist,
                     std::int64_t count, RngStream& rng) {
  if (path.d != dist.d())
    throw std::invalid_argument("extend_walk: dimension mismatch");
  if (count < 0) throw std::invalid_argument("extend_walk: negative count");
  WalkPath out = path;
  append_steps(out, dist, count, rng);
  return out;
}

}  // namespace condwalk
