#include "condwalk/oracle.hpp"

#include <stdexcept>
#include <string>

namespace condwalk {

namespace {

void check_guard(const StepDistribution& dist, std::int64_t depth) {
  double states = 1.0;
  for (std::int64_t i = 0; i < depth; ++i) {
    states *= static_cast<double>(dist.support_size());
    if (states > static_cast<double>(kOracleStateGuard))
      throw SizeGuardError("oracle: |support|^" + std::to_string(depth) +
                           " exceeds the enumeration guard of " +
                           std::to_string(kOracleStateGuard) + " states");
  }
}

void check_dims(const StepDistribution& dist, const Subspace& A) {
  if (dist.d() != A.d())
    throw std::invalid_argument("oracle: distribution and subspace dimension "
                                "mismatch");
}

// Shared depth-first walker over all A-avoiding prefixes. `leaf` receives the
// flattened positions (S_1..S_n) and the exact path probability.
template <typename Leaf>
void enumerate_avoiding(const StepDistribution& dist, const Subspace& A,
                        std::int64_t n, AvoidanceMode mode, Leaf&& leaf) {
  const int d = dist.d();
  std::vector<std::int64_t> positions(static_cast<std::size_t>(n + 1) * d, 0);
  std::vector<Rational> prob_stack(static_cast<std::size_t>(n + 1));
  prob_stack[0] = Rational(1);

  // Explicit index stack instead of recursion; depth = number of steps taken.
  std::vector<std::size_t> choice(static_cast<std::size_t>(n) + 1, 0);
  std::int64_t depth = 0;
  while (true) {
    if (depth == n) {
      leaf(std::span<const std::int64_t>(positions.data() + d,
                                         static_cast<std::size_t>(n) * d),
           prob_stack[static_cast<std::size_t>(n)]);
      --depth;
      if (depth < 0) break;
      ++choice[static_cast<std::size_t>(depth)];
      continue;
    }
    const std::size_t c = choice[static_cast<std::size_t>(depth)];
    if (c == dist.support_size()) {
      --depth;
      if (depth < 0) break;
      ++choice[static_cast<std::size_t>(depth)];
      continue;
    }
    const auto v = dist.step(c);
    const std::size_t cur = static_cast<std::size_t>(depth) * d;
    const std::size_t nxt = cur + d;
    for (int i = 0; i < d; ++i) positions[nxt + i] = positions[cur + i] + v[i];
    const auto prev = std::span<const std::int64_t>(positions.data() + cur,
                                                    static_cast<std::size_t>(d));
    const auto next = std::span<const std::int64_t>(positions.data() + nxt,
                                                    static_cast<std::size_t>(d));
    const bool hit = mode == AvoidanceMode::Interpolated
                         ? segment_hits(A, prev, next,
                                        SegmentInterval::OpenClosed)
                         : A.contains(next);
    if (hit) {
      ++choice[static_cast<std::size_t>(depth)];
      continue;
    }
    prob_stack[static_cast<std::size_t>(depth) + 1] =
        prob_stack[static_cast<std::size_t>(depth)] * dist.entries()[c].prob;
    ++depth;
    choice[static_cast<std::size_t>(depth)] = 0;
  }
}

}  // namespace

Rational total_variation(const ExactLaw& a, const ExactLaw& b) {
  Rational sum(0);
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() || ib != b.weights.end()) {
    if (ib == b.weights.end() ||
        (ia != a.weights.end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.weights.end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / Rational(2);
}

Rational exact_event_probability(const StepDistribution& dist,
                                 const Subspace& A, std::int64_t n,
                                 AvoidanceMode mode) {
  if (n < 1)
    throw std::invalid_argument("exact_event_probability: n must be >= 1");
  check_dims(dist, A);
  check_guard(dist, n);
  Rational total(0);
  enumerate_avoiding(dist, A, n, mode,
                     [&](std::span<const std::int64_t>, const Rational& p) {
                       total += p;
                     });
  return total;
}

ExactLaw exact_conditioned_law(const StepDistribution& dist, const Subspace& A,
                               std::int64_t n, AvoidanceMode mode) {
  if (n < 1)
    throw std::invalid_argument("exact_conditioned_law: n must be >= 1");
  check_dims(dist, A);
  check_guard(dist, n);
  ExactLaw law;
  law.n = n;
  law.d = dist.d();
  Rational total(0);
  enumerate_avoiding(
      dist, A, n, mode,
      [&](std::span<const std::int64_t> path, const Rational& p) {
        law.weights[std::vector<std::int64_t>(path.begin(), path.end())] = p;
        total += p;
      });
  if (total.is_zero())
    throw std::domain_error("exact_conditioned_law: conditioning event has "
                            "probability zero");
  for (auto& [key, w] : law.weights) w /= total;
  return law;
}

ShiftLawResult exact_shift_law(const StepDistribution& dist, const Subspace& A,
                               std::int64_t n, std::int64_t horizon,
                               AvoidanceMode mode) {
  if (n < 1) throw std::invalid_argument("exact_shift_law: n must be >= 1");
  if (horizon < n)
    throw std::invalid_argument("exact_shift_law: horizon must be >= n");
  check_dims(dist, A);
  check_guard(dist, horizon);

  const int d = dist.d();
  std::map<std::int64_t, std::map<std::vector<std::int64_t>, Rational>> per_k;
  std::map<std::int64_t, Rational> mass_k;

  // DFS over prefixes whose shift time is still undecided. Scanner states are
  // small (one candidate), so each frame keeps its own copy for backtracking.
  struct Frame {
    ShiftScanner scanner;
    Rational prob;
    std::size_t choice = 0;
  };
  std::vector<std::int64_t> positions(static_cast<std::size_t>(horizon + 1) * d,
                                      0);
  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(horizon) + 1);
  stack.push_back({ShiftScanner(A, n, mode,
                                std::span<const std::int64_t>(positions.data(),
                                                              d)),
                   Rational(1)});

  while (!stack.empty()) {
    Frame& frame = stack.back();
    const std::int64_t depth = static_cast<std::int64_t>(stack.size()) - 1;
    if (depth == horizon || frame.choice == dist.support_size()) {
      // Either the horizon ran out with T_n undecided (mass outside the
      // restriction) or the frame is exhausted.
      stack.pop_back();
      if (!stack.empty()) ++stack.back().choice;
      continue;
    }
    const std::size_t c = frame.choice;
    const auto v = dist.step(c);
    const std::size_t cur = static_cast<std::size_t>(depth) * d;
    const std::size_t nxt = cur + d;
    for (int i = 0; i < d; ++i) positions[nxt + i] = positions[cur + i] + v[i];

    ShiftScanner scanner = frame.scanner;
    const auto found = scanner.advance(
        std::span<const std::int64_t>(positions.data() + cur,
                                      static_cast<std::size_t>(d)),
        std::span<const std::int64_t>(positions.data() + nxt,
                                      static_cast<std::size_t>(d)));
    const Rational prob = frame.prob * dist.entries()[c].prob;
    if (found) {
      const std::int64_t k = *found;
      std::vector<std::int64_t> z;
      z.reserve(static_cast<std::size_t>(n) * d);
      const std::size_t origin = static_cast<std::size_t>(k) * d;
      for (std::int64_t j = 1; j <= n; ++j)
        for (int i = 0; i < d; ++i)
          z.push_back(positions[origin + static_cast<std::size_t>(j) * d + i] -
                      positions[origin + i]);
      per_k[k][z] += prob;
      mass_k[k] += prob;
      ++frame.choice;
      continue;
    }
    stack.push_back({std::move(scanner), prob});
  }

  ShiftLawResult result;
  result.law.n = n;
  result.law.d = d;
  result.horizon_mass = Rational(0);
  for (const auto& [k, m] : mass_k) result.horizon_mass += m;
  if (result.horizon_mass.is_zero())
    throw std::domain_error(
        "exact_shift_law: no shift time confirmed within the horizon");
  for (const auto& [k, weights] : per_k) {
    const Rational& m = mass_k.at(k);
    ExactLaw lk;
    lk.n = n;
    lk.d = d;
    for (const auto& [z, w] : weights) {
      lk.weights[z] = w / m;
      result.law.weights[z] += w / result.horizon_mass;
    }
    result.shift_times.push_back(k);
    result.shift_time_mass.push_back(m);
    result.per_shift_laws.push_back(std::move(lk));
  }
  return result;
}

LemmaReport verify_lemma(const StepDistribution& dist, const Subspace& A,
                         std::int64_t n, std::int64_t horizon,
                         AvoidanceMode mode) {
  LemmaReport report;
  report.n = n;
  report.horizon = horizon;
  report.mode = mode;
  report.event_probability = exact_event_probability(dist, A, n, mode);
  const ExactLaw conditioned = exact_conditioned_law(dist, A, n, mode);
  ShiftLawResult shifted = exact_shift_law(dist, A, n, horizon, mode);
  report.horizon_mass = shifted.horizon_mass;
  report.tv_distance = total_variation(shifted.law, conditioned);
  for (std::size_t i = 0; i < shifted.shift_times.size(); ++i)
    report.per_shift_time.push_back(
        {shifted.shift_times[i], shifted.shift_time_mass[i],
         shifted.per_shift_laws[i] == conditioned});
  report.pass = report.tv_distance.is_zero();
  return report;
}

}  // namespace condwalk
