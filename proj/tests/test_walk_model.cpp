#include <doctest.h>

#include <cmath>
#include <map>

#include "condwalk/rng.hpp"
#include "condwalk/step_distribution.hpp"
#include "condwalk/walk.hpp"

using namespace condwalk;

TEST_CASE("step distribution validation") {
  CHECK_NOTHROW(StepDistribution::create(
      1, {{{1}, Rational(1, 2)}, {{-1}, Rational(1, 2)}}));

  // Nonzero mean (1/2, 1/2).
  CHECK_THROWS_AS(StepDistribution::create(2, {{{1, 0}, Rational(1, 2)},
                                               {{0, 1}, Rational(1, 2)}}),
                  std::invalid_argument);
  // Sum != 1.
  CHECK_THROWS_AS(StepDistribution::create(1, {{{1}, Rational(1, 2)},
                                               {{-1}, Rational(1, 4)}}),
                  std::invalid_argument);
  // Duplicate step.
  CHECK_THROWS_AS(StepDistribution::create(1, {{{1}, Rational(1, 4)},
                                               {{1}, Rational(1, 4)},
                                               {{-1}, Rational(1, 2)}}),
                  std::invalid_argument);
  // Wrong dimension.
  CHECK_THROWS_AS(StepDistribution::create(2, {{{1}, Rational(1, 2)},
                                               {{-1}, Rational(1, 2)}}),
                  std::invalid_argument);
  // Zero probability.
  CHECK_THROWS_AS(StepDistribution::create(1, {{{1}, Rational(1, 2)},
                                               {{0}, Rational(0)},
                                               {{-1}, Rational(1, 2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution::create(0, {}), std::invalid_argument);
}

TEST_CASE("product distribution is the cartesian composite") {
  const StepDistribution p =
      step_distribution_product(step_distribution_srw2d(),
                                step_distribution_srw2d());
  CHECK(p.d() == 4);
  REQUIRE(p.support_size() == 16);
  for (const auto& e : p.entries()) CHECK(e.prob == Rational(1, 16));
}

TEST_CASE("step covariance") {
  CHECK(step_distribution_srw1d().covariance() ==
        std::vector<Rational>{Rational(1)});
  CHECK(step_distribution_srw2d().covariance() ==
        std::vector<Rational>{Rational(1, 2), Rational(0), Rational(0),
                              Rational(1, 2)});
  CHECK(step_distribution_lazy1d().covariance() ==
        std::vector<Rational>{Rational(1, 2)});

  // Symmetric with nonnegative diagonal for the composite walk too.
  const StepDistribution p =
      step_distribution_product(step_distribution_srw2d(),
                                step_distribution_lazy1d());
  const auto cov = p.covariance();
  for (int i = 0; i < p.d(); ++i) {
    CHECK(cov[i * p.d() + i] >= Rational(0));
    for (int j = 0; j < p.d(); ++j)
      CHECK(cov[i * p.d() + j] == cov[j * p.d() + i]);
  }
}

TEST_CASE("sample_walk basics") {
  const StepDistribution dist = step_distribution_srw1d();
  RngStream rng(1, 0);
  const WalkPath empty = sample_walk(dist, 0, rng);
  CHECK(empty.length() == 0);
  CHECK(empty.pos == std::vector<std::int64_t>{0});

  RngStream a(7, 3), b(7, 3);
  CHECK(sample_walk(dist, 100, a).pos == sample_walk(dist, 100, b).pos);

  RngStream c(7, 4);
  CHECK(sample_walk(dist, 100, c).pos != sample_walk(dist, 100, b).pos);

  RngStream r(42, 0);
  const WalkPath p = sample_walk(dist, 1000, r);
  CHECK(p.pos[0] == 0);
  for (std::int64_t k = 0; k < 1000; ++k)
    CHECK(std::abs(p.pos[k + 1] - p.pos[k]) == 1);
}

TEST_CASE("extend_walk splices the stream") {
  const StepDistribution dist = step_distribution_srw2d();
  RngStream a(11, 2), b(11, 2);
  const WalkPath direct = sample_walk(dist, 8, a);
  const WalkPath spliced = extend_walk(sample_walk(dist, 5, b), dist, 3, b);
  CHECK(direct.pos == spliced.pos);
  CHECK(spliced.at(0)[0] == 0);
  CHECK(spliced.at(0)[1] == 0);

  RngStream c(11, 2);
  const WalkPath base = sample_walk(dist, 5, c);
  CHECK(extend_walk(base, dist, 0, c).pos == base.pos);
}

TEST_CASE("empirical step frequencies match the law") {
  const StepDistribution dist = step_distribution_lazy1d();
  RngStream rng(123, 0);
  const int N = 10000;
  std::map<std::int64_t, int> counts;
  double mean = 0.0;
  const WalkPath p = sample_walk(dist, N, rng);
  for (int k = 0; k < N; ++k) {
    const std::int64_t inc = p.pos[k + 1] - p.pos[k];
    ++counts[inc];
    mean += static_cast<double>(inc);
  }
  mean /= N;
  for (const auto& e : dist.entries()) {
    const double prob = e.prob.to_double();
    const double freq =
        static_cast<double>(counts[e.step[0]]) / static_cast<double>(N);
    CHECK(std::abs(freq - prob) <= 5.0 * std::sqrt(prob * (1 - prob) / N));
  }
  const double var = dist.covariance()[0].to_double();
  CHECK(std::abs(mean) <= 5.0 * std::sqrt(var / N));
}

TEST_CASE("rng streams are platform-stable and uniform-ish") {
  RngStream a(0, 0), b(0, 0);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c(0, 1);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) any_diff |= (b.next_u64() != c.next_u64());
  CHECK(any_diff);

  RngStream u(5, 5);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
