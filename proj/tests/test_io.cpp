#include <doctest.h>

#include "condwalk/io.hpp"

using namespace condwalk;

TEST_CASE("step distribution from JSON") {
  const auto j = nlohmann::json::parse(R"({
    "d": 2,
    "steps": [
      {"v": [1, 0], "p": "1/4"},
      {"v": [-1, 0], "p": "1/4"},
      {"v": [0, 1], "p": "1/4"},
      {"v": [0, -1], "p": "1/4"}
    ]
  })");
  const StepDistribution dist = step_distribution_from_json(j);
  CHECK(dist.d() == 2);
  CHECK(dist.support_size() == 4);
  CHECK(dist.entries()[0].prob == Rational(1, 4));

  CHECK_THROWS_AS(step_distribution_from_json(nlohmann::json::parse("{}")),
                  std::invalid_argument);
}

TEST_CASE("subspace from JSON") {
  const Subspace A = subspace_from_json(nlohmann::json::parse(
      R"({"d": 4, "rows": [[1, 0, -1, 0], [0, 1, 0, -1]]})"));
  CHECK(A.d() == 4);
  CHECK(A.rank() == 2);
}

TEST_CASE("distribution resolver") {
  CHECK(resolve_distribution("srw1d").d() == 1);
  CHECK(resolve_distribution("lazy1d").support_size() == 3);
  const StepDistribution p = resolve_distribution("product(srw2d,srw2d)");
  CHECK(p.d() == 4);
  CHECK(p.support_size() == 16);
  CHECK(resolve_distribution("product(srw1d,product(srw1d,srw1d))").d() == 3);
  CHECK(resolve_distribution(
            R"({"d":1,"steps":[{"v":[1],"p":"1/2"},{"v":[-1],"p":"1/2"}]})")
            .d() == 1);
  CHECK_THROWS_AS(resolve_distribution("nope"), std::invalid_argument);
}

TEST_CASE("subspace resolver") {
  CHECK(resolve_subspace("origin", 3).rank() == 3);
  CHECK(resolve_subspace("diagonal2", 2).rank() == 1);
  CHECK(resolve_subspace("collision2d", 4).subspace_dim() == 2);
  CHECK_THROWS_AS(resolve_subspace("diagonal2", 3), std::invalid_argument);
  CHECK_THROWS_AS(resolve_subspace("collision2d", 2), std::invalid_argument);
  CHECK_THROWS_AS(resolve_subspace("nope", 2), std::invalid_argument);
  CHECK_THROWS_AS(resolve_subspace(R"({"d": 2, "rows": [[1, 0]]})", 3),
                  std::invalid_argument);
}

TEST_CASE("mode, sampler, and functional parsing") {
  CHECK(parse_mode("interpolated") == AvoidanceMode::Interpolated);
  CHECK(parse_mode("lattice-only") == AvoidanceMode::LatticeOnly);
  CHECK_THROWS_AS(parse_mode("latticeonly"), std::invalid_argument);
  CHECK(parse_sampler("shift") == SamplerKind::Shift);
  CHECK(mode_name(parse_mode("lattice-only")) == "lattice-only");

  const Functional f = parse_functional("endpoint-coordinate:2");
  CHECK(f.kind == Functional::Kind::EndpointCoordinate);
  CHECK(f.coordinate == 2);
  CHECK(functional_name(f) == "endpoint-coordinate:2");
  const Functional m = parse_functional("marginal:0.5:1");
  CHECK(m.kind == Functional::Kind::Marginal);
  CHECK(m.t == 0.5);
  CHECK(m.coordinate == 1);
  CHECK(parse_functional("sup-norm").kind == Functional::Kind::SupNorm);
  CHECK_THROWS_AS(parse_functional("median"), std::invalid_argument);
}

TEST_CASE("format_double round-trips exactly") {
  RngStream rng(8, 8);
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.next_double() - 0.5) * 2000.0;
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
}

TEST_CASE("report serialization uses num/den strings") {
  const LemmaReport report = verify_lemma(
      step_distribution_srw1d(), subspace_origin(1), 2, 6,
      AvoidanceMode::Interpolated);
  const nlohmann::json j = lemma_report_to_json(report);
  CHECK(j.at("tv_distance").get<std::string>() == "0/1");
  CHECK(j.at("event_probability").get<std::string>() == "1/2");
  CHECK(j.at("pass").get<bool>());
  for (const auto& pk : j.at("per_shift_time"))
    CHECK(pk.at("equal_to_conditioned").get<bool>());
}
