#include <doctest.h>

#include <sstream>

#include "condwalk/experiments.hpp"
#include "condwalk/io.hpp"

using namespace condwalk;

namespace {

ConvergeConfig small_config(const std::string& preset) {
  ConvergeConfig config;
  config.preset = preset;
  config.n = 16;
  config.replicas = 200;
  config.seed = 7;
  config.workers = 2;
  return config;
}

}  // namespace

TEST_CASE("converge presets produce well-formed verdicts") {
  for (const std::string preset :
       {"meander2d", "meander2d-lattice", "collide2d"}) {
    const ConvergeVerdict verdict = run_converge(small_config(preset));
    CHECK(verdict.sampling_failures == 0);
    CHECK(verdict.report.at("preset") == preset);
    const double d = verdict.report.at("statistics")
                         .at("ks_two_sample")
                         .at("d")
                         .get<double>();
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(verdict.report.contains("checks"));
    CHECK(verdict.report.at("rng") == RngStream::identity());
  }

  const ConvergeVerdict belkin = run_converge(small_config("belkin1d"));
  CHECK(belkin.report.at("sampler") == "shift");
  CHECK(belkin.report.at("statistics").contains("ks_two_sided_rayleigh"));
  CHECK(belkin.report.at("statistics").contains("ks_gaussian"));

  CHECK_THROWS_AS(run_converge(small_config("nope")), std::invalid_argument);
}

TEST_CASE("explicit mode overrides the preset default") {
  ConvergeConfig config = small_config("meander2d");
  config.mode = AvoidanceMode::LatticeOnly;
  const ConvergeVerdict verdict = run_converge(config);
  CHECK(verdict.report.at("mode") == "lattice-only");
  CHECK(run_converge(small_config("meander2d")).report.at("mode") ==
        "interpolated");
}

TEST_CASE("a single replica is degenerate but valid") {
  ConvergeConfig config = small_config("meander2d");
  config.replicas = 1;
  const ConvergeVerdict verdict = run_converge(config);
  const double d =
      verdict.report.at("statistics").at("ks_two_sample").at("d").get<double>();
  CHECK(d <= 1.0);
}

TEST_CASE("bench rows carry the accounting identities") {
  BenchConfig config;
  config.dist_spec = "srw1d";
  config.subspace_spec = "origin";
  config.ns = {8, 32};
  config.replicas = 400;
  config.seed = 3;
  config.workers = 2;
  const auto rows = run_bench(config);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.status == "ok");
    if (row.kind == SamplerKind::Rejection) {
      const double predicted =
          static_cast<double>(row.n) / row.acceptance_rate;
      CHECK(row.steps_per_sample == doctest::Approx(predicted));
    } else {
      CHECK(row.steps_per_sample >= static_cast<double>(row.n));
    }
  }
  // Acceptance rate decreases with the window length (nested events).
  CHECK(rows[0].acceptance_rate > rows[1].acceptance_rate);

  const std::string csv = bench_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "sampler,n,replicas,completed,steps_per_sample,acceptance_rate,"
        "mean_shift_time,max_shift_time,wall_time_s,status");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 4);
}
