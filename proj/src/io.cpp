#include "condwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace condwalk {

StepDistribution step_distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("steps"))
    throw std::invalid_argument(
        "step distribution JSON needs fields \"d\" and \"steps\"");
  const int d = j.at("d").get<int>();
  std::vector<StepEntry> entries;
  for (const auto& step : j.at("steps")) {
    StepEntry e;
    e.step = step.at("v").get<std::vector<std::int64_t>>();
    e.prob = Rational::parse(step.at("p").get<std::string>());
    entries.push_back(std::move(e));
  }
  return StepDistribution::create(d, std::move(entries));
}

Subspace subspace_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("rows"))
    throw std::invalid_argument(
        "subspace JSON needs fields \"d\" and \"rows\"");
  return Subspace::create(
      j.at("d").get<int>(),
      j.at("rows").get<std::vector<std::vector<std::int64_t>>>());
}

namespace {

nlohmann::json json_from_spec(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in)
      throw std::invalid_argument("cannot open file '" + spec.substr(1) + "'");
    return nlohmann::json::parse(in);
  }
  return nlohmann::json::parse(spec);
}

}  // namespace

StepDistribution resolve_distribution(const std::string& spec) {
  if (spec == "srw1d") return step_distribution_srw1d();
  if (spec == "srw2d") return step_distribution_srw2d();
  if (spec == "lazy1d") return step_distribution_lazy1d();
  if (spec.rfind("product(", 0) == 0 && spec.back() == ')') {
    const std::string inner = spec.substr(8, spec.size() - 9);
    // Split at the top-level comma (inner specs may be nested products).
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0)
        return step_distribution_product(
            resolve_distribution(inner.substr(0, i)),
            resolve_distribution(inner.substr(i + 1)));
    }
    throw std::invalid_argument("product(...) needs two arguments");
  }
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '@'))
    return step_distribution_from_json(json_from_spec(spec));
  throw std::invalid_argument("unknown distribution '" + spec + "'");
}

Subspace resolve_subspace(const std::string& spec, int d) {
  if (spec == "origin") return subspace_origin(d);
  if (spec == "diagonal2") {
    if (d != 2)
      throw std::invalid_argument("diagonal2 needs a 2-dimensional walk");
    return subspace_diagonal2();
  }
  if (spec == "collision2d") {
    if (d != 4)
      throw std::invalid_argument(
          "collision2d needs a 4-dimensional composite walk");
    return subspace_collision2d();
  }
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '@')) {
    Subspace A = subspace_from_json(json_from_spec(spec));
    if (A.d() != d)
      throw std::invalid_argument("subspace dimension " +
                                  std::to_string(A.d()) +
                                  " does not match walk dimension " +
                                  std::to_string(d));
    return A;
  }
  throw std::invalid_argument("unknown subspace '" + spec + "'");
}

std::string mode_name(AvoidanceMode mode) {
  return mode == AvoidanceMode::Interpolated ? "interpolated" : "lattice-only";
}

AvoidanceMode parse_mode(const std::string& name) {
  if (name == "interpolated") return AvoidanceMode::Interpolated;
  if (name == "lattice-only") return AvoidanceMode::LatticeOnly;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (expected interpolated or lattice-only)");
}

std::string sampler_name(SamplerKind kind) {
  return kind == SamplerKind::Rejection ? "rejection" : "shift";
}

SamplerKind parse_sampler(const std::string& name) {
  if (name == "rejection") return SamplerKind::Rejection;
  if (name == "shift") return SamplerKind::Shift;
  throw std::invalid_argument("unknown sampler '" + name +
                              "' (expected rejection or shift)");
}

Functional parse_functional(const std::string& spec) {
  Functional f;
  if (spec == "endpoint-norm") {
    f.kind = Functional::Kind::EndpointNorm;
    return f;
  }
  if (spec == "sup-norm") {
    f.kind = Functional::Kind::SupNorm;
    return f;
  }
  if (spec.rfind("endpoint-coordinate:", 0) == 0) {
    f.kind = Functional::Kind::EndpointCoordinate;
    f.coordinate = std::stoi(spec.substr(20));
    return f;
  }
  if (spec.rfind("marginal:", 0) == 0) {
    const auto rest = spec.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("marginal functional needs marginal:t:i");
    f.kind = Functional::Kind::Marginal;
    f.t = std::stod(rest.substr(0, colon));
    f.coordinate = std::stoi(rest.substr(colon + 1));
    return f;
  }
  throw std::invalid_argument("unknown functional '" + spec + "'");
}

std::string functional_name(const Functional& f) {
  switch (f.kind) {
    case Functional::Kind::EndpointCoordinate:
      return "endpoint-coordinate:" + std::to_string(f.coordinate);
    case Functional::Kind::EndpointNorm:
      return "endpoint-norm";
    case Functional::Kind::SupNorm:
      return "sup-norm";
    case Functional::Kind::Marginal:
      return "marginal:" + format_double(f.t) + ":" +
             std::to_string(f.coordinate);
  }
  return "?";
}

nlohmann::json lemma_report_to_json(const LemmaReport& report) {
  nlohmann::json per_k = nlohmann::json::array();
  for (const auto& pk : report.per_shift_time)
    per_k.push_back({{"k", pk.k},
                     {"prob", pk.mass.str()},
                     {"equal_to_conditioned", pk.equal_to_conditioned}});
  return {{"n", report.n},
          {"horizon", report.horizon},
          {"mode", mode_name(report.mode)},
          {"event_probability", report.event_probability.str()},
          {"tv_distance", report.tv_distance.str()},
          {"horizon_mass", report.horizon_mass.str()},
          {"per_shift_time", per_k},
          {"pass", report.pass}};
}

nlohmann::json sample_report_to_json(const SampleReport& report) {
  nlohmann::json j{{"sampler", sampler_name(report.kind)},
                   {"replicas", report.replicas},
                   {"completed", report.completed},
                   {"steps", report.steps},
                   {"seed", report.seed},
                   {"rng", report.rng_identity},
                   {"wall_time_s", report.wall_time_s}};
  if (report.kind == SamplerKind::Rejection) {
    j["attempts"] = report.attempts;
    j["acceptance_rate"] = report.acceptance_rate;
  } else {
    j["mean_shift_time"] = report.mean_shift_time;
    j["max_shift_time"] = report.max_shift_time;
  }
  return j;
}

std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

std::string preset_listing() {
  std::ostringstream out;
  out << "distributions:\n"
         "  srw1d    simple random walk on Z (+1, -1 each 1/2)\n"
         "  srw2d    simple random walk on Z^2 (4 unit steps each 1/4)\n"
         "  lazy1d   lazy walk on Z (0 w.p. 1/2, +1 and -1 each 1/4)\n"
         "  product(a,b)  composite walk of two independent distributions\n"
         "subspaces:\n"
         "  origin       {0}, the identity constraints in the walk dimension\n"
         "  diagonal2    {(x,y) | x = y} in d=2\n"
         "  collision2d  {(x,y,w,z) | x = w, y = z} in d=4\n"
         "converge presets:\n"
         "  meander2d          srw2d avoiding the origin, interpolated\n"
         "  meander2d-lattice  srw2d avoiding the origin, lattice-only\n"
         "  belkin1d           srw1d avoiding the origin (two-sided Rayleigh "
         "endpoint law)\n"
         "  collide2d          two srw2d walkers conditioned not to meet\n";
  return out.str();
}

}  // namespace condwalk
