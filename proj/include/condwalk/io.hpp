#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "condwalk/oracle.hpp"
#include "condwalk/samplers.hpp"
#include "condwalk/scaled_path.hpp"
#include "condwalk/step_distribution.hpp"
#include "condwalk/subspace.hpp"

namespace condwalk {

// {"d": 2, "steps": [{"v": [1, 0], "p": "1/4"}, ...]}, probabilities as
// "num/den" strings.
StepDistribution step_distribution_from_json(const nlohmann::json& j);

// {"d": 4, "rows": [[1, 0, -1, 0], [0, 1, 0, -1]]}
Subspace subspace_from_json(const nlohmann::json& j);

// Accepts a preset name (srw1d, srw2d, lazy1d), product(a,b) of two resolvable
// specs, inline JSON (leading '{'), or @path to a JSON file.
StepDistribution resolve_distribution(const std::string& spec);

// Accepts a preset name (origin, diagonal2, collision2d), inline JSON, or
// @path. `d` is the ambient dimension used by the "origin" preset and checked
// against the others.
Subspace resolve_subspace(const std::string& spec, int d);

std::string mode_name(AvoidanceMode mode);
AvoidanceMode parse_mode(const std::string& name);
std::string sampler_name(SamplerKind kind);
SamplerKind parse_sampler(const std::string& name);

// "endpoint-coordinate:i", "endpoint-norm", "sup-norm", "marginal:t:i"
Functional parse_functional(const std::string& spec);
std::string functional_name(const Functional& f);

nlohmann::json lemma_report_to_json(const LemmaReport& report);
nlohmann::json sample_report_to_json(const SampleReport& report);

// Shortest decimal form that round-trips a double; used by every CSV writer so
// identical values always serialize to identical bytes.
std::string format_double(double v);

std::string preset_listing();

}  // namespace condwalk
