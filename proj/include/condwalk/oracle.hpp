#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "condwalk/rational.hpp"
#include "condwalk/shift_scan.hpp"
#include "condwalk/step_distribution.hpp"
#include "condwalk/subspace.hpp"

namespace condwalk {

// Enumeration refuses configurations with more than this many paths.
inline constexpr std::int64_t kOracleStateGuard = 100'000'000;

class SizeGuardError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Exact law of an n-step trajectory: positive rational weights summing to 1,
// keyed by the flattened positions (S_1, ..., S_n) in time-major order.
struct ExactLaw {
  std::int64_t n = 0;
  int d = 0;
  std::map<std::vector<std::int64_t>, Rational> weights;

  friend bool operator==(const ExactLaw& a, const ExactLaw& b) {
    return a.n == b.n && a.d == b.d && a.weights == b.weights;
  }
};

// Half the sum of absolute weight differences over the union of supports.
Rational total_variation(const ExactLaw& a, const ExactLaw& b);

// Probability that an n-step walk avoids A on (0, n] in the given mode,
// by depth-first enumeration with exact rational arithmetic.
Rational exact_event_probability(const StepDistribution& dist,
                                 const Subspace& A, std::int64_t n,
                                 AvoidanceMode mode);

// Law of (S_1, ..., S_n) conditioned on avoidance.
ExactLaw exact_conditioned_law(const StepDistribution& dist, const Subspace& A,
                               std::int64_t n, AvoidanceMode mode);

struct ShiftLawResult {
  ExactLaw law;  // law of (Z_1, ..., Z_n) given the shift time fits the horizon
  Rational horizon_mass;  // P(T_n <= N - n)
  // Per shift time k: P(T_n = k) and the conditional law of Z given T_n = k.
  std::vector<std::int64_t> shift_times;
  std::vector<Rational> shift_time_mass;
  std::vector<ExactLaw> per_shift_laws;
};

// Enumerates N-step paths, computes the shift time per path incrementally,
// and returns the law of Z = (S_{T_n+k} - S_{T_n}) restricted to
// {T_n <= N - n}, normalized, with its per-k decomposition. Branches collapse
// at the moment a shift time is confirmed: every extension of a confirmed
// prefix has the same Z, so the whole subtree contributes the prefix mass.
ShiftLawResult exact_shift_law(const StepDistribution& dist, const Subspace& A,
                               std::int64_t n, std::int64_t horizon,
                               AvoidanceMode mode);

struct LemmaPerShiftTime {
  std::int64_t k = 0;
  Rational mass;  // P(T_n = k)
  bool equal_to_conditioned = false;
};

struct LemmaReport {
  std::int64_t n = 0;
  std::int64_t horizon = 0;
  AvoidanceMode mode = AvoidanceMode::Interpolated;
  Rational event_probability;
  Rational tv_distance;
  Rational horizon_mass;
  std::vector<LemmaPerShiftTime> per_shift_time;
  bool pass = false;  // tv_distance exactly zero
};

// Machine check of the distributional identity: the law of the post-shift
// window equals the conditioned law, exactly. Restricted to {T_n <= N - n}
// this is still an exact identity (each per-k law separately equals the
// conditioned law), so pass requires rational zero, not a tolerance.
LemmaReport verify_lemma(const StepDistribution& dist, const Subspace& A,
                         std::int64_t n, std::int64_t horizon,
                         AvoidanceMode mode);

}  // namespace condwalk
