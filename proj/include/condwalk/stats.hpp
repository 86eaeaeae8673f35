#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace condwalk {

struct ReferenceCdf {
  enum class Kind { Gaussian, Rayleigh, TwoSidedRayleigh };
  Kind kind = Kind::Gaussian;
  double sigma = 1.0;
};

double reference_cdf(const ReferenceCdf& ref, double x);

struct KsResult {
  double statistic = 0.0;  // D in [0,1]
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;  // 0 for one-sample
  double p_value = 1.0;  // asymptotic Kolmogorov distribution
};

// Survival function of the Kolmogorov distribution, Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

// One-sample KS statistic of the samples against a continuous reference CDF.
// Input need not be sorted.
KsResult ks_one_sample(std::span<const double> xs, const ReferenceCdf& ref);

// Two-sample KS statistic via a merge scan; ties are handled by advancing both
// empirical CDFs through a tied value before the gap is recorded. p-value uses
// the effective size n1*n2/(n1+n2).
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

// Unbiased sample covariance of d-dimensional observations (flat, row-major).
std::vector<double> empirical_covariance(std::span<const double> samples,
                                         int d);

}  // namespace condwalk
