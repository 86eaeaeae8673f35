#include "condwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condwalk {

double reference_cdf(const ReferenceCdf& ref, double x) {
  if (!(ref.sigma > 0.0))
    throw std::invalid_argument("reference_cdf: sigma must be positive");
  const double s = ref.sigma;
  switch (ref.kind) {
    case ReferenceCdf::Kind::Gaussian:
      return 0.5 * std::erfc(-x / (s * std::sqrt(2.0)));
    case ReferenceCdf::Kind::Rayleigh:
      return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x * x / (2.0 * s * s));
    case ReferenceCdf::Kind::TwoSidedRayleigh: {
      const double half = 0.5 * (1.0 - std::exp(-x * x / (2.0 * s * s)));
      return x >= 0.0 ? 0.5 + half : 0.5 - half;
    }
  }
  throw std::logic_error("reference_cdf: unknown kind");
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.755) {
    // Theta-transformed series, accurate where the direct one converges slowly.
    const double pi = 3.14159265358979323846;
    double sum = 0.0;
    for (int j = 1; j <= 21; j += 2)
      sum += std::exp(-j * j * pi * pi / (8.0 * lambda * lambda));
    return 1.0 - std::sqrt(2.0 * pi) / lambda * sum;
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    if (term < 1e-18) break;
    sum += (j % 2 == 1 ? term : -term);
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> xs, const ReferenceCdf& ref) {
  if (xs.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference_cdf(ref, sorted[i]);
    const double hi = std::abs(static_cast<double>(i + 1) / n - f);
    const double lo = std::abs(static_cast<double>(i) / n - f);
    d = std::max({d, hi, lo});
  }
  KsResult result;
  result.statistic = d;
  result.n1 = static_cast<std::int64_t>(sorted.size());
  result.p_value = kolmogorov_survival(std::sqrt(n) * d);
  return result;
}

KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == v) ++ia;
    while (ib < b.size() && b[ib] == v) ++ib;
    const double gap = std::abs(static_cast<double>(ia) / na -
                                static_cast<double>(ib) / nb);
    d = std::max(d, gap);
  }
  // Once one sample is exhausted the gap only shrinks back to zero.
  KsResult result;
  result.statistic = d;
  result.n1 = static_cast<std::int64_t>(a.size());
  result.n2 = static_cast<std::int64_t>(b.size());
  const double ne = na * nb / (na + nb);
  result.p_value = kolmogorov_survival(std::sqrt(ne) * d);
  return result;
}

std::vector<double> empirical_covariance(std::span<const double> samples,
                                         int d) {
  if (d < 1) throw std::invalid_argument("empirical_covariance: d must be >= 1");
  if (samples.size() % static_cast<std::size_t>(d) != 0)
    throw std::invalid_argument("empirical_covariance: ragged input");
  const std::size_t n = samples.size() / static_cast<std::size_t>(d);
  if (n < 2)
    throw std::invalid_argument(
        "empirical_covariance: need at least two samples");
  std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (int i = 0; i < d; ++i)
      mean[i] += samples[r * static_cast<std::size_t>(d) + i];
  for (auto& m : mean) m /= static_cast<double>(n);
  std::vector<double> cov(static_cast<std::size_t>(d) * d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        cov[static_cast<std::size_t>(i) * d + j] +=
            (samples[r * d + i] - mean[i]) * (samples[r * d + j] - mean[j]);
  for (auto& c : cov) c /= static_cast<double>(n - 1);
  return cov;
}

}  // namespace condwalk
