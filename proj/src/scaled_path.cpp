#include "condwalk/scaled_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condwalk {

ScaledPath::ScaledPath(std::shared_ptr<const WalkPath> source, std::int64_t n)
    : source_(std::move(source)), n_(n) {
  if (n_ < 1) throw std::invalid_argument("ScaledPath: n must be >= 1");
  if (source_->length() < n_)
    throw std::invalid_argument("ScaledPath: source walk shorter than n");
}

std::vector<double> ScaledPath::eval(double t) const {
  if (t < 0.0 || t > 1.0)
    throw std::invalid_argument("ScaledPath: t outside [0,1]");
  const int d = source_->d;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  std::vector<double> out(static_cast<std::size_t>(d));
  const double tn = t * static_cast<double>(n_);
  std::int64_t k = static_cast<std::int64_t>(std::floor(tn));
  if (k >= n_) k = n_ - 1;
  const double theta = tn - static_cast<double>(k);
  const auto a = source_->at(k);
  const auto b = source_->at(k + 1);
  for (int i = 0; i < d; ++i)
    out[i] = (static_cast<double>(a[i]) * (1.0 - theta) +
              static_cast<double>(b[i]) * theta) *
             scale;
  return out;
}

namespace {

double norm_diff_at(const ScaledPath& f, const ScaledPath& g, double t) {
  const auto a = f.eval(t);
  const auto b = g.eval(t);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

double sup_metric(const ScaledPath& f, const ScaledPath& g) {
  if (f.d() != g.d())
    throw std::invalid_argument("sup_metric: dimension mismatch");
  if (f.n() == g.n()) {
    // Common grid, difference linear on each cell: grid points suffice.
    const int d = f.d();
    const double sf = 1.0 / std::sqrt(static_cast<double>(f.n()));
    double best = 0.0;
    for (std::int64_t k = 0; k <= f.n(); ++k) {
      const auto a = f.source().at(k);
      const auto b = g.source().at(k);
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        const double diff = (static_cast<double>(a[i]) -
                             static_cast<double>(b[i])) *
                            sf;
        s += diff * diff;
      }
      best = std::max(best, s);
    }
    return std::sqrt(best);
  }
  // Union grid of both breakpoint sets.
  double best = 0.0;
  std::int64_t kf = 0, kg = 0;
  while (kf <= f.n() || kg <= g.n()) {
    const double tf = static_cast<double>(kf) / static_cast<double>(f.n());
    const double tg = static_cast<double>(kg) / static_cast<double>(g.n());
    double t;
    if (kf <= f.n() && (kg > g.n() || tf <= tg)) {
      t = tf;
      ++kf;
      if (tf == tg) ++kg;
    } else {
      t = tg;
      ++kg;
    }
    best = std::max(best, norm_diff_at(f, g, std::min(t, 1.0)));
  }
  return best;
}

double sup_norm(const ScaledPath& f) {
  const int d = f.d();
  const double sf = 1.0 / std::sqrt(static_cast<double>(f.n()));
  double best = 0.0;
  for (std::int64_t k = 0; k <= f.n(); ++k) {
    const auto a = f.source().at(k);
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      const double x = static_cast<double>(a[i]) * sf;
      s += x * x;
    }
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double apply_functional(const Functional& f, const ScaledPath& path) {
  switch (f.kind) {
    case Functional::Kind::EndpointCoordinate: {
      if (f.coordinate < 0 || f.coordinate >= path.d())
        throw std::invalid_argument("functional: coordinate out of range");
      const auto end = path.source().at(path.n());
      return static_cast<double>(end[f.coordinate]) /
             std::sqrt(static_cast<double>(path.n()));
    }
    case Functional::Kind::EndpointNorm: {
      const auto end = path.source().at(path.n());
      double s = 0.0;
      for (int i = 0; i < path.d(); ++i) {
        const double x = static_cast<double>(end[i]);
        s += x * x;
      }
      return std::sqrt(s / static_cast<double>(path.n()));
    }
    case Functional::Kind::SupNorm:
      return sup_norm(path);
    case Functional::Kind::Marginal: {
      if (f.coordinate < 0 || f.coordinate >= path.d())
        throw std::invalid_argument("functional: coordinate out of range");
      return path.eval(f.t)[static_cast<std::size_t>(f.coordinate)];
    }
  }
  throw std::logic_error("functional: unknown kind");
}

std::vector<double> extract_functional(const std::vector<ScaledPath>& paths,
                                       const Functional& f) {
  if (paths.empty())
    throw std::invalid_argument("extract_functional: empty input");
  std::vector<double> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(apply_functional(f, p));
  return out;
}

}  // namespace condwalk
