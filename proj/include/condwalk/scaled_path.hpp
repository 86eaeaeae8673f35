#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "condwalk/walk.hpp"

namespace condwalk {

// Diffusively scaled, piecewise-linear path on [0,1]: value at k/n is
// S_k / sqrt(n), linearly interpolated between grid points. Only the first n
// steps of the source walk are used.
class ScaledPath {
public:
  ScaledPath(std::shared_ptr<const WalkPath> source, std::int64_t n);
  ScaledPath(WalkPath source, std::int64_t n)
      : ScaledPath(std::make_shared<const WalkPath>(std::move(source)), n) {}

  std::int64_t n() const { return n_; }
  int d() const { return source_->d; }
  const WalkPath& source() const { return *source_; }

  // Y_n(t) for t in [0,1].
  std::vector<double> eval(double t) const;

private:
  std::shared_ptr<const WalkPath> source_;
  std::int64_t n_;
};

// sup over t in [0,1] of the Euclidean norm |f(t) - g(t)|. The difference is
// piecewise linear on the union of the two grids and |h|^2 is convex on each
// cell, so the supremum is attained at a grid point of the union.
double sup_metric(const ScaledPath& f, const ScaledPath& g);

// sup_metric against the zero path.
double sup_norm(const ScaledPath& f);

struct Functional {
  enum class Kind { EndpointCoordinate, EndpointNorm, SupNorm, Marginal };
  Kind kind = Kind::EndpointCoordinate;
  int coordinate = 0;  // EndpointCoordinate, Marginal
  double t = 1.0;      // Marginal
};

double apply_functional(const Functional& f, const ScaledPath& path);

std::vector<double> extract_functional(const std::vector<ScaledPath>& paths,
                                       const Functional& f);

}  // namespace condwalk
