#include "condwalk/subspace.hpp"

#include <numeric>
#include <stdexcept>

namespace condwalk {

namespace {

using i128 = __int128;

std::int64_t to_i64_checked(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("Subspace: row reduction overflow");
  return static_cast<std::int64_t>(v);
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

i128 dot(std::span<const std::int64_t> row, std::span<const std::int64_t> x) {
  i128 acc = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    acc += static_cast<i128>(row[i]) * x[i];
  return acc;
}

}  // namespace

Subspace Subspace::create(
    int d, const std::vector<std::vector<std::int64_t>>& rows) {
  if (d < 1) throw std::invalid_argument("Subspace: d must be >= 1");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != d)
      throw std::invalid_argument("Subspace: row has wrong length");

  std::vector<std::vector<std::int64_t>> m = rows;
  const std::size_t nrows = m.size();
  int rank = 0;
  for (int col = 0; col < d && rank < static_cast<int>(nrows); ++col) {
    std::size_t pivot = rank;
    while (pivot < nrows && m[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(m[rank], m[pivot]);
    const std::int64_t a = m[rank][col];
    for (std::size_t r = rank + 1; r < nrows; ++r) {
      const std::int64_t b = m[r][col];
      if (b == 0) continue;
      const std::int64_t g = std::gcd(abs64(a), abs64(b));
      const i128 ca = a / g, cb = b / g;
      for (int j = 0; j < d; ++j)
        m[r][j] = to_i64_checked(ca * m[r][j] - cb * m[rank][j]);
    }
    ++rank;
  }

  if (rank == 0)
    throw std::invalid_argument(
        "Subspace: constraint matrix has rank 0 (A would be all of R^d)");

  // Canonical form: divide each pivot row by the gcd of its entries and make
  // the leading nonzero coefficient positive.
  Subspace A;
  A.d_ = d;
  A.rank_ = rank;
  A.rows_.reserve(static_cast<std::size_t>(rank) * d);
  for (int r = 0; r < rank; ++r) {
    std::int64_t g = 0;
    for (int j = 0; j < d; ++j) g = std::gcd(g, abs64(m[r][j]));
    std::int64_t lead = 0;
    for (int j = 0; j < d && lead == 0; ++j) lead = m[r][j];
    const std::int64_t s = lead < 0 ? -g : g;
    for (int j = 0; j < d; ++j) A.rows_.push_back(m[r][j] / s);
  }
  return A;
}

std::vector<std::vector<std::int64_t>> Subspace::rows() const {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(rank_);
  for (int r = 0; r < rank_; ++r) {
    const auto ro = row(r);
    out.emplace_back(ro.begin(), ro.end());
  }
  return out;
}

bool Subspace::contains(std::span<const std::int64_t> x) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("Subspace: point has wrong dimension");
  for (int r = 0; r < rank_; ++r)
    if (dot(row(r), x) != 0) return false;
  return true;
}

bool segment_hits(const Subspace& A, std::span<const std::int64_t> x,
                  std::span<const std::int64_t> y, SegmentInterval interval) {
  // Constraint i restricts t to: all of [0,1] when u_i = w_i = 0, nothing
  // when the linear function (1-t)u_i + t w_i has no root in [0,1], or the
  // single rational root u_i / (u_i - w_i). A hit needs one common root (or
  // an all-trivial set of constraints, meaning the segment lies inside A).
  bool have_root = false;
  i128 root_num = 0, root_den = 1;  // root_den > 0
  for (int r = 0; r < A.rank(); ++r) {
    i128 u = dot(A.row(r), x);
    const i128 w = dot(A.row(r), y);
    if (u == 0 && w == 0) continue;
    i128 den = u - w;
    if (den == 0) return false;  // constant and nonzero on the segment
    if (den < 0) {
      den = -den;
      u = -u;
    }
    if (u < 0 || u > den) return false;  // root outside [0,1]
    if (!have_root) {
      root_num = u;
      root_den = den;
      have_root = true;
    } else if (root_num * den != u * root_den) {
      return false;  // two constraints with distinct roots
    }
  }
  if (!have_root) return true;  // whole segment inside A
  if (interval == SegmentInterval::Closed) return true;
  return root_num > 0;  // (0,1] excludes the root at t = 0
}

bool window_avoids(const Subspace& A, const WalkPath& path, std::int64_t a,
                   std::int64_t b, AvoidanceMode mode) {
  if (a < 0 || a >= b || b > path.length())
    throw std::invalid_argument("window_avoids: need 0 <= a < b <= length");
  if (mode == AvoidanceMode::LatticeOnly) {
    for (std::int64_t k = a + 1; k <= b; ++k)
      if (A.contains(path.at(k))) return false;
    return true;
  }
  for (std::int64_t k = a; k < b; ++k)
    if (segment_hits(A, path.at(k), path.at(k + 1),
                     SegmentInterval::OpenClosed))
      return false;
  return true;
}

Subspace subspace_origin(int d) {
  std::vector<std::vector<std::int64_t>> rows(
      d, std::vector<std::int64_t>(d, 0));
  for (int i = 0; i < d; ++i) rows[i][i] = 1;
  return Subspace::create(d, rows);
}

Subspace subspace_diagonal2() { return Subspace::create(2, {{1, -1}}); }

Subspace subspace_collision2d() {
  return Subspace::create(4, {{1, 0, -1, 0}, {0, 1, 0, -1}});
}

}  // namespace condwalk
