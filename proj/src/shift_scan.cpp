#include "condwalk/shift_scan.hpp"

#include <stdexcept>

namespace condwalk {

ScanResult scan_shift_time(const WalkPath& path, const Subspace& A,
                           std::int64_t n, AvoidanceMode mode) {
  if (n < 1) throw std::invalid_argument("scan_shift_time: n must be >= 1");
  if (path.d != A.d())
    throw std::invalid_argument("scan_shift_time: dimension mismatch");
  ShiftScanner scanner(A, n, mode, path.at(0));
  const std::int64_t m = path.length();
  for (std::int64_t k = 0; k < m; ++k)
    if (const auto found = scanner.advance(path.at(k), path.at(k + 1)))
      return {ScanOutcome::Found, *found};
  return {scanner.pending() ? ScanOutcome::InsufficientData
                            : ScanOutcome::NotFoundInPath,
          -1};
}

}  // namespace condwalk
