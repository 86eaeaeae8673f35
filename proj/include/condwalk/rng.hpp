#pragma once

#include <cstdint>

namespace condwalk {

// Deterministic pseudo-random stream: PCG XSL-RR 128/64 ("pcg64", O'Neill,
// "PCG: A Family of Simple Fast Space-Efficient Statistically Good Algorithms
// for Random Number Generation", 2014). The (seed, stream_id) pair is expanded
// through splitmix64 into the 128-bit init state and sequence-selection
// constant, so nearby seeds and stream ids still start in unrelated states.
// Distinct stream ids select distinct odd LCG increments, giving statistically
// independent sequences; the same pair reproduces the same sequence on any
// platform with 128-bit integer support.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t s = seed;
    const u128 init_state = (u128(splitmix64(s)) << 64) | splitmix64(s);
    std::uint64_t t = stream_id;
    // stream_id enters the low word directly so every id maps to a distinct
    // increment even after scrambling the high word.
    const u128 init_seq = (u128(splitmix64(t)) << 64) | stream_id;

    state_ = 0;
    inc_ = (init_seq << 1) | 1;
    step();
    state_ += init_state;
    step();
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    step();
    const std::uint64_t xored =
        static_cast<std::uint64_t>(state_ >> 64) ^
        static_cast<std::uint64_t>(state_);
    const unsigned rot = static_cast<unsigned>(state_ >> 122);
    return (xored >> rot) | (xored << ((-rot) & 63u));
  }

  // Uniform on [0, 1) with 53 random bits; consumes exactly one 64-bit draw.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  static constexpr const char* identity() {
    return "pcg64-xsl-rr-128/64 (splitmix64-seeded) v1";
  }

private:
  using u128 = unsigned __int128;

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  void step() {
    constexpr u128 mult =
        (u128(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fccf645ULL;
    state_ = state_ * mult + inc_;
  }

  u128 state_ = 0;
  u128 inc_ = 1;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
};

}  // namespace condwalk
