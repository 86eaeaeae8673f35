#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace condwalk {

// Exact rational number on checked 64-bit integers. Always stored in lowest
// terms with a positive denominator. Operations never round; if a result
// cannot be represented after gcd reduction, std::overflow_error is thrown.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "num/den", reduced; integers print with an explicit /1 so that the
  // serialized form round-trips through parse() unchanged.
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b) {
    // Reduce by gcd of denominators first so intermediate products stay small.
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t bs = b.den_ / g;
    const std::int64_t num =
        checked_add(checked_mul(a.num_, bs), checked_mul(b.num_, a.den_ / g));
    const std::int64_t den = checked_mul(a.den_, bs);
    return Rational(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = checked_neg(a.num_);
    r.den_ = a.den_;
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce before multiplying.
    const std::int64_t g1 = std::gcd(abs64(a.num_), b.den_);
    const std::int64_t g2 = std::gcd(abs64(b.num_), a.den_);
    Rational r;
    r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
    r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    Rational inv;
    if (b.num_ < 0) {
      inv.num_ = checked_neg(b.den_);
      inv.den_ = checked_neg(b.num_);
    } else {
      inv.num_ = b.den_;
      inv.den_ = b.num_;
    }
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    // Both sides are reduced, so equality is componentwise.
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  friend Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }

private:
  static std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
      throw std::overflow_error("Rational: 64-bit overflow in addition");
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
      throw std::overflow_error("Rational: 64-bit overflow in multiplication");
    return r;
  }
  static std::int64_t checked_neg(std::int64_t a) {
    if (a == INT64_MIN)
      throw std::overflow_error("Rational: 64-bit overflow in negation");
    return -a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    const std::int64_t g = std::gcd(abs64(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace condwalk
