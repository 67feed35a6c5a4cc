#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dshift {

using BigInt = mpz_class;

/// Exact value numerator * 2^(-exponent).
///
/// Canonical form: the numerator is odd, or the value is zero and the
/// exponent is 0. Structural equality is therefore value equality. The
/// exponent may be negative (4 is stored as 1 * 2^2, exponent -2).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(long value);  // NOLINT: integer literals are dyadic
  DyadicRational(BigInt numerator, std::int64_t exponent);

  /// 2^k.
  static DyadicRational pow2(std::int64_t k);

  const BigInt& numerator() const { return num_; }
  std::int64_t exponent() const { return exp_; }

  int sign() const { return sgn(num_); }
  bool is_zero() const { return sign() == 0; }

  DyadicRational operator-() const;
  DyadicRational& operator+=(const DyadicRational& other);
  DyadicRational& operator-=(const DyadicRational& other);
  DyadicRational& operator*=(const DyadicRational& other);

  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

  /// value * 2^k
  DyadicRational times_pow2(std::int64_t k) const;
  DyadicRational abs() const;

  /// floor(value * 2^j); the index of the level-j dyadic cell holding the value.
  BigInt floor_scaled(std::int64_t j) const;

  /// Round-to-nearest double.
  double to_double() const;

  /// "n/2^e" with e >= 0 (values with a negative canonical exponent print
  /// with their integer numerator over 2^0).
  std::string to_string() const;

  /// Accepts "n", "n/2^e" (e may be negative) and "n/d" with d a power of two.
  static DyadicRational parse(std::string_view text);

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  void normalize();

  BigInt num_ = 0;
  std::int64_t exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& value);

/// Number of bits of |n|; 0 for n = 0.
std::int64_t bit_length(const BigInt& n);

}  // namespace dshift
