#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "dshift/dyadic_rational.hpp"

namespace dshift {

/// Element a + b*sqrt(2) of Q_dyadic[sqrt 2].
///
/// Haar normalisations 2^(j/2), kernel values and Haar coefficients of step
/// functions all live here, so every identity between them can be checked
/// with exact equality. Ordering is exact as well (sign of a + b*sqrt 2 is
/// decided by comparing a^2 with 2 b^2).
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(long value) : rational_(value) {}  // NOLINT
  ExactReal(DyadicRational rational) : rational_(std::move(rational)) {}  // NOLINT
  ExactReal(DyadicRational rational, DyadicRational sqrt2_part)
      : rational_(std::move(rational)), sqrt2_(std::move(sqrt2_part)) {}

  static ExactReal sqrt2() { return ExactReal(DyadicRational(0), DyadicRational(1)); }
  /// 2^(t/2).
  static ExactReal pow2_half(std::int64_t t);

  const DyadicRational& rational_part() const { return rational_; }
  const DyadicRational& sqrt2_part() const { return sqrt2_; }

  int sign() const;
  bool is_zero() const { return rational_.is_zero() && sqrt2_.is_zero(); }
  ExactReal abs() const { return sign() < 0 ? -*this : *this; }

  ExactReal operator-() const { return ExactReal(-rational_, -sqrt2_); }
  ExactReal& operator+=(const ExactReal& other);
  ExactReal& operator-=(const ExactReal& other);
  ExactReal& operator*=(const ExactReal& other);

  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(ExactReal a, const ExactReal& b) { return a *= b; }

  /// value * 2^k
  ExactReal times_pow2(std::int64_t k) const;
  /// value * 2^(t/2)
  ExactReal times_pow2_half(std::int64_t t) const;

  /// Nearest double to the long double evaluation of a + b*sqrt 2; advisory only.
  double to_double() const;

  /// "a+b*sqrt2" (or "a-c*sqrt2"); components print as bare integers when
  /// integral and as "n/2^e" otherwise.
  std::string to_string() const;
  static ExactReal parse(std::string_view text);

  friend bool operator==(const ExactReal& a, const ExactReal& b) {
    return a.rational_ == b.rational_ && a.sqrt2_ == b.sqrt2_;
  }
  friend std::strong_ordering operator<=>(const ExactReal& a, const ExactReal& b) {
    return (a - b).sign() <=> 0;
  }

 private:
  DyadicRational rational_;
  DyadicRational sqrt2_;
};

std::ostream& operator<<(std::ostream& os, const ExactReal& value);

inline const ExactReal& max(const ExactReal& a, const ExactReal& b) { return a < b ? b : a; }
inline const ExactReal& min(const ExactReal& a, const ExactReal& b) { return b < a ? b : a; }

}  // namespace dshift
