#include "dshift/metric.hpp"

#include <algorithm>

#include "dshift/errors.hpp"

namespace dshift {

void require_point(const DyadicRational& x) {
  if (x.sign() < 0) throw DomainError("point " + x.to_string() + " is not in R+");
}

DyadicInterval smallest_common_interval(const DyadicRational& x, const DyadicRational& y) {
  require_point(x);
  require_point(y);
  if (x == y) throw EqualPointsError();
  // At a level where both points are integers, the common ancestor sits as
  // many levels up as the highest differing bit.
  std::int64_t e = std::max(x.exponent(), y.exponent());
  BigInt a = x.floor_scaled(e);
  BigInt b = y.floor_scaled(e);
  BigInt diff = a ^ b;
  std::int64_t t = bit_length(diff);
  BigInt k;
  mpz_fdiv_q_2exp(k.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  return DyadicInterval(e - t, std::move(k));
}

DyadicRational delta(const DyadicRational& x, const DyadicRational& y) {
  require_point(x);
  require_point(y);
  if (x == y) return DyadicRational(0);
  return smallest_common_interval(x, y).measure();
}

std::int64_t delta_log2(const DyadicRational& x, const DyadicRational& y) {
  return -smallest_common_interval(x, y).level();
}

DyadicInterval ball(const DyadicRational& x, const DyadicRational& r) {
  require_point(x);
  if (r.sign() <= 0) throw DomainError("ball radius must be positive");
  // r = n 2^-e with n odd: r is a power of two iff n == 1.
  std::int64_t m = (r.numerator() == 1) ? r.exponent() + 1
                                        : r.exponent() - bit_length(r.numerator()) + 1;
  return DyadicInterval::containing(x, m);
}

DyadicInterval ring(const DyadicRational& x, std::int64_t s) {
  return DyadicInterval::containing(x, -s + 1).sibling();
}

}  // namespace dshift
