#include "dshift/exact_real.hpp"

#include <cmath>
#include <ostream>

#include "dshift/errors.hpp"

namespace dshift {

namespace {

std::string component_string(const DyadicRational& value) {
  if (value.exponent() <= 0) {
    std::string s = value.to_string();
    return s.substr(0, s.find('/'));
  }
  return value.to_string();
}

}  // namespace

ExactReal ExactReal::pow2_half(std::int64_t t) { return ExactReal(1).times_pow2_half(t); }

int ExactReal::sign() const {
  int sa = rational_.sign();
  int sb = sqrt2_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: |a| vs |b| sqrt 2, never equal for nonzero b.
  DyadicRational a2 = rational_ * rational_;
  DyadicRational b2 = (sqrt2_ * sqrt2_).times_pow2(1);
  return a2 > b2 ? sa : sb;
}

ExactReal& ExactReal::operator+=(const ExactReal& other) {
  rational_ += other.rational_;
  sqrt2_ += other.sqrt2_;
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& other) {
  rational_ -= other.rational_;
  sqrt2_ -= other.sqrt2_;
  return *this;
}

ExactReal& ExactReal::operator*=(const ExactReal& other) {
  // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
  DyadicRational a = rational_ * other.rational_ + (sqrt2_ * other.sqrt2_).times_pow2(1);
  DyadicRational b = rational_ * other.sqrt2_ + sqrt2_ * other.rational_;
  rational_ = std::move(a);
  sqrt2_ = std::move(b);
  return *this;
}

ExactReal ExactReal::times_pow2(std::int64_t k) const {
  return ExactReal(rational_.times_pow2(k), sqrt2_.times_pow2(k));
}

ExactReal ExactReal::times_pow2_half(std::int64_t t) const {
  if (t % 2 == 0) return times_pow2(t / 2);
  // 2^(t/2) = 2^((t-1)/2) sqrt 2 and (a + b r) r = 2b + a r.
  std::int64_t k = (t - 1) / 2;
  return ExactReal(sqrt2_.times_pow2(1 + k), rational_.times_pow2(k));
}

double ExactReal::to_double() const {
  long double a = rational_.to_double();
  long double b = sqrt2_.to_double();
  return static_cast<double>(a + b * std::sqrt(2.0L));
}

std::string ExactReal::to_string() const {
  std::string out = component_string(rational_);
  if (sqrt2_.sign() < 0) {
    out += "-" + component_string(-sqrt2_);
  } else {
    out += "+" + component_string(sqrt2_);
  }
  return out + "*sqrt2";
}

ExactReal ExactReal::parse(std::string_view text) {
  constexpr std::string_view suffix = "*sqrt2";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix) {
    return ExactReal(DyadicRational::parse(text));
  }
  std::string_view body = text.substr(0, text.size() - suffix.size());
  // The separator is the last '+' or '-' that is not a leading sign and not
  // part of an exponent ("2^-3").
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '^') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    return ExactReal(DyadicRational(0), DyadicRational::parse(body));
  }
  DyadicRational a = DyadicRational::parse(body.substr(0, split));
  DyadicRational b = DyadicRational::parse(body.substr(split + 1));
  if (body[split] == '-') b = -b;
  return ExactReal(std::move(a), std::move(b));
}

std::ostream& operator<<(std::ostream& os, const ExactReal& value) {
  return os << value.to_string();
}

}  // namespace dshift
