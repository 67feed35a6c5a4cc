#include "dshift/dyadic_rational.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "dshift/errors.hpp"

namespace dshift {

namespace {

BigInt shifted_left(const BigInt& n, std::int64_t k) {
  BigInt out;
  mpz_mul_2exp(out.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return out;
}

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("malformed integer '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ParseError("malformed integer '" + std::string(text) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits, 10);
}

std::int64_t parse_int64(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("malformed exponent '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::int64_t bit_length(const BigInt& n) {
  if (sgn(n) == 0) return 0;
  return static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

DyadicRational::DyadicRational(long value) : num_(value), exp_(0) { normalize(); }

DyadicRational::DyadicRational(BigInt numerator, std::int64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalize();
}

DyadicRational DyadicRational::pow2(std::int64_t k) { return DyadicRational(BigInt(1), -k); }

void DyadicRational::normalize() {
  if (sgn(num_) == 0) {
    exp_ = 0;
    return;
  }
  mp_bitcnt_t zeros = mpz_scan1(num_.get_mpz_t(), 0);
  if (zeros > 0) {
    mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), zeros);
    exp_ -= static_cast<std::int64_t>(zeros);
  }
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational out = *this;
  out.num_ = -out.num_;
  return out;
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (exp_ >= other.exp_) {
    num_ += shifted_left(other.num_, exp_ - other.exp_);
  } else {
    num_ = shifted_left(num_, other.exp_ - exp_) + other.num_;
    exp_ = other.exp_;
  }
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& other) { return *this += -other; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& other) {
  num_ *= other.num_;
  exp_ += other.exp_;
  if (sgn(num_) == 0) exp_ = 0;
  return *this;
}

DyadicRational DyadicRational::times_pow2(std::int64_t k) const {
  if (is_zero()) return *this;
  DyadicRational out = *this;
  out.exp_ -= k;
  return out;
}

DyadicRational DyadicRational::abs() const { return sign() < 0 ? -*this : *this; }

BigInt DyadicRational::floor_scaled(std::int64_t j) const {
  std::int64_t shift = j - exp_;
  if (shift >= 0) return shifted_left(num_, shift);
  BigInt out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  return out;
}

double DyadicRational::to_double() const {
  if (is_zero()) return 0.0;
  BigInt mag = ::abs(num_);
  std::int64_t bits = bit_length(mag);
  std::int64_t drop = bits > 53 ? bits - 53 : 0;
  if (drop > 0) {
    BigInt q, r;
    mpz_fdiv_q_2exp(q.get_mpz_t(), mag.get_mpz_t(), drop);
    mpz_fdiv_r_2exp(r.get_mpz_t(), mag.get_mpz_t(), drop);
    BigInt half = shifted_left(BigInt(1), drop - 1);
    if (r > half || (r == half && mpz_odd_p(q.get_mpz_t()))) q += 1;
    mag = q;
  }
  double out = std::ldexp(mag.get_d(), static_cast<int>(drop - exp_));
  return sign() < 0 ? -out : out;
}

std::string DyadicRational::to_string() const {
  if (exp_ < 0) return shifted_left(num_, -exp_).get_str() + "/2^0";
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

DyadicRational DyadicRational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return DyadicRational(parse_integer(text), 0);
  BigInt numerator = parse_integer(text.substr(0, slash));
  std::string_view denom = text.substr(slash + 1);
  if (denom.size() > 2 && denom.substr(0, 2) == "2^") {
    return DyadicRational(numerator, parse_int64(denom.substr(2)));
  }
  BigInt d = parse_integer(denom);
  if (sgn(d) <= 0 || mpz_popcount(d.get_mpz_t()) != 1) {
    throw ParseError("denominator of '" + std::string(text) + "' is not a power of two");
  }
  return DyadicRational(numerator, bit_length(d) - 1);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  int sa = a.sign();
  int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  std::int64_t e = std::max(a.exp_, b.exp_);
  int c = cmp(shifted_left(a.num_, e - a.exp_), shifted_left(b.num_, e - b.exp_));
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& value) {
  return os << value.to_string();
}

}  // namespace dshift
