#include "dshift/dyadic_interval.hpp"

#include <charconv>
#include <ostream>

#include "dshift/errors.hpp"

namespace dshift {

DyadicInterval::DyadicInterval(std::int64_t level, BigInt index)
    : level_(level), index_(std::move(index)) {
  if (sgn(index_) < 0) throw DomainError("dyadic interval index must be nonnegative");
}

DyadicInterval DyadicInterval::containing(const DyadicRational& x, std::int64_t level) {
  if (x.sign() < 0) throw DomainError("point " + x.to_string() + " is not in R+");
  return DyadicInterval(level, x.floor_scaled(level));
}

bool DyadicInterval::contains(const DyadicRational& x) const {
  return x.sign() >= 0 && x.floor_scaled(level_) == index_;
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.level_ < level_) return false;
  BigInt k;
  mpz_fdiv_q_2exp(k.get_mpz_t(), other.index_.get_mpz_t(),
                  static_cast<mp_bitcnt_t>(other.level_ - level_));
  return k == index_;
}

bool DyadicInterval::disjoint(const DyadicInterval& other) const {
  return !contains(other) && !other.contains(*this);
}

DyadicInterval DyadicInterval::ancestor(std::int64_t n) const {
  if (n < 0) throw DomainError("ancestor order must be nonnegative");
  BigInt k;
  mpz_fdiv_q_2exp(k.get_mpz_t(), index_.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return DyadicInterval(level_ - n, std::move(k));
}

std::optional<DyadicInterval> DyadicInterval::ancestor_at_level(std::int64_t level) const {
  if (level > level_) return std::nullopt;
  return ancestor(level_ - level);
}

DyadicInterval DyadicInterval::child(int side) const {
  return DyadicInterval(level_ + 1, 2 * index_ + side);
}

DyadicInterval DyadicInterval::quarter(int q) const {
  return DyadicInterval(level_ + 2, 4 * index_ + q);
}

DyadicInterval DyadicInterval::sibling() const {
  BigInt k = index_;
  if (mpz_odd_p(k.get_mpz_t())) {
    k -= 1;
  } else {
    k += 1;
  }
  return DyadicInterval(level_, std::move(k));
}

std::string DyadicInterval::to_string() const {
  return "(" + std::to_string(level_) + "," + index_.get_str() + ")";
}

std::string DyadicInterval::to_range_string() const {
  return "[" + left().to_string() + "," + right().to_string() + ")";
}

DyadicInterval DyadicInterval::parse(std::string_view text) {
  if (text.size() >= 5 && text.front() == '[' && text.back() == ')') {
    std::string_view body = text.substr(1, text.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("interval missing ',': " + std::string(text));
    const DyadicRational a = DyadicRational::parse(body.substr(0, comma));
    const DyadicRational b = DyadicRational::parse(body.substr(comma + 1));
    const DyadicRational size = b - a;
    // A dyadic length has numerator 1; the left end must sit on that grid.
    if (size.sign() <= 0 || size.numerator() != 1) {
      throw ParseError("not a dyadic interval: '" + std::string(text) + "'");
    }
    const std::int64_t level = size.exponent();
    if (a.times_pow2(level).exponent() > 0) {
      throw ParseError("not a dyadic interval: '" + std::string(text) + "'");
    }
    return DyadicInterval(level, a.floor_scaled(level));
  }
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') {
    throw ParseError("interval must look like (j,k) or [a,b): '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(1, text.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) throw ParseError("interval missing ',': " + std::string(text));
  std::int64_t level = 0;
  auto lv = body.substr(0, comma);
  auto [ptr, ec] = std::from_chars(lv.data(), lv.data() + lv.size(), level);
  if (ec != std::errc() || ptr != lv.data() + lv.size()) {
    throw ParseError("malformed level in " + std::string(text));
  }
  DyadicRational k = DyadicRational::parse(body.substr(comma + 1));
  if (k.exponent() > 0) throw ParseError("interval index must be an integer: " + std::string(text));
  return DyadicInterval(level, k.floor_scaled(0));
}

std::ostream& operator<<(std::ostream& os, const DyadicInterval& interval) {
  return os << interval.to_string();
}

}  // namespace dshift
