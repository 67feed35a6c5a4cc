#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dshift/dyadic_rational.hpp"

namespace dshift {

/// I^j_k = [k 2^-j, (k+1) 2^-j) with k >= 0.
///
/// Level j holds intervals of measure 2^-j, so negative levels are the large
/// intervals. Two intervals are always nested or disjoint.
class DyadicInterval {
 public:
  DyadicInterval(std::int64_t level, BigInt index);

  /// The level-j interval holding x (x >= 0).
  static DyadicInterval containing(const DyadicRational& x, std::int64_t level);

  std::int64_t level() const { return level_; }
  const BigInt& index() const { return index_; }

  DyadicRational measure() const { return DyadicRational::pow2(-level_); }
  DyadicRational left() const { return DyadicRational(index_, level_); }
  DyadicRational right() const { return DyadicRational(index_ + 1, level_); }
  DyadicRational midpoint() const { return DyadicRational(2 * index_ + 1, level_ + 1); }

  bool contains(const DyadicRational& x) const;
  bool contains(const DyadicInterval& other) const;
  bool disjoint(const DyadicInterval& other) const;

  DyadicInterval parent() const { return ancestor(1); }
  /// I^(n): the ancestor of measure 2^n |I|.
  DyadicInterval ancestor(std::int64_t n) const;
  /// The ancestor at `level`, absent when `level` is finer than this interval.
  std::optional<DyadicInterval> ancestor_at_level(std::int64_t level) const;

  /// side 0 is I-, side 1 is I+.
  DyadicInterval child(int side) const;
  DyadicInterval left_child() const { return child(0); }
  DyadicInterval right_child() const { return child(1); }
  /// q = 0..3 for I--, I-+, I+-, I++.
  DyadicInterval quarter(int q) const;
  DyadicInterval sibling() const;

  /// "(j,k)"
  std::string to_string() const;
  /// "[a,b)" with endpoints in "n/2^e" form.
  std::string to_range_string() const;
  /// Accepts "(j,k)".
  static DyadicInterval parse(std::string_view text);

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.level_ == b.level_ && a.index_ == b.index_;
  }
  friend std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b) {
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    return cmp(a.index_, b.index_) <=> 0;
  }

 private:
  std::int64_t level_;
  BigInt index_;
};

std::ostream& operator<<(std::ostream& os, const DyadicInterval& interval);

}  // namespace dshift
