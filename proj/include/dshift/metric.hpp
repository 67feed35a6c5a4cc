#pragma once

#include "dshift/dyadic_interval.hpp"
#include "dshift/dyadic_rational.hpp"

namespace dshift {

/// Throws DomainError unless x >= 0.
void require_point(const DyadicRational& x);

/// I(x,y): the smallest dyadic interval holding both points. Throws
/// EqualPointsError when x == y.
DyadicInterval smallest_common_interval(const DyadicRational& x, const DyadicRational& y);

/// Dyadic ultrametric: |I(x,y)|, and 0 on the diagonal.
DyadicRational delta(const DyadicRational& x, const DyadicRational& y);

/// log2 delta(x,y) for x != y, i.e. minus the level of I(x,y).
std::int64_t delta_log2(const DyadicRational& x, const DyadicRational& y);

/// The delta-ball {y : delta(x,y) < r}, which is the dyadic interval I^m_k(x)
/// with 2^-m < r <= 2^(-m+1). Requires r > 0.
DyadicInterval ball(const DyadicRational& x, const DyadicRational& r);

/// The half of the level-(-s) interval around x that does not hold x, i.e.
/// the set {y : delta(x,y) = 2^s}.
DyadicInterval ring(const DyadicRational& x, std::int64_t s);

}  // namespace dshift
