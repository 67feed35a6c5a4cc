#include "dshift/kernel.hpp"

#include <algorithm>

#include "dshift/errors.hpp"
#include "dshift/metric.hpp"

namespace dshift {

TruncationWindow::TruncationWindow(std::int64_t l_, std::int64_t m_) : l(l_), m(m_) {
  if (l >= m) {
    throw DomainError("truncation window needs l < m (got l=" + std::to_string(l) +
                      ", m=" + std::to_string(m) + ")");
  }
}

std::string TruncationWindow::to_string() const {
  return "[" + std::to_string(l) + "," + std::to_string(m) + ")";
}

Band band_of(const TruncationWindow& w, std::int64_t s) {
  if (s < w.l) return Band::below;
  if (s < w.m) return Band::band;
  return Band::above;
}

const char* band_name(Band b) {
  switch (b) {
    case Band::below:
      return "below";
    case Band::band:
      return "band";
    case Band::above:
      return "above";
  }
  return "?";
}

int theta1(const DyadicInterval& J, const DyadicRational& y) {
  if (!J.contains(y)) return 0;
  BigInt half = y.floor_scaled(J.level() + 1);
  return mpz_odd_p(half.get_mpz_t()) ? -1 : 1;
}

int theta2(const DyadicInterval& J, const DyadicRational& x) {
  if (!J.contains(x)) return 0;
  BigInt quarter = x.floor_scaled(J.level() + 2);
  unsigned long q = mpz_fdiv_ui(quarter.get_mpz_t(), 4);
  return (q == 0 || q == 3) ? 1 : -1;
}

int omega_term(const DyadicInterval& J, const DyadicRational& x, const DyadicRational& y) {
  return theta1(J, y) * theta2(J, x);
}

AncestorSeries::AncestorSeries(const DyadicRational& x, const DyadicRational& y)
    : x_(x), y_(y), base_(smallest_common_interval(x, y)), stable_from_(0) {
  // I^(n) = [0, 2^(n-L)) with max(x,y) < 2^(n-L-2)  iff  floor(max 2^(L+2)) < 2^n.
  const DyadicRational& top = std::max(x, y);
  stable_from_ = bit_length(top.floor_scaled(base_.level() + 2));
}

int AncestorSeries::term(std::int64_t n) const {
  if (n >= stable_from_) return 1;
  return omega_term(base_.ancestor(n), x_, y_);
}

DyadicRational AncestorSeries::partial_sum(std::int64_t from, std::int64_t to) const {
  DyadicRational sum;
  const std::int64_t finite_to = std::min(to, stable_from_);
  for (std::int64_t n = from; n < finite_to; ++n) {
    int t = term(n);
    if (t != 0) sum += DyadicRational(t).times_pow2(-n);
  }
  // Past the threshold the terms are all +1: sum 2^-n over [a, to).
  const std::int64_t a = std::max(from, stable_from_);
  if (a < to) sum += DyadicRational::pow2(-a + 1) - DyadicRational::pow2(-to + 1);
  return sum;
}

DyadicRational AncestorSeries::tail_sum(std::int64_t from) const {
  DyadicRational sum;
  for (std::int64_t n = from; n < stable_from_; ++n) {
    int t = term(n);
    if (t != 0) sum += DyadicRational(t).times_pow2(-n);
  }
  return sum + DyadicRational::pow2(-std::max(from, stable_from_) + 1);
}

ExactReal omega(const DyadicRational& x, const DyadicRational& y) {
  AncestorSeries series(x, y);
  return ExactReal(DyadicRational(0), series.tail_sum(0));
}

ExactReal omega_partial(const DyadicRational& x, const DyadicRational& y, std::int64_t terms) {
  if (terms < 1) throw DomainError("omega_partial needs at least one term");
  AncestorSeries series(x, y);
  return ExactReal(DyadicRational(0), series.partial_sum(0, terms));
}

ExactReal kernel_P(const DyadicRational& x, const DyadicRational& y) {
  AncestorSeries series(x, y);
  // 1/delta = 2^L for I(x,y) at level L.
  return ExactReal(DyadicRational(0), series.tail_sum(0).times_pow2(series.base().level()));
}

ExactReal kernel_metric_truncated(const TruncationWindow& w, const DyadicRational& x,
                                  const DyadicRational& y) {
  std::int64_t s = delta_log2(x, y);
  return w.contains_scale(s) ? kernel_P(x, y) : ExactReal();
}

ExactReal kernel_Q(const TruncationWindow& w, const DyadicRational& x, const DyadicRational& y) {
  AncestorSeries series(x, y);
  const std::int64_t s = -series.base().level();
  switch (band_of(w, s)) {
    case Band::above:
      return ExactReal();
    case Band::below: {
      // Scales 2^j, l <= j < m, all above delta: the level-j interval is I^(j-s).
      DyadicRational sum;
      for (std::int64_t j = w.l; j < w.m; ++j) {
        int t = series.term(j - s);
        if (t != 0) sum += DyadicRational(t).times_pow2(-j);
      }
      return ExactReal(DyadicRational(0), sum);
    }
    case Band::band:
      return ExactReal(DyadicRational(0), -series.tail_sum(w.m - s).times_pow2(-s));
  }
  return ExactReal();
}

ExactReal kernel_scale_truncated(const TruncationWindow& w, const DyadicRational& x,
                                 const DyadicRational& y) {
  require_point(x);
  require_point(y);
  // Only intervals holding x contribute; at scale 2^s that is x's level-(-s) cell.
  DyadicRational sum;
  for (std::int64_t s = w.l; s < w.m; ++s) {
    DyadicInterval K = DyadicInterval::containing(x, -s);
    int t = theta1(K, y);
    if (t == 0) continue;
    t *= theta2(K, x);
    sum += DyadicRational(t).times_pow2(-s);
  }
  return ExactReal(DyadicRational(0), sum);
}

ExactReal integral_Q_over_y(const TruncationWindow& w, const DyadicRational& x) {
  require_point(x);
  // Ball delta < 2^l is x's cell of measure 2^(l-1); Q is constant there and
  // equals its value on ring l-1. Ring s has measure 2^(s-1).
  ExactReal total;
  for (std::int64_t s = w.l - 1; s < w.m; ++s) {
    DyadicRational y = ring(x, s).left();
    ExactReal q = kernel_Q(w, x, y);
    if (q.is_zero()) continue;
    total += q.times_pow2(s == w.l - 1 ? s : s - 1);
  }
  return total;
}

KernelRecord evaluate_kernel(const DyadicRational& x, const DyadicRational& y,
                             const std::optional<TruncationWindow>& window) {
  require_point(x);
  require_point(y);
  KernelRecord rec{x, y, delta(x, y), {}, {}, window, {}, {}, {}, {}};
  if (x == y) {
    if (!window) throw EqualPointsError();
    rec.scale_truncated = kernel_scale_truncated(*window, x, y);
    return rec;
  }
  rec.omega = omega(x, y);
  rec.P = kernel_P(x, y);
  if (window) {
    rec.branch = band_of(*window, delta_log2(x, y));
    rec.metric_truncated = kernel_metric_truncated(*window, x, y);
    rec.scale_truncated = kernel_scale_truncated(*window, x, y);
    rec.Q = kernel_Q(*window, x, y);
  }
  return rec;
}

}  // namespace dshift
