#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dshift/dyadic_interval.hpp"
#include "dshift/exact_real.hpp"

namespace dshift {

/// Window l < m: metric band 2^l <= delta < 2^m, or scales 2^l <= |I| < 2^m.
struct TruncationWindow {
  std::int64_t l;
  std::int64_t m;

  TruncationWindow(std::int64_t l_, std::int64_t m_);
  /// Whether a scale 2^s lies in [2^l, 2^m).
  bool contains_scale(std::int64_t s) const { return l <= s && s < m; }
  std::string to_string() const;

  friend bool operator==(const TruncationWindow&, const TruncationWindow&) = default;
};

/// Position of delta(x,y) = 2^s relative to a window.
enum class Band { below, band, above };

Band band_of(const TruncationWindow& w, std::int64_t s);
const char* band_name(Band b);

/// +1 on J-, -1 on J+, 0 outside J.
int theta1(const DyadicInterval& J, const DyadicRational& y);

/// +1 on the outer quarters J--, J++, -1 on the inner quarters, 0 outside J.
/// Equals sqrt(|J|/2) (h_{J-}(x) - h_{J+}(x)).
int theta2(const DyadicInterval& J, const DyadicRational& x);

/// Omega_J(x,y) = theta1(J,y) theta2(J,x).
int omega_term(const DyadicInterval& J, const DyadicRational& x, const DyadicRational& y);

/// The sequence term(n) = Omega_{I^(n)}(x,y) over the ancestors of I(x,y).
///
/// From `stable_from()` on, every ancestor is a tower interval [0, 2^j) with
/// both points in its leftmost quarter, so all later terms equal +1.
class AncestorSeries {
 public:
  AncestorSeries(const DyadicRational& x, const DyadicRational& y);

  const DyadicInterval& base() const { return base_; }
  std::int64_t stable_from() const { return stable_from_; }
  int term(std::int64_t n) const;
  /// sum_{n >= from} 2^-n term(n), exact.
  DyadicRational tail_sum(std::int64_t from) const;
  /// sum_{from <= n < to} 2^-n term(n).
  DyadicRational partial_sum(std::int64_t from, std::int64_t to) const;

 private:
  DyadicRational x_;
  DyadicRational y_;
  DyadicInterval base_;
  std::int64_t stable_from_;
};

/// Omega(x,y) = sqrt2 sum_{m>=0} 2^-m Omega_{I^(m)}(x,y), exact.
ExactReal omega(const DyadicRational& x, const DyadicRational& y);

/// The first `terms` terms of the omega series.
ExactReal omega_partial(const DyadicRational& x, const DyadicRational& y, std::int64_t terms);

/// P(x,y) = Omega(x,y) / delta(x,y).
ExactReal kernel_P(const DyadicRational& x, const DyadicRational& y);

/// P(x,y) when 2^l <= delta(x,y) < 2^m, else 0.
ExactReal kernel_metric_truncated(const TruncationWindow& w, const DyadicRational& x,
                                  const DyadicRational& y);

/// Corrector Q_{l,m} = P^{l,m} - P_{l,m} in closed form.
ExactReal kernel_Q(const TruncationWindow& w, const DyadicRational& x, const DyadicRational& y);

/// sum over I with 2^l <= |I| < 2^m of h_I(y) (h_{I-}(x) - h_{I+}(x)). Total.
ExactReal kernel_scale_truncated(const TruncationWindow& w, const DyadicRational& x,
                                 const DyadicRational& y);

/// Exact integral of y -> Q_{l,m}(x,y).
///
/// Q(x,.) is constant on the ball delta < 2^l and on each ring delta = 2^s, so
/// the integral is a finite sum over l-1 <= s < m.
ExactReal integral_Q_over_y(const TruncationWindow& w, const DyadicRational& x);

/// Everything the CLI prints for one (x, y) evaluation.
struct KernelRecord {
  DyadicRational x;
  DyadicRational y;
  DyadicRational delta;
  std::optional<ExactReal> omega;
  std::optional<ExactReal> P;
  std::optional<TruncationWindow> window;
  std::optional<Band> branch;
  std::optional<ExactReal> metric_truncated;
  std::optional<ExactReal> scale_truncated;
  std::optional<ExactReal> Q;
};

/// On the diagonal only the scale truncation is defined; a window is then
/// required and the other fields stay empty.
KernelRecord evaluate_kernel(const DyadicRational& x, const DyadicRational& y,
                             const std::optional<TruncationWindow>& window);

}  // namespace dshift
