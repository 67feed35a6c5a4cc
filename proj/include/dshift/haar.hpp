#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dshift/dyadic_interval.hpp"
#include "dshift/exact_real.hpp"

namespace dshift {

/// Step function on [0, 2^M), constant on cells of size 2^-N, zero outside.
///
/// f(x) = values[floor(x 2^N)] for x in [0, 2^M). Equality is equality of
/// the represented functions, so grids of different shape compare equal
/// when one is a refinement or zero-extension of the other.
class GridFunction {
 public:
  static constexpr int kMaxCellBits = 26;

  GridFunction(int support_level, int resolution_level, std::vector<ExactReal> values);

  static GridFunction zeros(int support_level, int resolution_level);
  static GridFunction indicator(const DyadicInterval& interval, int support_level,
                                int resolution_level);
  /// h_I sampled on the grid; I must be inside [0, 2^M) with |I| > 2^-N.
  static GridFunction haar(const DyadicInterval& interval, int support_level,
                           int resolution_level);

  int support_level() const { return support_; }
  int resolution_level() const { return resolution_; }
  std::size_t cell_count() const { return values_.size(); }
  const std::vector<ExactReal>& values() const { return values_; }
  const ExactReal& operator[](std::size_t cell) const { return values_[cell]; }
  DyadicInterval cell(std::size_t i) const;

  ExactReal value_at(const DyadicRational& x) const;
  /// Exact integral over a dyadic interval (of any size).
  ExactReal integral(const DyadicInterval& interval) const;
  ExactReal l2_norm_squared() const;
  /// Exact L1 norm, the integral of |f|.
  ExactReal l1_norm() const;
  ExactReal sup_norm() const;
  bool is_zero() const;

  /// Same function on a finer grid.
  GridFunction refined(int resolution_level) const;
  /// Same function on a larger support.
  GridFunction extended(int support_level) const;
  GridFunction reshaped(int support_level, int resolution_level) const;

  GridFunction scaled(const ExactReal& factor) const;
  GridFunction abs() const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend bool operator==(const GridFunction& a, const GridFunction& b);

 private:
  int support_;
  int resolution_;
  std::vector<ExactReal> values_;
};

/// Prefix sums over the cells of a GridFunction: O(1) integrals over any
/// dyadic interval.
class CellIntegrator {
 public:
  explicit CellIntegrator(const GridFunction& f, bool absolute = false);

  ExactReal integral(const DyadicInterval& interval) const;
  /// Value on the cell that holds `interval` (which must be no larger than a cell).
  const GridFunction& function() const { return *f_; }

 private:
  const GridFunction* f_;
  bool absolute_;
  std::vector<ExactReal> prefix_;
};

/// Haar coefficients <f, h_I> of a step function.
///
/// Keys are the intervals with 2^-N < |I| <= 2^scale_cap that lie inside
/// [0, 2^M), plus the tower intervals [0, 2^j) for M < j <= scale_cap. The
/// part of f not seen by these is its average over [0, 2^scale_cap), kept in
/// `coarse_average`.
struct HaarSpectrum {
  std::map<DyadicInterval, ExactReal> coefficients;
  /// Finest level present (intervals of measure 2^-scale_floor).
  std::int64_t scale_floor = 0;
  /// Coarsest interval is [0, 2^scale_cap).
  std::int64_t scale_cap = 0;
  ExactReal coarse_average;

  ExactReal coefficient(const DyadicInterval& interval) const;
  ExactReal energy() const;
  /// The coarse average as a GridFunction on [0, 2^scale_cap).
  GridFunction coarse_residual() const;
};

/// h_I(x) = |I|^-1/2 (X_{I-}(x) - X_{I+}(x)).
ExactReal haar_eval(const DyadicInterval& interval, const DyadicRational& x);

/// Pyramid of pairwise cell sums. Requires scale_cap >= support_level(f).
HaarSpectrum forward_haar(const GridFunction& f, std::int64_t scale_cap);

/// coarse_residual + sum c_I h_I on [0, 2^scale_cap) at resolution
/// scale_floor + 1. The residual may be coarser than that grid but not finer.
GridFunction inverse_haar(const HaarSpectrum& spectrum, const GridFunction& coarse_residual);

}  // namespace dshift
