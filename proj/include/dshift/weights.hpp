#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dshift/dyadic_interval.hpp"
#include "dshift/operators.hpp"
#include "dshift/weight_function.hpp"

namespace dshift {

/// Finite family of dyadic intervals: levels [level_min, level_max], and at
/// each level the indices [index_min, index_max] clipped to the weight's domain
/// (all of it when no index range is given).
struct ApScan {
  std::int64_t level_min = 0;
  std::int64_t level_max = 0;
  std::optional<std::uint64_t> index_min;
  std::optional<std::uint64_t> index_max;

  /// Only the intervals [0, 2^-j), level_min <= j <= level_max.
  static ApScan tower(std::int64_t level_min, std::int64_t level_max);
};

struct ApReport {
  double p = 0.0;
  /// Largest A_p product found; +inf when some mass diverges.
  double constant = 0.0;
  DyadicInterval witness{0, BigInt(0)};
  std::int64_t level_min = 0;
  std::int64_t level_max = 0;
  std::string kind;
  std::optional<double> alpha;
  std::size_t intervals_scanned = 0;
  /// Smallest product seen; >= 1 up to rounding.
  double min_product = 0.0;

  bool infinite() const;
};

/// (w(I)/|I|) (sigma(I)/|I|)^(p-1) with sigma = w^(-1/(p-1)); +inf on divergence.
double ap_product(const WeightFunction& w, double p, const DyadicInterval& interval);

/// Maximum A_p product over the scanned family. Ties go to the smallest
/// (level, index).
ApReport ap_constant(const WeightFunction& w, double p, const ApScan& scan);

/// x^alpha on [0, 2^domain_cap), optionally discretized at cells of size 2^-depth.
WeightFunction power_weight(double alpha, int domain_cap, std::optional<int> depth = std::nullopt);

/// What testing f = h_{I0} w^(-1/(p-1)) against an operator bound says about I0.
struct NecessityCertificate {
  /// A_p product of I0.
  double product = 0.0;
  /// operator_norm_bound^p / 2^(p/2): the most the product can be.
  double threshold = 0.0;
  bool consistent = false;
};

NecessityCertificate necessity_lower_bound(const WeightFunction& w, double p,
                                           const DyadicInterval& I0, double operator_norm_bound);

/// ||T f||_{L^p(w)} / ||f||_{L^p(w)} with T evaluated at the left endpoints of
/// the cells of [0, 2^max(M, domain_cap)) at resolution N+1.
double weighted_ratio_experiment(const GridFunction& f, const WeightFunction& w, double p,
                                 MaximalKind op);

/// The test function h_{[0, 2^-j)} sigma on [0, 1) at resolution N, with sigma
/// replaced by its cell averages rounded to multiples of 2^-40.
GridFunction necessity_test_function(const WeightFunction& w, double p, int j, int resolution);

/// One row of the power-weight sweep.
struct SweepRow {
  double alpha = 0.0;
  double p = 0.0;
  int depth = 0;
  ApReport ap;
  double max_ratio = 0.0;
  /// Tower A_p product of the undiscretized weight at level 0.
  double closed_form_tower = 0.0;
};

/// A_p over the tower [0, 2^-j), 0 <= j <= depth, of x^alpha discretized at
/// `depth`, and the largest scale-maximal ratio over the necessity family.
SweepRow sweep_row(double alpha, double p, int depth);

}  // namespace dshift
