#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dshift/dyadic_interval.hpp"
#include "dshift/haar.hpp"

namespace dshift {

/// Positive weight on [0, 2^domain_cap) that knows its own interval masses.
///
/// Step weights are positive GridFunctions. Power weights are x^alpha with
/// closed-form masses; with a discretization depth D they are replaced by
/// their averages over cells of size 2^-D.
class WeightFunction {
 public:
  enum class Kind { step, power };

  static WeightFunction step(GridFunction values);
  static WeightFunction power(double alpha, int domain_cap, std::optional<int> depth = std::nullopt);

  Kind kind() const { return kind_; }
  const char* kind_name() const { return kind_ == Kind::step ? "step" : "power"; }
  double alpha() const { return alpha_; }
  int domain_cap() const { return domain_cap_; }
  std::optional<int> depth() const { return depth_; }
  const GridFunction& step_values() const { return *values_; }

  /// Integral of w^exponent over `interval`; +inf when it diverges.
  double mass(const DyadicInterval& interval, double exponent = 1.0) const;
  /// Exact w(I) for step weights.
  ExactReal exact_mass(const DyadicInterval& interval) const;

 private:
  WeightFunction() = default;
  double cell_power_mass(const DyadicInterval& cell, double exponent) const;

  Kind kind_ = Kind::power;
  double alpha_ = 0.0;
  int domain_cap_ = 0;
  std::optional<int> depth_;
  std::optional<GridFunction> values_;
};

/// Integral of x^gamma over [a, b), 0 <= a < b; +inf when it diverges at 0.
double power_mass(double a, double b, double gamma);

}  // namespace dshift
