#include "dshift/weight_function.hpp"

#include <cmath>
#include <limits>

#include "dshift/errors.hpp"

namespace dshift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed-shape pairwise summation of term(first..first+count-1).
template <class Term>
double pairwise_sum(std::size_t first, std::size_t count, const Term& term) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = first; i < first + count; ++i) s += term(i);
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(first, half, term) + pairwise_sum(first + half, count - half, term);
}

}  // namespace

double power_mass(double a, double b, double gamma) {
  if (!(a >= 0.0 && a < b)) throw DomainError("power_mass needs 0 <= a < b");
  if (gamma == 0.0) return b - a;
  const double g = gamma + 1.0;
  if (a == 0.0) return g > 0.0 ? std::pow(b, g) / g : kInf;
  if (g == 0.0) return std::log1p((b - a) / a);
  // a^g (exp(g log(b/a)) - 1) / g, accurate when [a, b) is short.
  return std::pow(a, g) * std::expm1(g * std::log1p((b - a) / a)) / g;
}

WeightFunction WeightFunction::step(GridFunction values) {
  for (const auto& v : values.values()) {
    if (v.sign() <= 0) throw DomainError("step weight must be positive on every cell");
  }
  WeightFunction w;
  w.kind_ = Kind::step;
  w.domain_cap_ = values.support_level();
  w.values_ = std::move(values);
  return w;
}

WeightFunction WeightFunction::power(double alpha, int domain_cap, std::optional<int> depth) {
  if (!(alpha > -1.0)) {
    throw DomainError("power weight x^alpha is not locally integrable for alpha <= -1");
  }
  if (depth && *depth + domain_cap < 0) {
    throw DomainError("discretization depth is coarser than the weight's domain");
  }
  WeightFunction w;
  w.kind_ = Kind::power;
  w.alpha_ = alpha;
  w.domain_cap_ = domain_cap;
  w.depth_ = depth;
  return w;
}

ExactReal WeightFunction::exact_mass(const DyadicInterval& interval) const {
  if (kind_ != Kind::step) throw DomainError("exact masses exist only for step weights");
  return values_->integral(interval);
}

double WeightFunction::cell_power_mass(const DyadicInterval& cell, double exponent) const {
  const double a = cell.left().to_double();
  const double b = cell.right().to_double();
  if (!depth_) return power_mass(a, b, alpha_ * exponent);
  const double average = power_mass(a, b, alpha_) / (b - a);
  return std::pow(average, exponent) * (b - a);
}

double WeightFunction::mass(const DyadicInterval& interval, double exponent) const {
  if (kind_ == Kind::step) {
    const DyadicInterval domain(-domain_cap_, BigInt(0));
    if (!domain.contains(interval)) {
      throw DomainError("interval " + interval.to_string() + " leaves the weight's domain");
    }
    if (exponent == 1.0) return exact_mass(interval).to_double();
    const GridFunction& g = *values_;
    const int n = g.resolution_level();
    if (interval.level() >= n) {
      const double v = g.value_at(interval.left()).to_double();
      return std::pow(v, exponent) * interval.measure().to_double();
    }
    const std::size_t count = std::size_t{1} << (n - interval.level());
    const std::size_t first = interval.index().get_ui() * count;
    const double cell = std::ldexp(1.0, -n);
    return pairwise_sum(first, count, [&](std::size_t i) {
      return std::pow(g[i].to_double(), exponent) * cell;
    });
  }

  if (!depth_) return cell_power_mass(interval, exponent);
  const int d = *depth_;
  if (interval.level() >= d) {
    const DyadicInterval cell = *interval.ancestor_at_level(d);
    const double a = cell.left().to_double();
    const double b = cell.right().to_double();
    const double average = power_mass(a, b, alpha_) / (b - a);
    return std::pow(average, exponent) * interval.measure().to_double();
  }
  const int span = static_cast<int>(d - interval.level());
  if (span > 40) throw DomainError("interval too large for the discretization depth");
  const std::size_t count = std::size_t{1} << span;
  const double first = std::ldexp(interval.index().get_d(), span);
  return pairwise_sum(0, count, [&](std::size_t i) {
    const double a = std::ldexp(first + static_cast<double>(i), -d);
    const double b = std::ldexp(first + static_cast<double>(i) + 1.0, -d);
    const double average = power_mass(a, b, alpha_) / (b - a);
    return std::pow(average, exponent) * (b - a);
  });
}

}  // namespace dshift
