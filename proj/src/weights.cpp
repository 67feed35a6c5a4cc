#include "dshift/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dshift/errors.hpp"
#include "dshift/parallel.hpp"

namespace dshift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("A_p needs a finite p > 1");
}

}  // namespace

ApScan ApScan::tower(std::int64_t level_min, std::int64_t level_max) {
  ApScan scan;
  scan.level_min = level_min;
  scan.level_max = level_max;
  scan.index_min = 0;
  scan.index_max = 0;
  return scan;
}

bool ApReport::infinite() const { return std::isinf(constant); }

double ap_product(const WeightFunction& w, double p, const DyadicInterval& interval) {
  require_p(p);
  const double size = interval.measure().to_double();
  const double w_mass = w.mass(interval, 1.0);
  const double sigma_mass = w.mass(interval, -1.0 / (p - 1.0));
  if (!std::isfinite(w_mass) || !std::isfinite(sigma_mass)) return kInf;
  return (w_mass / size) * std::pow(sigma_mass / size, p - 1.0);
}

ApReport ap_constant(const WeightFunction& w, double p, const ApScan& scan) {
  require_p(p);
  if (scan.level_min > scan.level_max) throw DomainError("A_p scan has an empty level range");
  std::vector<DyadicInterval> family;
  for (std::int64_t j = scan.level_min; j <= scan.level_max; ++j) {
    const std::int64_t bits = j + w.domain_cap();
    if (bits < 0) continue;  // larger than the domain
    if (bits > GridFunction::kMaxCellBits) throw DomainError("A_p scan is too large");
    const std::uint64_t last_in_domain = (std::uint64_t{1} << bits) - 1;
    const std::uint64_t lo = scan.index_min.value_or(0);
    const std::uint64_t hi = std::min(scan.index_max.value_or(last_in_domain), last_in_domain);
    for (std::uint64_t k = lo; k <= hi; ++k) {
      family.emplace_back(j, BigInt(static_cast<unsigned long>(k)));
    }
    if (family.size() > (std::size_t{1} << GridFunction::kMaxCellBits)) {
      throw DomainError("A_p scan is too large");
    }
  }
  if (family.empty()) throw DomainError("A_p scan holds no interval inside the weight's domain");

  std::vector<double> products(family.size());
  parallel_for(family.size(), [&](std::size_t i) { products[i] = ap_product(w, p, family[i]); });

  ApReport report;
  report.p = p;
  report.level_min = scan.level_min;
  report.level_max = scan.level_max;
  report.kind = w.kind_name();
  if (w.kind() == WeightFunction::Kind::power) report.alpha = w.alpha();
  report.intervals_scanned = family.size();
  std::size_t best = 0;
  report.min_product = products[0];
  for (std::size_t i = 1; i < products.size(); ++i) {
    if (products[i] > products[best]) best = i;
    report.min_product = std::min(report.min_product, products[i]);
  }
  report.constant = products[best];
  report.witness = family[best];
  return report;
}

WeightFunction power_weight(double alpha, int domain_cap, std::optional<int> depth) {
  return WeightFunction::power(alpha, domain_cap, depth);
}

NecessityCertificate necessity_lower_bound(const WeightFunction& w, double p,
                                           const DyadicInterval& I0, double operator_norm_bound) {
  require_p(p);
  NecessityCertificate cert;
  cert.product = ap_product(w, p, I0);
  if (std::isinf(cert.product)) {
    throw DomainError("w^(-1/(p-1)) has infinite mass on " + I0.to_string());
  }
  cert.threshold = std::pow(operator_norm_bound, p) / std::pow(2.0, p / 2.0);
  cert.consistent = cert.product <= cert.threshold;
  return cert;
}

double weighted_ratio_experiment(const GridFunction& f, const WeightFunction& w, double p,
                                 MaximalKind op) {
  require_p(p);
  if (f.is_zero()) throw ZeroInputError();
  const int support = std::max(f.support_level(), w.domain_cap());
  const int resolution = f.resolution_level() + 1;
  std::vector<ExactReal> values = maximal_at(f, op, cell_points(support, resolution));
  GridFunction tf(support, resolution, std::move(values));
  return lp_norm(tf, p, &w) / lp_norm(f, p, &w);
}

GridFunction necessity_test_function(const WeightFunction& w, double p, int j, int resolution) {
  require_p(p);
  if (j < 0 || j >= resolution) {
    throw ResolutionError("h_[0,2^-j) needs 0 <= j < resolution");
  }
  GridFunction f = GridFunction::zeros(0, resolution);
  const std::size_t active = std::size_t{1} << (resolution - j);
  std::vector<ExactReal> values(f.cell_count());
  const ExactReal height = ExactReal::pow2_half(j);
  for (std::size_t i = 0; i < active; ++i) {
    const DyadicInterval cell = f.cell(i);
    const double sigma = w.mass(cell, -1.0 / (p - 1.0)) / cell.measure().to_double();
    if (!std::isfinite(sigma)) {
      throw DomainError("w^(-1/(p-1)) has infinite mass on " + cell.to_string());
    }
    const DyadicRational rounded(BigInt(std::nearbyint(std::ldexp(sigma, 40))), 40);
    values[i] = (i < active / 2 ? height : -height) * ExactReal(rounded);
  }
  return GridFunction(0, resolution, std::move(values));
}

SweepRow sweep_row(double alpha, double p, int depth) {
  if (depth < 0) throw DomainError("sweep depth must be nonnegative");
  SweepRow row;
  row.alpha = alpha;
  row.p = p;
  row.depth = depth;
  const WeightFunction w = power_weight(alpha, 0, depth);
  row.ap = ap_constant(w, p, ApScan::tower(0, depth));
  row.closed_form_tower = ap_product(power_weight(alpha, 0), p, DyadicInterval(0, BigInt(0)));
  const int resolution = std::max(1, std::min(depth, 10));
  for (int j = 0; j < resolution; ++j) {
    GridFunction f = necessity_test_function(w, p, j, resolution);
    if (f.is_zero()) continue;
    row.max_ratio =
        std::max(row.max_ratio, weighted_ratio_experiment(f, w, p, MaximalKind::scale));
  }
  return row;
}

}  // namespace dshift
