#include "dshift/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dshift/errors.hpp"
#include "dshift/metric.hpp"
#include "dshift/parallel.hpp"

namespace dshift {

namespace {

// Moves every coefficient c_I to +c_I on I- and -c_I on I+.
HaarSpectrum shift_spectrum(const HaarSpectrum& in,
                            const std::function<bool(const DyadicInterval&)>& keep) {
  HaarSpectrum out;
  out.scale_floor = in.scale_floor + 1;
  out.scale_cap = in.scale_cap;
  for (const auto& [interval, c] : in.coefficients) {
    if (c.is_zero() || !keep(interval)) continue;
    out.coefficients.emplace(interval.left_child(), c);
    out.coefficients.emplace(interval.right_child(), -c);
  }
  return out;
}

GridFunction shifted_output(const HaarSpectrum& spectrum,
                            const std::function<bool(const DyadicInterval&)>& keep) {
  HaarSpectrum shifted = shift_spectrum(spectrum, keep);
  const int cap = static_cast<int>(spectrum.scale_cap);
  const int resolution = static_cast<int>(spectrum.scale_floor) + 2;
  return inverse_haar(shifted, GridFunction::zeros(cap, resolution));
}

// Smallest s >= 0 with x < 2^s.
std::int64_t enclosing_scale(const DyadicRational& x) { return bit_length(x.floor_scaled(0)); }

using PointRule = std::function<ExactReal(const DyadicRational&)>;

GridFunction tabulate(int support_level, int resolution_level, const PointRule& rule) {
  std::vector<DyadicRational> points = cell_points(support_level, resolution_level);
  std::vector<ExactReal> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) { values[i] = rule(points[i]); });
  return GridFunction(support_level, resolution_level, std::move(values));
}

struct QuadratureGrid {
  int support;
  int resolution;
};

QuadratureGrid quadrature_grid(const GridFunction& f, const TruncationWindow& w) {
  const std::int64_t support = std::max<std::int64_t>(f.support_level(), w.m - 1);
  const std::int64_t resolution = std::max<std::int64_t>(f.resolution_level() + 1, 2 - w.l);
  if (support + resolution > GridFunction::kMaxCellBits) {
    throw ResolutionError("window " + w.to_string() + " needs a 2^" +
                          std::to_string(support + resolution) + "-cell output grid");
  }
  return {static_cast<int>(support), static_cast<int>(resolution)};
}

ExactReal metric_value(const CellIntegrator& integ, const TruncationWindow& w,
                       const DyadicRational& x) {
  ExactReal total;
  for (std::int64_t s = w.l; s < w.m; ++s) {
    const DyadicInterval r = ring(x, s);
    ExactReal mass = integ.integral(r);
    if (mass.is_zero()) continue;
    total += kernel_P(x, r.left()) * mass;
  }
  return total;
}

ExactReal q_value(const CellIntegrator& integ, const TruncationWindow& w, const DyadicRational& x) {
  ExactReal total;
  ExactReal inner = integ.integral(DyadicInterval::containing(x, -w.l + 1));
  if (!inner.is_zero()) total += kernel_Q(w, x, ring(x, w.l - 1).left()) * inner;
  for (std::int64_t s = w.l; s < w.m; ++s) {
    const DyadicInterval r = ring(x, s);
    ExactReal mass = integ.integral(r);
    if (mass.is_zero()) continue;
    total += kernel_Q(w, x, r.left()) * mass;
  }
  return total;
}

ExactReal sup_minus_inf(const std::vector<ExactReal>& values) {
  ExactReal hi;
  ExactReal lo;
  for (const auto& v : values) {
    hi = max(hi, v);
    lo = min(lo, v);
  }
  return hi - lo;
}

ExactReal maximal_scale_impl(const GridFunction& f, const CellIntegrator& integ,
                             const DyadicRational& x) {
  require_point(x);
  // Window sums are differences of prefix sums over scales; scales at or
  // below 2^-N see a constant f and contribute nothing.
  const std::int64_t top = std::max<std::int64_t>(f.support_level(), enclosing_scale(x)) + 2;
  std::vector<ExactReal> prefix{ExactReal()};
  ExactReal running;
  for (std::int64_t s = -f.resolution_level() + 1; s <= top; ++s) {
    const DyadicInterval I = DyadicInterval::containing(x, -s);
    ExactReal d = integ.integral(I.left_child()) - integ.integral(I.right_child());
    if (d.is_zero()) continue;
    running += (d * ExactReal::sqrt2()).times_pow2(-s) * ExactReal(theta2(I, x));
    prefix.push_back(running);
  }
  // Above `top` the intervals are [0, 2^s) with x and the support in the
  // leftmost quarter: terms sqrt2 2^-s (integral of f), a geometric tail.
  ExactReal total = integ.integral(DyadicInterval(-f.support_level(), BigInt(0)));
  if (!total.is_zero()) prefix.push_back(running + (total * ExactReal::sqrt2()).times_pow2(-top));
  return sup_minus_inf(prefix);
}

ExactReal maximal_metric_impl(const GridFunction& f, const CellIntegrator& integ,
                              const DyadicRational& x) {
  require_point(x);
  if (x.is_zero()) return ExactReal();
  // r_s = P(x, y_s) * (integral of f over ring s). For s <= s0 the ring sits in
  // x's cell of f and x is the left end of every such cell, so r_s halves
  // with each step down: sum_{s <= s0} r_s = 2 r_{s0}.
  const std::int64_t s0 = std::min<std::int64_t>(1 - x.exponent(), -f.resolution_level());
  const std::int64_t s_hi = std::max<std::int64_t>(f.support_level(), enclosing_scale(x)) + 1;
  auto ring_term = [&](std::int64_t s) {
    const DyadicInterval r = ring(x, s);
    ExactReal mass = integ.integral(r);
    return mass.is_zero() ? mass : kernel_P(x, r.left()) * mass;
  };
  std::vector<ExactReal> partial{ExactReal()};
  ExactReal running = ring_term(s0).times_pow2(1);
  partial.push_back(running);
  for (std::int64_t s = s0 + 1; s < s_hi; ++s) {
    running += ring_term(s);
    partial.push_back(running);
  }
  return sup_minus_inf(partial);
}

ExactReal maximal_dyadic_impl(const GridFunction& f, const CellIntegrator& abs_integ,
                              const DyadicRational& x) {
  require_point(x);
  // Averages over [0, 2^j) beyond both x and the support only halve.
  const std::int64_t coarsest = -std::max<std::int64_t>(f.support_level(), enclosing_scale(x));
  ExactReal best;
  for (std::int64_t j = f.resolution_level(); j >= coarsest; --j) {
    best = max(best, abs_integ.integral(DyadicInterval::containing(x, j)).times_pow2(j));
  }
  return best;
}

}  // namespace

OperatorResult apply_shift_spectral(const GridFunction& f, std::int64_t scale_cap) {
  HaarSpectrum spectrum = forward_haar(f, scale_cap);
  return {shifted_output(spectrum, [](const DyadicInterval&) { return true; }),
          OperatorPath::spectral, std::nullopt};
}

OperatorResult apply_scale_truncated(const GridFunction& f, const TruncationWindow& w) {
  if (w.l < -f.resolution_level() + 1) {
    throw ResolutionError("window " + w.to_string() + " reaches scales below the grid (N=" +
                          std::to_string(f.resolution_level()) + ")");
  }
  const std::int64_t cap = std::max<std::int64_t>(f.support_level(), w.m - 1);
  HaarSpectrum spectrum = forward_haar(f, cap);
  auto in_window = [&](const DyadicInterval& I) { return w.contains_scale(-I.level()); };
  return {shifted_output(spectrum, in_window), OperatorPath::spectral, w};
}

OperatorResult apply_metric_truncated(const GridFunction& f, const TruncationWindow& w) {
  const QuadratureGrid grid = quadrature_grid(f, w);
  CellIntegrator integ(f);
  GridFunction out = tabulate(grid.support, grid.resolution,
                              [&](const DyadicRational& x) { return metric_value(integ, w, x); });
  return {std::move(out), OperatorPath::quadrature, w};
}

OperatorResult apply_Q(const GridFunction& f, const TruncationWindow& w) {
  const QuadratureGrid grid = quadrature_grid(f, w);
  CellIntegrator integ(f);
  GridFunction out = tabulate(grid.support, grid.resolution,
                              [&](const DyadicRational& x) { return q_value(integ, w, x); });
  return {std::move(out), OperatorPath::quadrature, w};
}

ExactReal maximal_scale(const GridFunction& f, const DyadicRational& x) {
  return maximal_scale_impl(f, CellIntegrator(f), x);
}

ExactReal maximal_metric(const GridFunction& f, const DyadicRational& x) {
  return maximal_metric_impl(f, CellIntegrator(f), x);
}

ExactReal maximal_dyadic(const GridFunction& f, const DyadicRational& x) {
  return maximal_dyadic_impl(f, CellIntegrator(f, true), x);
}

const char* maximal_name(MaximalKind kind) {
  switch (kind) {
    case MaximalKind::scale:
      return "scale_maximal";
    case MaximalKind::metric:
      return "metric_maximal";
    case MaximalKind::dyadic:
      return "dyadic_maximal";
  }
  return "?";
}

std::vector<ExactReal> maximal_at(const GridFunction& f, MaximalKind kind,
                                  const std::vector<DyadicRational>& points) {
  CellIntegrator integ(f, kind == MaximalKind::dyadic);
  std::vector<ExactReal> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    switch (kind) {
      case MaximalKind::scale:
        out[i] = maximal_scale_impl(f, integ, points[i]);
        break;
      case MaximalKind::metric:
        out[i] = maximal_metric_impl(f, integ, points[i]);
        break;
      case MaximalKind::dyadic:
        out[i] = maximal_dyadic_impl(f, integ, points[i]);
        break;
    }
  });
  return out;
}

std::vector<DyadicRational> cell_points(int support_level, int resolution_level) {
  const int bits = support_level + resolution_level;
  if (bits < 0 || bits > GridFunction::kMaxCellBits) {
    throw DomainError("cannot enumerate 2^" + std::to_string(bits) + " cells");
  }
  std::vector<DyadicRational> points;
  points.reserve(std::size_t{1} << bits);
  for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) {
    points.emplace_back(BigInt(static_cast<unsigned long>(i)), resolution_level);
  }
  return points;
}

double lp_norm(const GridFunction& f, double p, const WeightFunction* w) {
  if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1");
  const double cell = std::ldexp(1.0, -f.resolution_level());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const double v = std::fabs(f[i].to_double());
    if (v == 0.0) continue;
    const double mass = w ? w->mass(f.cell(i)) : cell;
    sum += std::pow(v, p) * mass;
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace dshift
