#include "dshift/haar.hpp"

#include <algorithm>
#include <string>

#include "dshift/errors.hpp"

namespace dshift {

namespace {

std::size_t cells_for(int support_level, int resolution_level) {
  int bits = support_level + resolution_level;
  if (bits < 1) {
    throw DomainError("grid needs support_level + resolution_level >= 1 (got " +
                      std::to_string(bits) + ")");
  }
  if (bits > GridFunction::kMaxCellBits) {
    throw DomainError("grid with 2^" + std::to_string(bits) + " cells is too large");
  }
  return std::size_t{1} << bits;
}

// Clamp a BigInt cell index into [0, limit].
std::size_t clamp_index(const BigInt& k, std::size_t limit) {
  if (sgn(k) <= 0) return 0;
  if (cmp(k, static_cast<unsigned long>(limit)) >= 0) return limit;
  return k.get_ui();
}

}  // namespace

GridFunction::GridFunction(int support_level, int resolution_level, std::vector<ExactReal> values)
    : support_(support_level), resolution_(resolution_level), values_(std::move(values)) {
  std::size_t expected = cells_for(support_level, resolution_level);
  if (values_.size() != expected) {
    throw DomainError("grid expects " + std::to_string(expected) + " values, got " +
                      std::to_string(values_.size()));
  }
}

GridFunction GridFunction::zeros(int support_level, int resolution_level) {
  return GridFunction(support_level, resolution_level,
                      std::vector<ExactReal>(cells_for(support_level, resolution_level)));
}

GridFunction GridFunction::indicator(const DyadicInterval& interval, int support_level,
                                     int resolution_level) {
  GridFunction f = zeros(support_level, resolution_level);
  for (std::size_t i = 0; i < f.values_.size(); ++i) {
    if (interval.contains(f.cell(i))) f.values_[i] = 1;
  }
  return f;
}

GridFunction GridFunction::haar(const DyadicInterval& interval, int support_level,
                                int resolution_level) {
  if (interval.level() >= resolution_level) {
    throw ResolutionError("h_" + interval.to_string() + " is not resolved at level " +
                          std::to_string(resolution_level));
  }
  GridFunction f = zeros(support_level, resolution_level);
  for (std::size_t i = 0; i < f.values_.size(); ++i) {
    f.values_[i] = haar_eval(interval, f.cell(i).left());
  }
  return f;
}

DyadicInterval GridFunction::cell(std::size_t i) const {
  return DyadicInterval(resolution_, BigInt(static_cast<unsigned long>(i)));
}

ExactReal GridFunction::value_at(const DyadicRational& x) const {
  if (x.sign() < 0) throw DomainError("point " + x.to_string() + " is not in R+");
  BigInt k = x.floor_scaled(resolution_);
  std::size_t i = clamp_index(k, values_.size());
  return i < values_.size() ? values_[i] : ExactReal();
}

ExactReal GridFunction::integral(const DyadicInterval& interval) const {
  std::int64_t j = interval.level();
  if (j >= resolution_) {
    BigInt k;
    mpz_fdiv_q_2exp(k.get_mpz_t(), interval.index().get_mpz_t(),
                    static_cast<mp_bitcnt_t>(j - resolution_));
    std::size_t i = clamp_index(k, values_.size());
    if (i >= values_.size()) return ExactReal();
    return values_[i].times_pow2(-j);
  }
  BigInt first = interval.index();
  mpz_mul_2exp(first.get_mpz_t(), first.get_mpz_t(), static_cast<mp_bitcnt_t>(resolution_ - j));
  BigInt last = interval.index() + 1;
  mpz_mul_2exp(last.get_mpz_t(), last.get_mpz_t(), static_cast<mp_bitcnt_t>(resolution_ - j));
  std::size_t lo = clamp_index(first, values_.size());
  std::size_t hi = clamp_index(last, values_.size());
  ExactReal sum;
  for (std::size_t i = lo; i < hi; ++i) sum += values_[i];
  return sum.times_pow2(-resolution_);
}

ExactReal GridFunction::l2_norm_squared() const {
  ExactReal sum;
  for (const auto& v : values_) sum += v * v;
  return sum.times_pow2(-resolution_);
}

ExactReal GridFunction::l1_norm() const {
  ExactReal sum;
  for (const auto& v : values_) sum += v.abs();
  return sum.times_pow2(-resolution_);
}

ExactReal GridFunction::sup_norm() const {
  ExactReal best;
  for (const auto& v : values_) best = max(best, v.abs());
  return best;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const ExactReal& v) { return v.is_zero(); });
}

GridFunction GridFunction::refined(int resolution_level) const {
  return reshaped(support_, resolution_level);
}

GridFunction GridFunction::extended(int support_level) const {
  return reshaped(support_level, resolution_);
}

GridFunction GridFunction::reshaped(int support_level, int resolution_level) const {
  if (support_level < support_ || resolution_level < resolution_) {
    throw ScaleMismatchError("cannot reshape a grid onto a coarser or smaller one");
  }
  if (support_level == support_ && resolution_level == resolution_) return *this;
  std::vector<ExactReal> out(cells_for(support_level, resolution_level));
  std::size_t repeat = std::size_t{1} << (resolution_level - resolution_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(i * repeat), repeat, values_[i]);
  }
  return GridFunction(support_level, resolution_level, std::move(out));
}

GridFunction GridFunction::scaled(const ExactReal& factor) const {
  GridFunction out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

GridFunction GridFunction::abs() const {
  GridFunction out = *this;
  for (auto& v : out.values_) v = v.abs();
  return out;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  int m = std::max(a.support_, b.support_);
  int n = std::max(a.resolution_, b.resolution_);
  GridFunction out = a.reshaped(m, n);
  GridFunction rhs = b.reshaped(m, n);
  for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] += rhs.values_[i];
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return a + b.scaled(ExactReal(-1));
}

bool operator==(const GridFunction& a, const GridFunction& b) {
  int m = std::max(a.support_, b.support_);
  int n = std::max(a.resolution_, b.resolution_);
  return a.reshaped(m, n).values_ == b.reshaped(m, n).values_;
}

CellIntegrator::CellIntegrator(const GridFunction& f, bool absolute)
    : f_(&f), absolute_(absolute), prefix_(f.cell_count() + 1) {
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    prefix_[i + 1] = prefix_[i] + (absolute ? f[i].abs() : f[i]);
  }
}

ExactReal CellIntegrator::integral(const DyadicInterval& interval) const {
  const std::int64_t res = f_->resolution_level();
  const std::size_t count = f_->cell_count();
  std::int64_t j = interval.level();
  if (j >= res) {
    BigInt k;
    mpz_fdiv_q_2exp(k.get_mpz_t(), interval.index().get_mpz_t(), static_cast<mp_bitcnt_t>(j - res));
    std::size_t i = clamp_index(k, count);
    if (i >= count) return ExactReal();
    const ExactReal& v = (*f_)[i];
    return (absolute_ ? v.abs() : v).times_pow2(-j);
  }
  BigInt first = interval.index();
  mpz_mul_2exp(first.get_mpz_t(), first.get_mpz_t(), static_cast<mp_bitcnt_t>(res - j));
  BigInt last = interval.index() + 1;
  mpz_mul_2exp(last.get_mpz_t(), last.get_mpz_t(), static_cast<mp_bitcnt_t>(res - j));
  std::size_t lo = clamp_index(first, count);
  std::size_t hi = clamp_index(last, count);
  if (lo >= hi) return ExactReal();
  return (prefix_[hi] - prefix_[lo]).times_pow2(-res);
}

ExactReal HaarSpectrum::coefficient(const DyadicInterval& interval) const {
  auto it = coefficients.find(interval);
  return it == coefficients.end() ? ExactReal() : it->second;
}

ExactReal HaarSpectrum::energy() const {
  ExactReal sum;
  for (const auto& [interval, c] : coefficients) sum += c * c;
  return sum;
}

GridFunction HaarSpectrum::coarse_residual() const {
  int cap = static_cast<int>(scale_cap);
  return GridFunction(cap, 1 - cap, {coarse_average, coarse_average});
}

ExactReal haar_eval(const DyadicInterval& interval, const DyadicRational& x) {
  if (x.sign() < 0) throw DomainError("point " + x.to_string() + " is not in R+");
  BigInt k = x.floor_scaled(interval.level() + 1);
  BigInt parent;
  mpz_fdiv_q_2exp(parent.get_mpz_t(), k.get_mpz_t(), 1);
  if (parent != interval.index()) return ExactReal();
  ExactReal magnitude = ExactReal::pow2_half(interval.level());
  return mpz_odd_p(k.get_mpz_t()) ? -magnitude : magnitude;
}

HaarSpectrum forward_haar(const GridFunction& f, std::int64_t scale_cap) {
  const int support = f.support_level();
  const int resolution = f.resolution_level();
  if (scale_cap < support) {
    throw DomainError("scale cap " + std::to_string(scale_cap) + " is below the support level " +
                      std::to_string(support));
  }
  HaarSpectrum out;
  out.scale_floor = resolution - 1;
  out.scale_cap = scale_cap;

  std::vector<ExactReal> sums(f.cell_count());
  for (std::size_t i = 0; i < sums.size(); ++i) sums[i] = f[i].times_pow2(-resolution);

  for (std::int64_t level = resolution - 1; level >= -support; --level) {
    std::vector<ExactReal> next(sums.size() / 2);
    for (std::size_t k = 0; k < next.size(); ++k) {
      const ExactReal& left = sums[2 * k];
      const ExactReal& right = sums[2 * k + 1];
      out.coefficients.emplace(DyadicInterval(level, BigInt(static_cast<unsigned long>(k))),
                               (left - right).times_pow2_half(level));
      next[k] = left + right;
    }
    sums = std::move(next);
  }
  const ExactReal total = sums.front();
  for (std::int64_t j = support + 1; j <= scale_cap; ++j) {
    out.coefficients.emplace(DyadicInterval(-j, BigInt(0)), total.times_pow2_half(-j));
  }
  out.coarse_average = total.times_pow2(-scale_cap);
  return out;
}

GridFunction inverse_haar(const HaarSpectrum& spectrum, const GridFunction& coarse_residual) {
  const int cap = static_cast<int>(spectrum.scale_cap);
  const int resolution = static_cast<int>(spectrum.scale_floor) + 1;
  if (coarse_residual.resolution_level() > resolution || coarse_residual.support_level() > cap) {
    throw ScaleMismatchError("residual grid (" + std::to_string(coarse_residual.support_level()) +
                             "," + std::to_string(coarse_residual.resolution_level()) +
                             ") does not fit a spectrum with floor " +
                             std::to_string(spectrum.scale_floor) + " and cap " +
                             std::to_string(cap));
  }
  GridFunction base = coarse_residual.reshaped(cap, resolution);
  std::vector<ExactReal> values = base.values();
  const DyadicInterval domain(-cap, BigInt(0));
  for (const auto& [interval, c] : spectrum.coefficients) {
    if (interval.level() > spectrum.scale_floor || !domain.contains(interval)) {
      throw ScaleMismatchError("coefficient " + interval.to_string() +
                               " lies outside the spectrum's scale range");
    }
    if (c.is_zero()) continue;
    const ExactReal step = c.times_pow2_half(interval.level());
    const std::size_t half = std::size_t{1} << (resolution - interval.level() - 1);
    const std::size_t first = interval.index().get_ui() * 2 * half;
    for (std::size_t i = 0; i < half; ++i) {
      values[first + i] += step;
      values[first + half + i] -= step;
    }
  }
  return GridFunction(cap, resolution, std::move(values));
}

}  // namespace dshift
