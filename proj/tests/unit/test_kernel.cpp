#include "doctest.h"

#include "dshift/errors.hpp"
#include "dshift/kernel.hpp"
#include "dshift/metric.hpp"
#include "dshift/serialize.hpp"
#include "oracles.hpp"

using namespace dshift;

namespace {
DyadicRational q(const char* s) { return DyadicRational::parse(s); }
const ExactReal kSqrt2 = ExactReal::sqrt2();
}  // namespace

TEST_CASE("kernel values against the literal Haar sum") {
  oracle::Rng rng(31);
  for (int i = 0; i < 3000; ++i) {
    auto [x, y] = rng.pair(14, 5);
    const ExactReal p = kernel_P(x, y);
    CHECK(p == oracle::kernel_P(x, y));
    CHECK(omega(x, y) == p * ExactReal(oracle::delta(x, y)));
  }
}

TEST_CASE("kernel examples") {
  CHECK(kernel_P(q("1/2^2"), q("3/2^2")) == kSqrt2 * ExactReal(2));
  CHECK(kernel_P(DyadicRational(0), q("1/2^1")).is_zero());
  CHECK(kernel_P(q("1/2^1"), DyadicRational(0)) == oracle::kernel_P(q("1/2^1"), DyadicRational(0)));
  CHECK_THROWS_AS(kernel_P(DyadicRational(1), DyadicRational(1)), EqualPointsError);
  CHECK_THROWS_AS(omega(DyadicRational(-1), DyadicRational(1)), DomainError);
}

TEST_CASE("theta factors") {
  const DyadicInterval J(0, BigInt(0));  // [0,1)
  CHECK(theta1(J, q("1/2^2")) == 1);
  CHECK(theta1(J, q("3/2^2")) == -1);
  CHECK(theta1(J, DyadicRational(1)) == 0);
  CHECK(theta2(J, q("1/2^3")) == 1);
  CHECK(theta2(J, q("3/2^3")) == -1);
  CHECK(theta2(J, q("5/2^3")) == -1);
  CHECK(theta2(J, q("7/2^3")) == 1);
  CHECK(theta2(J, DyadicRational(2)) == 0);
}

TEST_CASE("ancestor series") {
  const AncestorSeries s(q("1/2^2"), q("3/2^2"));
  CHECK(s.base() == DyadicInterval(0, BigInt(0)));
  for (std::int64_t n = 0; n < 8; ++n) CHECK(s.term(n) == 1);
  CHECK(s.tail_sum(0) == DyadicRational(2));
  CHECK(s.partial_sum(0, 3) == q("7/2^2"));
  oracle::Rng rng(32);
  for (int i = 0; i < 500; ++i) {
    auto [x, y] = rng.pair();
    const AncestorSeries t(x, y);
    const std::int64_t m0 = t.stable_from();
    CHECK(t.tail_sum(m0) == DyadicRational::pow2(-m0 + 1));
    CHECK(omega(x, y) == ExactReal(DyadicRational(0), t.tail_sum(0)));
  }
}

TEST_CASE("truncated kernels against their definitions") {
  oracle::Rng rng(33);
  for (int i = 0; i < 3000; ++i) {
    auto [x, y] = rng.pair(10, 4);
    const std::int64_t l = rng.range(-10, 6);
    const std::int64_t m = l + rng.range(1, 10);
    const TruncationWindow w(l, m);
    const ExactReal scale = kernel_scale_truncated(w, x, y);
    CHECK(scale == oracle::scale_truncated(l, m, x, y));
    CHECK(kernel_metric_truncated(w, x, y) == oracle::metric_truncated(l, m, x, y));
    CHECK(kernel_Q(w, x, y) == scale - oracle::metric_truncated(l, m, x, y));
  }
  // On the diagonal only the scale truncation is defined.
  const DyadicRational x = q("5/2^3");
  CHECK(kernel_scale_truncated(TruncationWindow(-2, 1), x, x) == oracle::scale_truncated(-2, 1, x, x));
  CHECK_THROWS_AS(kernel_Q(TruncationWindow(-2, 1), x, x), EqualPointsError);
  CHECK_THROWS_AS(TruncationWindow(1, 1), DomainError);
}

TEST_CASE("window bands") {
  const TruncationWindow w(-2, 1);
  CHECK(band_of(w, -3) == Band::below);
  CHECK(band_of(w, -2) == Band::band);
  CHECK(band_of(w, 0) == Band::band);
  CHECK(band_of(w, 1) == Band::above);
  CHECK(std::string(band_name(Band::band)) == "band");
  CHECK(w.to_string() == "[-2,1)");
}

TEST_CASE("partial omega sums converge geometrically") {
  const DyadicRational x = q("3/2^4"), y = q("13/2^4");
  for (std::int64_t t = 1; t < 30; ++t) {
    const ExactReal gap = (omega(x, y) - omega_partial(x, y, t)).abs();
    CHECK(gap <= kSqrt2.times_pow2(-t + 1));
  }
  CHECK_THROWS_AS(omega_partial(x, y, 0), DomainError);
}

TEST_CASE("integral of the corrector over y") {
  oracle::Rng rng(34);
  for (int i = 0; i < 120; ++i) {
    const DyadicRational x = rng.point(8, 3);
    const std::int64_t l = rng.range(-4, 3);
    const TruncationWindow w(l, l + rng.range(1, 4));
    // Q(x,.) vanishes off the level 1-m cell of x and is constant on cells of
    // measure 2^(l-1); sum over a grid that covers that cell.
    const int M = static_cast<int>(std::max<std::int64_t>(w.m, 4));
    const int N = static_cast<int>(1 - w.l);
    std::vector<ExactReal> ones(std::size_t{1} << (M + N), ExactReal(1));
    const GridFunction one(M, N, ones);
    const ExactReal direct = oracle::quadrature(one, x, N, [&](const DyadicRational& y) {
      return kernel_Q(w, x, y);
    });
    CHECK(integral_Q_over_y(w, x) == direct);
  }
}

TEST_CASE("kernel record JSON") {
  const KernelRecord rec = evaluate_kernel(q("1/2^2"), q("3/2^2"), TruncationWindow(0, 1));
  const Json j = kernel_record_to_json(rec);
  CHECK(j["P"] == "0+2*sqrt2");
  CHECK(j["delta"] == "1/2^0");
  CHECK(j["metric_truncated"] == j["P"]);
  CHECK(j["branch"] == "band");
  CHECK(j["window"]["l"] == 0);
  CHECK(j["P_approx"].get<double>() == doctest::Approx(2.828427).epsilon(1e-6));
  const KernelRecord diag = evaluate_kernel(q("1/2^2"), q("1/2^2"), TruncationWindow(0, 2));
  CHECK(diag.scale_truncated.has_value());
  CHECK_FALSE(diag.P.has_value());
  CHECK_THROWS_AS(evaluate_kernel(q("1/2^2"), q("1/2^2"), std::nullopt), EqualPointsError);
}
