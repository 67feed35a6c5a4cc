#include "doctest.h"

#include <cmath>

#include "dshift/errors.hpp"
#include "dshift/serialize.hpp"
#include "dshift/weights.hpp"
#include "oracles.hpp"

using namespace dshift;

TEST_CASE("power masses") {
  CHECK(power_mass(0.25, 0.75, 0.0) == 0.5);
  CHECK(power_mass(0.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(power_mass(0.0, 4.0, 0.5) == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  CHECK(power_mass(1.0, 1.0 + 1e-12, 2.0) == doctest::Approx(1e-12).epsilon(1e-9));
  CHECK(std::isinf(power_mass(0.0, 1.0, -1.0)));
  CHECK(power_mass(0.5, 1.0, -1.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("power weight products match closed forms") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double alpha : {-0.5, 0.0, 0.25, 0.4}) {
      const WeightFunction w = power_weight(alpha, 0);
      for (std::int64_t j : {0, 3, 17}) {
        const double got = ap_product(w, p, DyadicInterval(j, BigInt(0)));
        CHECK(got == doctest::Approx(oracle::power_tower_product(alpha, p)).epsilon(1e-12));
      }
    }
  }
  CHECK(std::isinf(ap_product(power_weight(1.0, 0), 2.0, DyadicInterval(0, BigInt(0)))));
  CHECK_THROWS_AS(power_weight(-1.0, 0), DomainError);
  CHECK_THROWS_AS(ap_product(power_weight(0.0, 0), 1.0, DyadicInterval(0, BigInt(0))), DomainError);
}

TEST_CASE("A_p constant of step weights") {
  // w = (1, 4) on the halves of [0,1): A_2 product on [0,1) is (5/2)(5/8).
  const WeightFunction w = WeightFunction::step(GridFunction(0, 1, {ExactReal(1), ExactReal(4)}));
  const ApReport r = ap_constant(w, 2.0, ApScan{0, 1, std::nullopt, std::nullopt});
  CHECK(r.constant == doctest::Approx(25.0 / 16.0));
  CHECK(r.witness == DyadicInterval(0, BigInt(0)));
  CHECK(r.min_product == 1.0);
  CHECK(r.intervals_scanned == 3);
  CHECK_THROWS_AS(WeightFunction::step(GridFunction(0, 1, {ExactReal(1), ExactReal(0)})), DomainError);
  CHECK_THROWS_AS(ap_constant(w, 2.0, ApScan{3, 2, std::nullopt, std::nullopt}), DomainError);
}

TEST_CASE("ties keep the coarsest, leftmost witness") {
  const WeightFunction one = WeightFunction::step(GridFunction(1, 1, std::vector<ExactReal>(4, ExactReal(1))));
  const ApReport r = ap_constant(one, 2.0, ApScan{-1, 1, std::nullopt, std::nullopt});
  CHECK(r.constant == 1.0);
  CHECK(r.witness == DyadicInterval(-1, BigInt(0)));
}

TEST_CASE("discretized power weights approach the closed form from below") {
  const double closed = oracle::power_tower_product(0.5, 2.0);
  double prev = 0.0;
  for (int depth : {4, 8, 12, 16}) {
    const ApReport r = ap_constant(power_weight(0.5, 0, depth), 2.0, ApScan::tower(0, depth));
    CHECK(r.constant <= closed * (1 + 1e-12));
    CHECK(r.constant >= prev);
    prev = r.constant;
  }
  CHECK(prev == doctest::Approx(closed).epsilon(1e-3));
}

TEST_CASE("necessity certificate") {
  const WeightFunction w = power_weight(0.5, 0);
  const NecessityCertificate c = necessity_lower_bound(w, 2.0, DyadicInterval(0, BigInt(0)), 2.0);
  CHECK(c.product == doctest::Approx(4.0 / 3.0));
  CHECK(c.threshold == doctest::Approx(2.0));
  CHECK(c.consistent);
  CHECK_THROWS_AS(necessity_lower_bound(power_weight(1.0, 0), 2.0, DyadicInterval(0, BigInt(0)), 1.0),
                  DomainError);
  const GridFunction f = necessity_test_function(power_weight(0.0, 0), 2.0, 1, 3);
  CHECK(f.values()[0] == ExactReal::sqrt2());
  CHECK(f.values()[2] == -ExactReal::sqrt2());
  CHECK(f.values()[4].is_zero());
  CHECK_THROWS_AS(necessity_test_function(w, 2.0, 3, 3), ResolutionError);
}

TEST_CASE("ratio experiment and sweep rows") {
  const WeightFunction unit = WeightFunction::step(GridFunction(0, 1, {ExactReal(1), ExactReal(1)}));
  const GridFunction h = GridFunction::haar(DyadicInterval(0, BigInt(0)), 0, 3);
  CHECK(weighted_ratio_experiment(h, unit, 2.0, MaximalKind::dyadic) >= 0.5);
  CHECK_THROWS_AS(weighted_ratio_experiment(GridFunction::zeros(0, 2), unit, 2.0, MaximalKind::scale),
                  ZeroInputError);
  const SweepRow zero = sweep_row(0.0, 2.0, 6);
  CHECK(zero.ap.constant == 1.0);
  CHECK(zero.closed_form_tower == 1.0);
  const SweepRow edge = sweep_row(1.0, 2.0, 6);
  CHECK(std::isinf(edge.closed_form_tower));
  CHECK(std::isfinite(edge.ap.constant));
  const std::string row = sweep_csv_row(zero);
  CHECK(row.rfind("0,2,6,1,", 0) == 0);
  CHECK(sweep_csv_header() == "alpha,p,depth,ap_constant,max_ratio_over_family,witness,closed_form_tower");
}

TEST_CASE("A_p report JSON") {
  const ApReport r = ap_constant(power_weight(0.5, 0), 2.0, ApScan::tower(0, 4));
  const Json j = ap_report_to_json(r);
  CHECK(j["witness"].is_string());
  CHECK(j["levels"] == Json::array({0, 4}));
  CHECK(j["kind"] == "power");
  CHECK(j["alpha"] == 0.5);
  const Json inf = ap_report_to_json(ap_constant(power_weight(1.5, 0), 2.0, ApScan::tower(0, 2)));
  CHECK(inf["constant"].is_null());
  CHECK(inf["infinite"] == true);
}
