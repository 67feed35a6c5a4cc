#include "doctest.h"

#include "dshift/errors.hpp"
#include "dshift/parallel.hpp"
#include "dshift/serialize.hpp"
#include "dshift/verify.hpp"

using namespace dshift;

TEST_CASE("report schema") {
  const VerificationReport r = run_suite("kernel", 3, 60);
  const Json j = verification_report_to_json(r);
  for (const char* key : {"suite", "seed", "size", "cases", "failures", "checks", "measured_constants",
                          "discrepancy_notes"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["suite"] == "kernel");
  CHECK(j["failures"] == 0);
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c["name"].is_string());
    CHECK(c["cases"].is_number_unsigned());
    CHECK(c["failures"].is_number_unsigned());
  }
  for (const auto& [name, c] : j["measured_constants"].items()) {
    CHECK(c["value"].is_number());
    CHECK(c.contains("paper_value"));
    CHECK(c["verdict"].is_string());
  }
  const auto& omega = j["measured_constants"]["sup_abs_omega"];
  CHECK(omega["exact"] == "0+2*sqrt2");
  CHECK(omega["paper_value"] == 2.0);
  CHECK_FALSE(j["discrepancy_notes"].empty());
}

TEST_CASE("every suite passes at small size") {
  for (const auto& name : suite_names()) {
    if (name == "all" || name == "weights") continue;
    const VerificationReport r = run_suite(name, 5, 40);
    CHECK_MESSAGE(r.failures == 0, name);
    CHECK(r.cases > 0);
  }
  CHECK_THROWS_AS(run_suite("nope", 0, 1), DomainError);
}

TEST_CASE("reports are reproducible across thread counts") {
  set_thread_count(1);
  const std::string a = verification_report_to_json(run_suite("maximal", 9, 40)).dump();
  set_thread_count(4);
  const std::string b = verification_report_to_json(run_suite("maximal", 9, 40)).dump();
  set_thread_count(0);
  CHECK(a == b);
}

TEST_CASE("merge accumulates counts") {
  VerificationReport a, b;
  a.add(CheckResult{"x", 3, 1, {"bad"}});
  b.add(CheckResult{"y", 2, 0, {}});
  b.discrepancy_notes.push_back("note");
  a.merge(b);
  CHECK(a.cases == 5);
  CHECK(a.failures == 1);
  CHECK(a.checks.size() == 2);
  CHECK(a.discrepancy_notes.size() == 1);
}
