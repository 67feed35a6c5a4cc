#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dshift/haar.hpp"
#include "dshift/kernel.hpp"
#include "dshift/verify.hpp"
#include "dshift/weights.hpp"

namespace dshift {

using Json = nlohmann::ordered_json;

/// {support_level, resolution_level, values: ["a+b*sqrt2", ...]}
Json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const Json& j);

Json kernel_record_to_json(const KernelRecord& rec);

/// {p, constant, witness: "(j,k)", levels: [j_min, j_max], kind, alpha?}.
/// A divergent constant is written as null with "infinite": true.
Json ap_report_to_json(const ApReport& report);

Json verification_report_to_json(const VerificationReport& report);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

/// Shortest round-trip text for a double ("inf" for infinities).
std::string format_double(double v);

}  // namespace dshift
