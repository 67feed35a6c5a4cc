#include "dshift/serialize.hpp"

#include <charconv>
#include <cmath>

#include "dshift/errors.hpp"

namespace dshift {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Json grid_to_json(const GridFunction& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back(v.to_string());
  return Json{{"support_level", f.support_level()},
              {"resolution_level", f.resolution_level()},
              {"values", std::move(values)}};
}

GridFunction grid_from_json(const Json& j) {
  try {
    const int support = j.at("support_level").get<int>();
    const int resolution = j.at("resolution_level").get<int>();
    std::vector<ExactReal> values;
    for (const auto& v : j.at("values")) {
      if (v.is_string()) {
        values.push_back(ExactReal::parse(v.get<std::string>()));
      } else if (v.is_number_integer()) {
        values.emplace_back(v.get<long>());
      } else {
        throw ParseError("grid values must be strings or integers");
      }
    }
    return GridFunction(support, resolution, std::move(values));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed grid JSON: ") + e.what());
  }
}

namespace {

void put_exact(Json& out, const std::string& key, const std::optional<ExactReal>& v) {
  if (!v) return;
  out[key] = v->to_string();
  out[key + "_approx"] = v->to_double();
}

}  // namespace

Json kernel_record_to_json(const KernelRecord& rec) {
  Json out{{"x", rec.x.to_string()}, {"y", rec.y.to_string()}, {"delta", rec.delta.to_string()}};
  put_exact(out, "omega", rec.omega);
  put_exact(out, "P", rec.P);
  if (rec.window) out["window"] = Json{{"l", rec.window->l}, {"m", rec.window->m}};
  if (rec.branch) out["branch"] = band_name(*rec.branch);
  put_exact(out, "metric_truncated", rec.metric_truncated);
  put_exact(out, "scale_truncated", rec.scale_truncated);
  put_exact(out, "Q", rec.Q);
  return out;
}

Json ap_report_to_json(const ApReport& report) {
  Json out{{"p", report.p}};
  if (report.infinite()) {
    out["constant"] = nullptr;
    out["infinite"] = true;
  } else {
    out["constant"] = report.constant;
  }
  out["witness"] = report.witness.to_string();
  out["levels"] = Json::array({report.level_min, report.level_max});
  out["kind"] = report.kind;
  if (report.alpha) out["alpha"] = *report.alpha;
  out["intervals_scanned"] = report.intervals_scanned;
  return out;
}

Json verification_report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json entry{{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}};
    if (!c.examples.empty()) entry["examples"] = c.examples;
    checks.push_back(std::move(entry));
  }
  Json constants = Json::object();
  for (const auto& [name, c] : report.measured_constants) {
    Json entry{{"value", c.value}};
    if (c.exact) entry["exact"] = *c.exact;
    entry["paper_value"] = c.paper_value ? Json(*c.paper_value) : Json(nullptr);
    entry["verdict"] = c.verdict;
    constants[name] = std::move(entry);
  }
  return Json{{"suite", report.suite},
              {"seed", report.seed},
              {"size", report.size},
              {"cases", report.cases},
              {"failures", report.failures},
              {"checks", std::move(checks)},
              {"measured_constants", std::move(constants)},
              {"discrepancy_notes", report.discrepancy_notes}};
}

std::string sweep_csv_header() {
  return "alpha,p,depth,ap_constant,max_ratio_over_family,witness,closed_form_tower";
}

std::string sweep_csv_row(const SweepRow& row) {
  return format_double(row.alpha) + "," + format_double(row.p) + "," + std::to_string(row.depth) +
         "," + format_double(row.ap.constant) + "," + format_double(row.max_ratio) + ",\"" +
         row.ap.witness.to_string() + "\"," + format_double(row.closed_form_tower);
}

}  // namespace dshift
