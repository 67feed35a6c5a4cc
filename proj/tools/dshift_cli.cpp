// Command-line front end: verification suites, kernel evaluations, operator
// application, maximal functions and A_p reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dshift/errors.hpp"
#include "dshift/kernel.hpp"
#include "dshift/operators.hpp"
#include "dshift/parallel.hpp"
#include "dshift/serialize.hpp"
#include "dshift/verify.hpp"
#include "dshift/weights.hpp"

namespace {

using namespace dshift;

constexpr int kExitFailures = 1;
constexpr int kExitError = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + out_path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

GridFunction read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  return grid_from_json(j);
}

// Accepts "n/2^e" as well as plain decimals for real-valued parameters.
double parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return DyadicRational::parse(text).to_double();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParseError("not a number: '" + text + "'");
  return v;
}

std::optional<TruncationWindow> window_from(const std::optional<std::int64_t>& l,
                                            const std::optional<std::int64_t>& m) {
  if (!l && !m) return std::nullopt;
  if (!l || !m) throw DomainError("a window needs both --l and --m");
  return TruncationWindow(*l, *m);
}

MaximalKind maximal_kind(const std::string& name) {
  if (name == "scale") return MaximalKind::scale;
  if (name == "metric") return MaximalKind::metric;
  return MaximalKind::dyadic;
}

struct Common {
  std::string out;
  unsigned threads = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dyadic shift kernels, truncations, maximal functions and dyadic A_p weights"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = hardware concurrency)");

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "Write the report to this path instead of stdout");
  };
  auto add_format = [](CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  // verify
  auto* verify = app.add_subcommand("verify", "Run an invariant suite and print a JSON report");
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::size_t size = 1000;
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(suite_names()))->capture_default_str();
  verify->add_option("--seed", seed, "Seed for the pseudo-random cases")->capture_default_str();
  verify->add_option("--size", size, "Random cases per check")->capture_default_str();
  add_out(verify);

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Evaluate the kernel and its truncations at (x, y)");
  std::string kx, ky;
  std::optional<std::int64_t> kl, km;
  kernel->add_option("x", kx, "First point, n/2^e")->required();
  kernel->add_option("y", ky, "Second point, n/2^e")->required();
  kernel->add_option("--l", kl, "Lower window exponent");
  kernel->add_option("--m", km, "Upper window exponent");
  add_out(kernel);

  // apply
  auto* apply = app.add_subcommand("apply", "Apply the shift, a truncation or the corrector to a grid");
  std::string apply_input, apply_op = "shift";
  std::optional<std::int64_t> al, am, apply_cap;
  std::optional<int> apply_resolution;
  apply->add_option("--input", apply_input, "GridFunction JSON file")->required();
  apply->add_option("--operator", apply_op, "Operator")
      ->check(CLI::IsMember({"shift", "scale", "metric", "Q"}))
      ->capture_default_str();
  apply->add_option("--l", al, "Lower window exponent");
  apply->add_option("--m", am, "Upper window exponent");
  apply->add_option("--scale-cap", apply_cap, "Coarsest analyzed scale for the full shift (default: support)");
  apply->add_option("--resolution", apply_resolution, "Refine the input to this resolution level first");
  add_out(apply);

  // maximal
  auto* maximal = app.add_subcommand("maximal", "Evaluate maximal functions at cell points");
  std::string max_input, max_kind = "all";
  std::optional<std::string> max_at;
  std::optional<int> max_cap, max_resolution;
  maximal->add_option("--input", max_input, "GridFunction JSON file")->required();
  maximal->add_option("--kind", max_kind, "Maximal operator")
      ->check(CLI::IsMember({"scale", "metric", "dyadic", "all"}))
      ->capture_default_str();
  maximal->add_option("--at", max_at, "Single point n/2^e instead of the cell grid");
  maximal->add_option("--scale-cap", max_cap, "Evaluate on [0, 2^cap) (default: input support)");
  maximal->add_option("--resolution", max_resolution, "Evaluation cells of measure 2^-R (default: N+1)");
  add_out(maximal);
  std::string max_format = "json";
  add_format(maximal, max_format);

  // weights
  auto* weights = app.add_subcommand("weights", "Dyadic A_p constants and sweeps");
  weights->require_subcommand(1);
  auto* ap = weights->add_subcommand("ap", "A_p constant of a power or step weight");
  std::optional<std::string> ap_alpha, ap_step;
  std::string ap_p = "2";
  std::int64_t ap_level_min = 0, ap_level_max = 10;
  std::optional<std::uint64_t> ap_index_min, ap_index_max;
  bool ap_tower = false;
  std::optional<int> ap_depth;
  int ap_cap = 0;
  auto* alpha_opt = ap->add_option("--alpha", ap_alpha, "Power weight x^alpha");
  ap->add_option("--step", ap_step, "Step weight GridFunction JSON file")->excludes(alpha_opt);
  ap->add_option("--p", ap_p, "Exponent p > 1")->capture_default_str();
  ap->add_option("--level-min", ap_level_min, "Coarsest level scanned")->capture_default_str();
  ap->add_option("--level-max", ap_level_max, "Finest level scanned")->capture_default_str();
  ap->add_option("--index-min", ap_index_min, "Smallest index per level");
  ap->add_option("--index-max", ap_index_max, "Largest index per level");
  ap->add_flag("--tower", ap_tower, "Scan only [0, 2^-j)");
  ap->add_option("--depth", ap_depth, "Discretize the power weight into cells of measure 2^-depth");
  ap->add_option("--scale-cap", ap_cap, "Power weight domain [0, 2^cap)")->capture_default_str();
  add_out(ap);

  auto* sweep = weights->add_subcommand("sweep", "A_p constants and ratio experiments over x^alpha");
  std::vector<std::string> sweep_alpha{"-0.5", "0", "0.5", "1"}, sweep_p{"2"};
  std::vector<int> sweep_depth{10};
  sweep->add_option("--alpha", sweep_alpha, "Exponents alpha")->capture_default_str();
  sweep->add_option("--p", sweep_p, "Exponents p")->capture_default_str();
  sweep->add_option("--depth", sweep_depth, "Depths")->capture_default_str();
  add_out(sweep);
  std::string sweep_format = "csv";
  add_format(sweep, sweep_format);

  CLI11_PARSE(app, argc, argv);

  try {
    set_thread_count(common.threads);

    if (verify->parsed()) {
      VerificationReport report = run_suite(suite, seed, size);
      emit(dump(verification_report_to_json(report)), common.out);
      if (report.failures != 0) {
        std::cerr << report.failures << " failure(s) in suite " << suite << "\n";
        return kExitFailures;
      }
      return 0;
    }

    if (kernel->parsed()) {
      KernelRecord rec = evaluate_kernel(DyadicRational::parse(kx), DyadicRational::parse(ky), window_from(kl, km));
      emit(dump(kernel_record_to_json(rec)), common.out);
      return 0;
    }

    if (apply->parsed()) {
      GridFunction f = read_grid(apply_input);
      if (apply_resolution) {
        if (*apply_resolution < f.resolution_level()) {
          throw ResolutionError("--resolution is coarser than the input grid");
        }
        f = f.refined(*apply_resolution);
      }
      std::optional<TruncationWindow> w = window_from(al, am);
      OperatorResult r = [&] {
        if (apply_op == "shift") return apply_shift_spectral(f, apply_cap.value_or(f.support_level()));
        if (!w) throw DomainError("operator '" + apply_op + "' needs --l and --m");
        if (apply_op == "scale") return apply_scale_truncated(f, *w);
        if (apply_op == "metric") return apply_metric_truncated(f, *w);
        return apply_Q(f, *w);
      }();
      Json out{{"operator", apply_op},
               {"path", r.path == OperatorPath::spectral ? "spectral" : "quadrature"}};
      if (r.window) out["window"] = Json{{"l", r.window->l}, {"m", r.window->m}};
      out["output"] = grid_to_json(r.output);
      emit(dump(out), common.out);
      return 0;
    }

    if (maximal->parsed()) {
      GridFunction f = read_grid(max_input);
      std::vector<DyadicRational> points;
      if (max_at) {
        points.push_back(DyadicRational::parse(*max_at));
      } else {
        points = cell_points(max_cap.value_or(f.support_level()),
                             max_resolution.value_or(f.resolution_level() + 1));
      }
      std::vector<MaximalKind> kinds;
      if (max_kind == "all") kinds = {MaximalKind::scale, MaximalKind::metric, MaximalKind::dyadic};
      else kinds = {maximal_kind(max_kind)};
      std::vector<std::vector<ExactReal>> values;
      for (MaximalKind k : kinds) values.push_back(maximal_at(f, k, points));

      std::ostringstream text;
      if (max_format == "csv") {
        text << "x";
        for (MaximalKind k : kinds) text << "," << maximal_name(k) << "," << maximal_name(k) << "_approx";
        text << "\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
          text << points[i].to_string();
          for (const auto& col : values) text << "," << col[i].to_string() << "," << format_double(col[i].to_double());
          text << "\n";
        }
      } else {
        Json rows = Json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
          Json row{{"x", points[i].to_string()}};
          for (std::size_t k = 0; k < kinds.size(); ++k) {
            row[maximal_name(kinds[k])] = values[k][i].to_string();
            row[std::string(maximal_name(kinds[k])) + "_approx"] = values[k][i].to_double();
          }
          rows.push_back(std::move(row));
        }
        text << dump(Json{{"points", std::move(rows)}});
      }
      emit(text.str(), common.out);
      return 0;
    }

    if (ap->parsed()) {
      if (!ap_alpha && !ap_step) throw DomainError("weights ap needs --alpha or --step");
      WeightFunction w = ap_alpha ? power_weight(parse_real(*ap_alpha), ap_cap, ap_depth)
                                  : WeightFunction::step(read_grid(*ap_step));
      ApScan scan = ap_tower ? ApScan::tower(ap_level_min, ap_level_max)
                             : ApScan{ap_level_min, ap_level_max, ap_index_min, ap_index_max};
      emit(dump(ap_report_to_json(ap_constant(w, parse_real(ap_p), scan))), common.out);
      return 0;
    }

    if (sweep->parsed()) {
      std::vector<SweepRow> rows;
      for (const auto& a : sweep_alpha) {
        for (const auto& p : sweep_p) {
          for (int d : sweep_depth) rows.push_back(sweep_row(parse_real(a), parse_real(p), d));
        }
      }
      std::ostringstream text;
      if (sweep_format == "csv") {
        text << sweep_csv_header() << "\n";
        for (const auto& r : rows) text << sweep_csv_row(r) << "\n";
      } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
          Json row{{"alpha", r.alpha}, {"p", r.p}, {"depth", r.depth}, {"ap", ap_report_to_json(r.ap)}};
          row["max_ratio_over_family"] = std::isfinite(r.max_ratio) ? Json(r.max_ratio) : Json(nullptr);
          row["closed_form_tower"] = std::isfinite(r.closed_form_tower) ? Json(r.closed_form_tower) : Json(nullptr);
          arr.push_back(std::move(row));
        }
        text << dump(Json{{"rows", std::move(arr)}});
      }
      emit(text.str(), common.out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
