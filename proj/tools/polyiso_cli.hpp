#pragma once

// Command dispatch for the polyiso executable. Kept in a header so the test
// suite can drive commands in-process.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyiso/polyiso.hpp"

namespace polyiso::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";
inline constexpr int scan_samples = 1000;
inline constexpr double scan_standoff = 1e-6;
inline constexpr double areas_sum_tolerance = 1e-9;

enum ExitCode : int { ok = 0, usage_error = 2, numerical_error = 3 };

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline bool all_finite(const json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_structured())
    for (const auto& item : j)
      if (!all_finite(item)) return false;
  return true;
}

inline json record(const std::string& command, json inputs, json results,
                   json diagnostics = nullptr) {
  json out;
  out["schema_version"] = schema_version;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["results"] = std::move(results);
  if (!diagnostics.is_null()) out["diagnostics"] = std::move(diagnostics);
  if (!all_finite(out)) throw ConvergenceError("non-finite value in output");
  return out;
}

inline json areas_json(std::span<const double> areas) { return json(std::vector<double>(areas.begin(), areas.end())); }

struct Csv {
  std::ostream& out;

  void header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
  }

  template <typename... Values>
  void row(Values... values) {
    bool first = true;
    ((out << (first ? "" : ",") << cell(values), first = false), ...);
    out << '\n';
  }

  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(double v) {
    if (!std::isfinite(v)) throw ConvergenceError("non-finite value in output");
    return format_real(v);
  }
};

} // namespace detail

struct PerimOptions {
  std::string geometry;
  int n = 0;
  std::optional<double> area;
  std::optional<double> angle;
  bool degrees = false;
};

inline json cmd_perim(const PerimOptions& o) {
  const Geometry geometry = Geometry::parse(o.geometry);
  json inputs{{"geometry", o.geometry}, {"n", o.n}};
  std::optional<RegularPolygon> polygon;
  if (o.angle) {
    const double angle = o.degrees ? *o.angle * pi / 180.0 : *o.angle;
    inputs["angle"] = angle;
    polygon = RegularPolygon::from_angle(geometry, o.n, angle);
  } else {
    inputs["area"] = *o.area;
    polygon.emplace(geometry, o.n, *o.area);
  }
  json results{{"area", polygon->area()},
               {"angle", polygon->angle()},
               {"side", polygon->side_length()},
               {"perimeter", polygon->perimeter()}};
  return detail::record("perim", std::move(inputs), std::move(results));
}

inline json theta_json(int n) {
  const threshold::ThresholdResult r = threshold::theta(n);
  return detail::record("theta", json{{"n", n}},
                        json{{"theta", r.theta_big}, {"x0", r.x0}, {"max_area", r.max_area}},
                        json{{"iterations", r.iterations}, {"residual", r.residual}});
}

inline void check_range(int lo, int hi) {
  check_sides(lo);
  check_sides(hi);
  if (lo > hi) throw DomainError("range lower end " + std::to_string(lo) + " exceeds upper end " + std::to_string(hi));
}

inline void theta_csv(int lo, int hi, std::ostream& out) {
  check_range(lo, hi);
  std::vector<threshold::ThresholdResult> rows;
  for (int n = lo; n <= hi; ++n) rows.push_back(threshold::theta(n));
  detail::Csv csv{out};
  csv.header({"n", "theta", "x0", "max_area"});
  for (const auto& r : rows) csv.row(r.n, r.theta_big, r.x0, r.max_area);
}

inline json theta_range_json(int lo, int hi) {
  check_range(lo, hi);
  json rows = json::array();
  for (int n = lo; n <= hi; ++n) {
    const auto r = threshold::theta(n);
    rows.push_back(json{{"n", n}, {"theta", r.theta_big}, {"x0", r.x0}, {"max_area", r.max_area}});
  }
  return detail::record("theta", json{{"range", {lo, hi}}}, json{{"rows", std::move(rows)}});
}

struct SplitOptions {
  std::string geometry;
  int n = 0;
  double total_area = 0.0;
  std::vector<double> areas;
  std::optional<double> theta1;
  bool degrees = false;
};

inline json cmd_split(const SplitOptions& o) {
  const Geometry geometry = Geometry::parse(o.geometry);
  polyiso::detail::check_area(geometry, o.n, o.total_area);
  json inputs{{"geometry", o.geometry}, {"n", o.n}, {"total_area", o.total_area}};
  json diagnostics = nullptr;

  SplitAssessment a;
  if (!o.areas.empty()) {
    if (o.theta1) throw ArgumentError("--areas and --theta1 are mutually exclusive");
    inputs["areas"] = o.areas;
    double sum = 0.0;
    for (double x : o.areas) sum += x;
    if (std::abs(sum - o.total_area) > areas_sum_tolerance)
      throw ArgumentError("areas sum to " + format_real(sum) + ", not the total area " +
                          format_real(o.total_area));
    Configuration config(geometry, o.n, o.areas);
    if (geometry.is_hyperbolic()) {
      a = merge_chain(config);
      json steps = json::array();
      for (const auto& s : a.merge_steps)
        steps.push_back(json{{"prefix_area", s.prefix_area},
                             {"part_area", s.part_area},
                             {"pair_perimeter", s.pair_perimeter},
                             {"merged_perimeter", s.merged_perimeter},
                             {"verdict", to_string(s.verdict)}});
      diagnostics = json{{"merge_steps", std::move(steps)}};
    } else {
      a = assess_configuration(config);
    }
  } else {
    std::optional<double> theta1 = o.theta1;
    if (theta1 && o.degrees) *theta1 *= pi / 180.0;
    if (theta1) inputs["theta1"] = *theta1;
    a = assess_two_split(geometry, o.n, o.total_area, theta1);
  }

  json results{{"verdict", to_string(a.verdict)},
               {"single_perimeter", a.single_perimeter},
               {"config_perimeter", a.config_perimeter},
               {"areas", a.areas},
               {"theta", a.theta}};
  if (a.theta_big) results["theta_big"] = *a.theta_big;
  if (geometry.is_euclidean() && a.areas.size() == 2) {
    const PythagorasTriple t = euclidean_pythagoras_check(a.areas[0], a.areas[1], o.n);
    results["p1"] = t.p1;
    results["p2"] = t.p2;
    results["p"] = t.p;
  }
  if (a.witness) {
    results["witness_areas"] = detail::areas_json(a.witness->areas());
    results["witness_perimeter"] = a.witness->total_perimeter();
  }
  return detail::record("split", std::move(inputs), std::move(results), std::move(diagnostics));
}

enum class ScanFunction { phi, g, h };

struct ScanOptions {
  ScanFunction function = ScanFunction::g;
  int n = 0;
  double c = 0.0; // h only
};

struct ScanSample {
  double x;
  double value;
};

// Uniform samples over the open domain, kept scan_standoff away from both
// ends.
inline std::vector<ScanSample> scan(const ScanOptions& o) {
  Interval dom{};
  std::optional<analysis::SplitFunctionParams> params;
  if (o.function == ScanFunction::h) {
    params = analysis::SplitFunctionParams::make(o.n, o.c);
    dom = params->interval();
  } else {
    const auto d = analysis::domain(o.n);
    dom = {d.lo, d.hi};
  }
  const double first = dom.lo + scan_standoff;
  const double step = (dom.hi - dom.lo - 2.0 * scan_standoff) / (scan_samples - 1);
  std::vector<ScanSample> samples;
  samples.reserve(scan_samples);
  for (int i = 0; i < scan_samples; ++i) {
    const double x = i == scan_samples - 1 ? dom.hi - scan_standoff : first + i * step;
    double v = 0.0;
    switch (o.function) {
      case ScanFunction::phi: v = analysis::phi(o.n, x); break;
      case ScanFunction::g: v = analysis::g(o.n, x); break;
      case ScanFunction::h: v = analysis::h(*params, x); break;
    }
    samples.push_back({x, v});
  }
  return samples;
}

inline const char* scan_name(ScanFunction f) {
  switch (f) {
    case ScanFunction::phi: return "phi";
    case ScanFunction::g: return "g";
    case ScanFunction::h: return "h";
  }
  return "";
}

inline void scan_csv(const ScanOptions& o, std::ostream& out) {
  const auto samples = scan(o);
  detail::Csv csv{out};
  csv.header({"x", "value"});
  for (const auto& s : samples) csv.row(s.x, s.value);
}

inline json scan_json(const ScanOptions& o) {
  const auto samples = scan(o);
  json xs = json::array(), values = json::array();
  for (const auto& s : samples) {
    xs.push_back(s.x);
    values.push_back(s.value);
  }
  json inputs{{"function", scan_name(o.function)}, {"n", o.n}};
  if (o.function == ScanFunction::h) inputs["c"] = o.c;
  return detail::record("scan", std::move(inputs), json{{"x", std::move(xs)}, {"value", std::move(values)}});
}

inline json cmd_counterexample(double epsilon) {
  const CounterexampleResult r = counterexample_triangles(epsilon);
  json results{{"perim_t1", r.config.polygon(0).perimeter()},
               {"perim_t2", r.config.polygon(1).perimeter()},
               {"split_perimeter", r.split_perimeter},
               {"single_perimeter", r.single_perimeter},
               {"area_t_eps", r.single.area()},
               {"margin", r.margin},
               {"pair_bound", r.pair_bound}};
  return detail::record("counterexample", json{{"epsilon", epsilon}}, std::move(results));
}

inline void emit_error(std::ostream& err, const std::string& command, const char* type,
                       const std::string& message) {
  json e;
  e["schema_version"] = schema_version;
  e["command"] = command;
  e["error"] = json{{"type", type}, {"message", message}};
  err << e.dump() << '\n';
}

// Runs one command line (without the program name). Data goes to `out`,
// diagnostics and error records to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isoperimetric comparisons for configurations of regular polygons", "polyiso"};
  app.require_subcommand(1);
  std::string format = "auto";

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"auto", "json", "csv"}));
  };

  PerimOptions perim_opts;
  auto* perim = app.add_subcommand("perim", "Area, angle, side and perimeter of a regular n-gon");
  perim->add_option("geometry", perim_opts.geometry)->required();
  perim->add_option("n", perim_opts.n)->required();
  auto* area_opt = perim->add_option("--area", perim_opts.area, "Polygon area");
  auto* angle_opt = perim->add_option("--angle", perim_opts.angle, "Interior angle");
  area_opt->excludes(angle_opt);
  perim->add_flag("--degrees", perim_opts.degrees, "Read --angle in degrees");
  add_format(perim);

  std::optional<int> theta_n;
  std::vector<int> theta_range;
  auto* theta_cmd = app.add_subcommand("theta", "Critical angle of the hyperbolic n-gon");
  auto* theta_n_opt = theta_cmd->add_option("n", theta_n);
  auto* range_opt = theta_cmd->add_option("--range", theta_range, "Side counts lo hi")->expected(2);
  theta_n_opt->excludes(range_opt);
  add_format(theta_cmd);

  SplitOptions split_opts;
  auto* split = app.add_subcommand("split", "Compare a split configuration with the single polygon");
  split->add_option("geometry", split_opts.geometry)->required();
  split->add_option("n", split_opts.n)->required();
  split->add_option("--total-area", split_opts.total_area)->required();
  split->add_option("--areas", split_opts.areas, "Comma-separated part areas")->delimiter(',');
  split->add_option("--theta1", split_opts.theta1, "Interior angle of the first part");
  split->add_flag("--degrees", split_opts.degrees, "Read --theta1 in degrees");
  add_format(split);

  std::optional<int> scan_phi, scan_g;
  std::vector<std::string> scan_h;
  auto* scan_cmd = app.add_subcommand("scan", "Sample phi, g or h over its domain");
  scan_cmd->set_help_flag("--help", "Print this help message and exit");
  auto* phi_opt = scan_cmd->add_option("--phi", scan_phi, "n");
  auto* g_opt = scan_cmd->add_option("--g", scan_g, "n");
  auto* h_opt = scan_cmd->add_option("--h", scan_h, "n c")->expected(2);
  phi_opt->excludes(g_opt)->excludes(h_opt);
  g_opt->excludes(h_opt);
  add_format(scan_cmd);

  double epsilon = 0.0;
  auto* cx = app.add_subcommand("counterexample", "Two triangles against the thin triangle T_eps");
  cx->add_option("--epsilon", epsilon)->required();
  add_format(cx);

  std::string command = args.empty() ? "" : args.front();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    emit_error(err, command, "UsageError", e.what());
    return usage_error;
  }

  try {
    auto emit = [&](const json& j) { out << j.dump() << '\n'; };
    if (perim->parsed()) {
      if (!perim_opts.area && !perim_opts.angle) throw ArgumentError("one of --area or --angle is required");
      emit(cmd_perim(perim_opts));
    } else if (theta_cmd->parsed()) {
      if (!theta_range.empty()) {
        if (format == "json") emit(theta_range_json(theta_range[0], theta_range[1]));
        else theta_csv(theta_range[0], theta_range[1], out);
      } else {
        if (!theta_n) throw ArgumentError("theta needs n or --range lo hi");
        if (format == "csv") {
          theta_csv(*theta_n, *theta_n, out);
        } else {
          emit(theta_json(*theta_n));
        }
      }
    } else if (split->parsed()) {
      emit(cmd_split(split_opts));
    } else if (scan_cmd->parsed()) {
      ScanOptions so;
      if (scan_phi) {
        so.function = ScanFunction::phi;
        so.n = *scan_phi;
      } else if (scan_g) {
        so.function = ScanFunction::g;
        so.n = *scan_g;
      } else if (scan_h.size() == 2) {
        so.function = ScanFunction::h;
        try {
          std::size_t used = 0;
          so.n = std::stoi(scan_h[0], &used);
          if (used != scan_h[0].size()) throw std::invalid_argument("n");
          so.c = std::stod(scan_h[1], &used);
          if (used != scan_h[1].size()) throw std::invalid_argument("c");
        } catch (const std::logic_error&) {
          throw ArgumentError("--h expects an integer n and a real c");
        }
      } else {
        throw ArgumentError("scan needs one of --phi n, --g n or --h n c");
      }
      if (format == "json") emit(scan_json(so));
      else scan_csv(so, out);
    } else if (cx->parsed()) {
      emit(cmd_counterexample(epsilon));
    }
  } catch (const ConvergenceError& e) {
    emit_error(err, command, e.kind(), e.what());
    return numerical_error;
  } catch (const BracketError& e) {
    emit_error(err, command, e.kind(), e.what());
    return numerical_error;
  } catch (const Error& e) {
    emit_error(err, command, e.kind(), e.what());
    return usage_error;
  }
  return ok;
}

} // namespace polyiso::cli
