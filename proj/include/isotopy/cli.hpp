// Driver logic behind tools/isotopy_cli: run / check / frames. Kept in a
// header so the tests can call the commands in-process.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "isotopy/fox_artin.hpp"
#include "isotopy/projection.hpp"
#include "isotopy/scenarios.hpp"

namespace isotopy::cli {

enum Exit : int { ok = 0, mismatch = 1, unknown_scenario = 2, io_error = 3, usage = 64 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string scenario;
  std::size_t depth = 10;
  std::size_t horizon = 20;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::filesystem::path out = ".";
  std::vector<double> times;

  void validate() const {
    if (depth < 1) throw UsageError("depth must be >= 1");
    if (horizon < 2) throw UsageError("horizon must be >= 2");
    if (!(tol > 0.0)) throw UsageError("tol must be positive");
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!(times[i] >= 0.0 && times[i] <= 1.0)) throw UsageError("frame times must lie in [0,1]");
      if (i && times[i] < times[i - 1]) throw UsageError("frame times must be sorted");
    }
  }
};

inline constexpr double kFrameMaxSegment = 0.01;
inline constexpr double kFrameGap = 0.005;

namespace detail {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string stem(const RunConfig& c) {
  return c.scenario + "_" + std::to_string(c.depth) + "_" + std::to_string(c.seed);
}

inline void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec || !std::filesystem::is_directory(p)) throw IoError("cannot create " + p.string());
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + p.string());
  f << body;
  f.close();
  if (!f) throw IoError("write failed: " + p.string());
}

/// Nested neighbourhoods of the wild point, where the scenario has one with
/// the point in every interior.
inline std::optional<NestedFamily> nested_family(const std::string& scenario) {
  if (scenario.rfind("recursive_r1", 0) == 0)
    return NestedFamily{{0, 0, 0}, [](std::size_t k) { return RecursiveR1Geometry::V(k); },
                        std::nullopt};
  return std::nullopt;
}

/// The scenario grid plus 200 seeded points in its bounding box (seed 0
/// adds nothing).
inline std::vector<Point3> probe_grid(const Scenario& s, std::uint64_t seed) {
  std::vector<Point3> g = s.grid;
  if (seed == 0 || g.empty()) return g;
  Box b(g.front(), g.front());
  for (const auto& p : g) b = b.hull(Box(p, p));
  for (const auto& p : scenario_detail::random_points(b, 200, seed)) g.push_back(p);
  return g;
}

}  // namespace detail

/// Writes one curve file and one SVG per frame time; returns the paths.
inline std::vector<std::filesystem::path> write_frames(const RunConfig& cfg, const Scenario& s) {
  detail::ensure_dir(cfg.out);
  const PLCurve base = densify(s.initial_curve(cfg.depth), kFrameMaxSegment);
  const Isotopy H = glue_schedule(s.moves, s.schedule, cfg.depth);
  std::vector<std::filesystem::path> files;
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    const LocalMap m = H.at(cfg.times[i]);
    std::vector<Point3> v;
    v.reserve(base.vertices().size());
    for (const auto& p : base.vertices()) {
      const Point3 q = m.eval(p);
      // a homeomorphism keeps vertices apart; exact repeats are rounding
      if (v.empty() || !(q == v.back())) v.push_back(q);
    }
    if (base.closed() && v.size() > 1 && v.front() == v.back()) v.pop_back();
    const PLCurve c(std::move(v), base.closed());
    std::ostringstream name;
    name << detail::stem(cfg) << "_frame" << std::setw(3) << std::setfill('0') << i;
    const auto curve_path = cfg.out / (name.str() + ".curve");
    const auto svg_path = cfg.out / (name.str() + ".svg");
    detail::write_file(curve_path, curve_to_string(c));
    detail::write_file(svg_path, svg_string(c, kFrameGap));
    files.push_back(curve_path);
    files.push_back(svg_path);
  }
  return files;
}

inline nlohmann::ordered_json report_json(const RunConfig& cfg, const ScenarioRun& r) {
  nlohmann::ordered_json j;
  j["config"] = {{"scenario", cfg.scenario}, {"depth", cfg.depth}, {"horizon", cfg.horizon},
                 {"tol", cfg.tol},           {"seed", cfg.seed}};
  const auto body = to_json(r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["ball_factoring"] = nullptr;
  if (const auto fam = detail::nested_family(cfg.scenario)) {
    try {
      const auto b = find_ball_factoring(*fam, cfg.horizon);
      j["ball_factoring"] = {{"epsilon", b.epsilon}, {"n0", b.n0}};
    } catch (const std::runtime_error&) {
      // no n0 inside the horizon: leave null
    }
  }
  return j;
}

/// Report, before/after curve snapshots at the configured depth, and frames.
inline int cmd_run(const RunConfig& cfg, std::ostream& log) {
  try {
    cfg.validate();
    auto s = find_scenario(cfg.scenario);
    if (!s) {
      log << "unknown scenario: " << cfg.scenario << '\n';
      return unknown_scenario;
    }
    s->grid = detail::probe_grid(*s, cfg.seed);
    const ScenarioRun r = run_scenario(*s, cfg.horizon, cfg.depth, cfg.tol);

    detail::ensure_dir(cfg.out);
    const std::string stem = detail::stem(cfg);
    const PLCurve c0 = s->initial_curve(cfg.depth);
    detail::write_file(cfg.out / (stem + "_initial.curve"), curve_to_string(c0));
    detail::write_file(cfg.out / (stem + "_final.curve"),
                       curve_to_string(push_curve(truncated_map(s->moves, cfg.depth), c0, 16)));
    if (!cfg.times.empty()) write_frames(cfg, *s);
    detail::write_file(cfg.out / (stem + ".report"), report_json(cfg, r).dump(2) + "\n");

    log << cfg.scenario << ": hypotheses " << r.hypotheses.verdict() << ", injectivity "
        << (r.injectivity_pass ? "pass" : "fail") << (r.matches ? " (as expected)" : " (UNEXPECTED)")
        << '\n';
    return r.matches ? ok : mismatch;
  } catch (const UsageError& e) {
    log << "usage: " << e.what() << '\n';
    return usage;
  } catch (const detail::IoError& e) {
    log << "io: " << e.what() << '\n';
    return io_error;
  }
}

/// Tail-diameter table; nonzero exit when a hypothesis fails.
inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  try {
    cfg.validate();
    const auto s = find_scenario(cfg.scenario);
    if (!s) {
      out << "unknown scenario: " << cfg.scenario << '\n';
      return unknown_scenario;
    }
    const auto h = check_hypotheses(s->moves, cfg.horizon, kHypothesisThreshold);
    out << "n diameter\n";
    for (const auto& [n, d] : h.tail_diameters) out << n << ' ' << format_real(d) << '\n';
    out << "containment_ok: " << (h.containment_ok ? "true" : "false") << '\n'
        << "disjoint_supports: " << (h.disjoint_supports ? "true" : "false") << '\n'
        << "failed_condition: " << h.failed_condition << '\n'
        << "verdict: " << h.verdict() << '\n';
    return h.pass ? ok : mismatch;
  } catch (const UsageError& e) {
    out << "usage: " << e.what() << '\n';
    return usage;
  }
}

inline int cmd_frames(const RunConfig& cfg, std::ostream& log) {
  try {
    cfg.validate();
    if (cfg.times.empty()) throw UsageError("frames needs --times");
    const auto s = find_scenario(cfg.scenario);
    if (!s) {
      log << "unknown scenario: " << cfg.scenario << '\n';
      return unknown_scenario;
    }
    for (const auto& f : write_frames(cfg, *s)) log << f.string() << '\n';
    return ok;
  } catch (const UsageError& e) {
    log << "usage: " << e.what() << '\n';
    return usage;
  } catch (const detail::IoError& e) {
    log << "io: " << e.what() << '\n';
    return io_error;
  }
}

}  // namespace isotopy::cli
