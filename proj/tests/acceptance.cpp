// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isotopy/cli.hpp"
#include "isotopy/fox_artin.hpp"
#include "isotopy/scenarios.hpp"

using namespace isotopy;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Point3 uniform_in(const Box& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {b.lo().x + u(rng) * b.extent().x, b.lo().y + u(rng) * b.extent().y,
          b.lo().z + u(rng) * b.extent().z};
}

// 1 ----------------------------------------------------------------------
void verdict_regression() {
  const auto t0 = std::chrono::steady_clock::now();
  int matched = 0, total = 0;
  std::string bad;
  for (const auto& name : scenario_names()) {
    ++total;
    const auto r = run_scenario(*find_scenario(name), 20, 20, 1e-6);
    if (r.matches) ++matched;
    else bad += " " + name;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, matched == total && secs < 60.0,
         std::to_string(matched) + "/" + std::to_string(total) + " scenarios match" + bad +
             fmt(", %.2f s", secs));
}

// 2 ----------------------------------------------------------------------
void map_correctness() {
  std::mt19937_64 rng(2024);
  const Box region({-1, -0.5, 0}, {1, 0.5, 2});
  const Box wide({-3, -3, -3}, {3, 3, 4});
  struct Case {
    std::string name;
    LocalMap m;
    std::optional<Box> support;
  };
  UnsquishParams up{Box({-2, -2, -1}, {2, 2, 3}), Box({-1, -1, 0}, {1, 1, 2}), {0.3, -0.2, 1.1}, 0.4};
  const LocalMap cone = make_cone_map(region, {0.1, 0.1, 1.0}, {-0.6, 0.3, 0.4});
  std::vector<Case> cases{
      {"affine", make_affine_map({Mat3::diagonal({2, 0.5, 1.5}), {0.1, -0.3, 0.2}}), std::nullopt},
      {"cone", cone, region},
      {"unsquish", make_unsquish_at(up, 0.7), up.outer},
      {"composite", compose(cone, make_unsquish_at(up, 1.0)), up.outer},
  };
  bool ok = true;
  double worst = 0.0;
  std::string why;
  for (const auto& c : cases) {
    for (int i = 0; i < 10000; ++i) {
      const Point3 p = uniform_in(wide, rng);
      const Point3 q = c.m.eval(p);
      if (c.support && !c.support->contains(p) && !(q == p)) {
        ok = false;
        why += " " + c.name + ":moved-outside";
        break;
      }
      const double e = distance(c.m.eval_inverse(q), p);
      worst = std::max(worst, e);
      if (!(e < 1e-9)) {
        ok = false;
        why += " " + c.name + ":roundtrip";
        break;
      }
    }
  }
  // power map on the unit segment
  const LocalMap pw = make_power1d(1.7);
  for (int i = 0; i <= 10000; ++i) {
    const Point3 p{i / 10000.0, 0, 0};
    const double e = distance(pw.eval_inverse(pw.eval(p)), p);
    worst = std::max(worst, e);
    if (!(e < 1e-9)) ok = false;
  }
  // cone fixes the boundary of its region
  double bnd = 0.0;
  std::uniform_int_distribution<int> face(0, 5);
  for (int i = 0; i < 10000; ++i) {
    Point3 p = uniform_in(region, rng);
    const int f = face(rng);
    p[f / 2] = (f % 2) ? region.hi()[f / 2] : region.lo()[f / 2];
    bnd = std::max(bnd, distance(cone.eval(p), p));
  }
  ok = ok && bnd <= 1e-12;
  report(2, ok, fmt("max roundtrip %.2e, max boundary motion %.2e", worst, bnd) + why);
}

// 3 ----------------------------------------------------------------------
void unsquish_exactness() {
  std::mt19937_64 rng(3);
  bool ok = true;
  double worst = 0.0;
  int inner_n = 0, shell_n = 0;
  for (double c : {0.3, 0.5, 0.9}) {
    const UnsquishParams u{Box({-3, -2, -2}, {3, 2, 2}), Box({-2, -1, -1}, {2, 1, 1}),
                           {0.4, -0.3, 0.2}, c};
    const LocalMap m = make_unsquish_at(u, 1.0);
    int near = 0, far = 0;
    while (near < 1000 || far < 1000) {
      const Point3 p = uniform_in(u.inner, rng);
      const Point3 img = m.eval(p);
      if (unsquish_parameter(u, p) <= c / 2) {
        if (near >= 1000) continue;
        ++near;
        const double e = std::abs(distance(img, u.tip) - distance(p, u.tip) / c);
        worst = std::max(worst, e);
        if (!(e <= 1e-9)) ok = false;
      } else {
        if (far >= 1000) continue;
        ++far;
        if (!u.outer.contains(img) || u.inner.contains_interior(img)) ok = false;
      }
    }
    inner_n += near;
    shell_n += far;
  }
  report(3, ok, fmt("max |d' - d/c| %.2e over %.0f near-tip samples", worst, inner_n) +
                    ", " + std::to_string(shell_n) + " shell samples");
}

// 4 ----------------------------------------------------------------------
void composite_bound() {
  const auto s = build_recursive_r1();
  std::mt19937_64 rng(4);
  bool ok = true;
  double worst = 1e300;
  int n = 0;
  for (std::size_t k = 2; k <= 6; ++k) {
    const LocalMap m = s.moves.time1(k);  // unsquish, then the level-k insert
    for (int i = 0; i < 200; ++i, ++n) {
      const Point3 p = uniform_in(RecursiveR1Geometry::V(k), rng);
      const double slack = distance(m.eval(p), {0, 0, 0}) - distance(p, {0, 0, 0});
      worst = std::min(worst, slack);
      if (slack < -1e-9) ok = false;
    }
  }
  report(4, ok, fmt("%.0f samples, min d(h(p),q) - d(p,q) = %.2e", n, worst));
}

// 5 ----------------------------------------------------------------------
void uniform_convergence_bound() {
  bool ok = true;
  double margin = 1e300;
  for (const auto& name : scenario_names()) {
    const auto s = *find_scenario(name);
    if (!s.expected.hypotheses_pass) continue;
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{5, 15}, {10, 20}}) {
      std::vector<Box> boxes;
      for (std::size_t k = n + 1; k <= m; ++k) boxes.push_back(s.moves.support(k));
      const double bound = union_diameter(boxes);
      const double dev = uniform_convergence_probe(s.moves, n, m, s.grid);
      margin = std::min(margin, bound - dev);
      if (dev > bound + 1e-9) ok = false;
    }
  }
  report(5, ok, fmt("min (bound - deviation) = %.3e", margin));
}

// 6 ----------------------------------------------------------------------
void failure_detection() {
  const auto fox = build_fox_remarkable();
  const bool fox_h = check_hypotheses(fox.moves, 20).pass;
  const double fox_sep = injectivity_probe(fox.moves, 20, fox.pairs);
  const auto census = infinite_motion_census(fox.moves, 30, fox.tracked);
  const auto ext = check_hypotheses(build_trefoil_chain(true).moves, 20);
  double ext_min = 1e300;
  for (const auto& [k, d] : ext.tail_diameters) ext_min = std::min(ext_min, d);
  const auto one = build_1d_counterexample();
  const auto oneh = check_hypotheses(one.moves, 20);
  const double a = apply_moves(one.moves, 0, 300, {0.5, 0, 0}).x;
  const double b = apply_moves(one.moves, 0, 300, {0.9, 0, 0}).x;
  const bool ok = fox_h && fox_sep < 1e-3 && census > 0 && ext.failed_condition == 1 &&
                  ext_min >= 1.0 && oneh.failed_condition == 1 && a < 1e-6 && b < 1e-6;
  report(6, ok,
         fmt("fox sep %.2e, census %.0f", fox_sep, double(census)) +
             fmt("; extended min tail %.3f; 1-D images %.1e", ext_min, a) + fmt(", %.1e", b));
}

// 7 ----------------------------------------------------------------------
void seam_continuity() {
  bool ok = true;
  double worst = 0.0;
  std::size_t seams = 0;
  std::mt19937_64 rng(7);
  for (const char* name : {"countable_r1", "recursive_r1", "fox_remarkable"}) {
    const auto s = *find_scenario(name);
    const Isotopy H = glue_schedule(s.moves, s.schedule, 10);
    std::vector<Point3> pts;
    const Box b = s.moves.support(1).hull(s.moves.support(2));
    for (int i = 0; i < 1000; ++i) pts.push_back(uniform_in(b, rng));
    for (const auto& w : H.windows()) {
      if (w.end >= 1.0) continue;
      ++seams;
      const LocalMap left = H.at(std::nextafter(w.end, 0.0));
      const LocalMap right = H.at(w.end);
      for (const auto& p : pts) {
        const double e = distance(left.eval(p), right.eval(p));
        worst = std::max(worst, e);
        if (!(e <= 1e-9)) ok = false;
      }
    }
  }
  report(7, ok, fmt("%.0f seams x 1000 samples, max jump %.2e", double(seams), worst));
}

// 8 ----------------------------------------------------------------------
void fox_artin_factoring() {
  const Point3 p{0.25, -0.5, 0.125};
  const NestedFamily cubes{p, [p](std::size_t k) {
                             const double h = 0.5 * std::ldexp(1.0, 1 - int(k));
                             return Box::centered(p, {h, h, h});
                           },
                           std::nullopt};
  const auto r = find_ball_factoring(cubes, 20);
  // brute force: first cube whose half-diagonal is under eps
  std::size_t oracle = 1;
  while (!(std::sqrt(3.0) / 2 * std::ldexp(1.0, 1 - int(oracle)) < 0.25)) ++oracle;
  const bool ok = r.n0 == 3 && r.n0 == oracle && r.epsilon == 0.25 && r.chain_certified &&
                  box_in_ball(cubes.region(r.n0), p, r.epsilon) &&
                  ball_in_box(p, r.epsilon, cubes.region(1));
  report(8, ok, fmt("n0 = %.0f, eps = %.3f", double(r.n0), r.epsilon) +
                    ", oracle n0 = " + std::to_string(oracle));
}

// 9 ----------------------------------------------------------------------
void snowflake() {
  const auto fs = build_snowflake(0.25, 6);
  bool simple = true;
  for (const auto& f : fs) simple = simple && curve_is_simple(f, 1e-6);
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i + 2 < fs.size(); ++i) {
    const double r = snowflake_deviation(fs[i + 1], fs[i + 2]) / snowflake_deviation(fs[i], fs[i + 1]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  report(9, simple && lo >= 0.2 && hi <= 0.3,
         std::string(simple ? "all iterates simple" : "NOT simple") +
             fmt(", deviation ratios in [%.4f, %.4f]", lo, hi));
}

// 10 ---------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void determinism() {
  const fs::path root = fs::temp_directory_path() / "isotopy_acceptance";
  fs::remove_all(root);
  bool ok = true;
  std::ostringstream log;
  for (const char* name : {"countable_r1", "recursive_r1", "fox_remarkable"}) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      cli::RunConfig cfg;
      cfg.scenario = name;
      cfg.depth = 12;
      cfg.seed = 99;
      cfg.out = root / std::to_string(run);
      if (cli::cmd_run(cfg, log) != cli::ok) ok = false;
      const std::string body = slurp(cfg.out / (std::string(name) + "_12_99.report"));
      if (body.empty()) ok = false;
      if (run == 0) first = body;
      else if (body != first) ok = false;
    }
  }
  fs::remove_all(root);
  report(10, ok, "3 scenarios x 2 runs, reports byte-identical");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      verdict_regression, map_correctness,  unsquish_exactness, composite_bound,
      uniform_convergence_bound, failure_detection, seam_continuity, fox_artin_factoring,
      snowflake, determinism};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("criterion: FAIL  exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
