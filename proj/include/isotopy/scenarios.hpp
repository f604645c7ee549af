// Curves and move sequences for the worked examples, each with the verdicts
// the engine is expected to reach.
//
// Coordinates are invented (the source only has drawings); each builder
// keeps the combinatorics: loop counts, nesting, which supports are
// disjoint. Accumulation points sit at the origin so that boxes at depth
// 64 are still resolvable in double precision.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isotopy/engine.hpp"
#include "isotopy/moves.hpp"

namespace isotopy {

struct Expected {
  bool hypotheses_pass = true;
  int failed_condition = 0;
  bool injectivity_pass = true;
};

struct Scenario {
  std::string name;
  /// Initial curve with its first `depth` features materialized.
  std::function<PLCurve(std::size_t depth)> initial_curve;
  MoveSequence moves;
  Schedule schedule;
  Expected expected;
  std::optional<double> declared_decay_ratio;
  std::vector<Point3> grid;                          // uniform-convergence samples
  std::vector<std::pair<Point3, Point3>> pairs;      // injectivity probe pairs
  std::vector<Point3> tracked;                       // census samples
};

/// Separation below which a probe pair counts as collapsed.
inline constexpr double kInjectivityFloor = 1e-3;
/// Tail-diameter threshold for condition (1).
inline constexpr double kHypothesisThreshold = 1e-3;

namespace scenario_detail {

inline double pow2(int e) { return std::ldexp(1.0, e); }

inline std::vector<Point3> random_points(const Box& b, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back({b.lo().x + b.extent().x * u(rng), b.lo().y + b.extent().y * u(rng),
                   b.lo().z + b.extent().z * u(rng)});
  return out;
}

/// Pairs (p, p + sep * e) for random p in b and random unit e.
inline std::vector<std::pair<Point3, Point3>> random_pairs(const Box& b, int n, double sep,
                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::pair<Point3, Point3>> out;
  for (const auto& p : random_points(b, n, seed ^ 0x9e3779b97f4a7c15ULL)) {
    Point3 e{g(rng), g(rng), g(rng)};
    e = (1.0 / norm(e)) * e;
    out.emplace_back(p, p + sep * e);
  }
  return out;
}

inline PLCurve push(const LocalMap& m, const PLCurve& c) { return push_curve(m, c, 16); }

/// Pushes c through the time-1 maps of `isos` (in order).
inline PLCurve push_all(const std::vector<Isotopy>& isos, PLCurve c) {
  LocalMap m;
  for (const auto& h : isos) m = compose(m, h.time1());
  return push(m, c);
}

/// Closed two-strand band narrowing to the origin. Strand 1 is the x-axis
/// from 0 to far_x; strand 2 comes back as a staircase with horizontal
/// runs [a_j, b_j] at height y_j, j = 1..steps.
inline PLCurve band(const std::function<double(int)>& a, const std::function<double(int)>& b,
                    const std::function<double(int)>& y, int steps, double far_x) {
  std::vector<Point3> v{{0, 0, 0}, {far_x, 0, 0}, {far_x, y(0), 0}, {a(0), y(0), 0}};
  for (int j = 1; j <= steps; ++j) {
    v.push_back({b(j), y(j), 0});
    v.push_back({a(j), y(j), 0});
  }
  return PLCurve(std::move(v), true);
}

// deeper runs drop below the projection's 1e-9 resolution; stitches past
// this depth are not drawn (the moves still exist)
inline constexpr std::size_t kBandSteps = 24;

}  // namespace scenario_detail

// ---------------------------------------------------------------------------
// Countably many Reidemeister I loops on a rectangle, accumulating at the
// origin on its bottom edge. Loop k lives in V_k of side ~2^-k; the V_k are
// disjoint and H_k removes loop k.

inline Frame countable_r1_frame(std::size_t k) {
  const double s = scenario_detail::pow2(-int(k));
  return Frame::uniform({s, 0, 0}, 0.5 * s);
}

inline Scenario build_countable_r1() {
  using namespace scenario_detail;
  const PLCurve clean({{-1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {-1, 1, 0}}, true);
  Scenario s{.name = "countable_r1",
             .initial_curve =
                 [clean](std::size_t depth) {
                   std::vector<Isotopy> ins;
                   for (std::size_t k = 1; k <= depth; ++k) ins.push_back(r1_insert(countable_r1_frame(k)));
                   return push_all(ins, clean);
                 },
             .moves = MoveSequence(
                 [](std::size_t k) {
                   const Frame f = countable_r1_frame(k);
                   return Move{r1_remove(f), f(r1_local_support())};
                 },
                 Box({-2, -1, -1}, {3, 2, 1}), std::nullopt, 0.5),
             .schedule = Schedule(),
             .expected = {true, 0, true},
             .declared_decay_ratio = 0.5,
      .grid = {}, .pairs = {}, .tracked = {}};
  const Box near({-0.05, -0.1, -0.15}, {0.8, 0.3, 0.25});
  s.grid = random_points(near, 1000, 101);
  s.pairs = random_pairs(near, 400, 0.02, 102);
  s.tracked = random_points(near, 200, 103);
  return s;
}

// ---------------------------------------------------------------------------
// Two-stage Reidemeister II: a two-strand band narrowing to the origin,
// carrying two interleaved families of stitches (finger of strand 1 pushed
// over strand 2). Stage 1 removes family A, stage 2 removes family B; each
// family has disjoint supports.

inline Frame r2_frame(std::size_t j, bool family_b) {
  const double s = scenario_detail::pow2(-int(j));
  return Frame::uniform({s * (family_b ? 1.3 : 1.0), 0, 0}, 0.3 * s);
}

namespace scenario_detail {
inline PLCurve r2_clean_band() {
  return band([](int j) { return pow2(-j); }, [](int j) { return 1.6 * pow2(-j); },
              [](int j) { return 0.09 * pow2(-j); }, int(kBandSteps), 1.2);
}
inline PLCurve r2_band_with(bool family_a, bool family_b, std::size_t depth) {
  std::vector<Isotopy> ins;
  for (std::size_t j = 1; j <= std::min(depth, kBandSteps); ++j) {
    if (family_a) ins.push_back(r2_insert(r2_frame(j, false)));
    if (family_b) ins.push_back(r2_insert(r2_frame(j, true)));
  }
  return push_all(ins, r2_clean_band());
}
inline Scenario r2_stage(bool family_b) {
  Scenario s{
      .name = family_b ? "countable_r2_stage2" : "countable_r2_stage1",
      .initial_curve =
          [family_b](std::size_t depth) { return r2_band_with(!family_b, true, depth); },
      .moves = MoveSequence(
          [family_b](std::size_t j) {
            const Frame f = r2_frame(j, family_b);
            return Move{r2_remove(f), f(r2_local_support())};
          },
          Box({-1, -1, -1}, {2, 1, 1}), std::nullopt, 0.5),
      .schedule = Schedule(),
      .expected = {true, 0, true},
      .declared_decay_ratio = 0.5,
      .grid = {}, .pairs = {}, .tracked = {}};
  const Box near({-0.02, -0.05, -0.05}, {0.8, 0.2, 0.12});
  s.grid = random_points(near, 1000, family_b ? 211 : 201);
  s.pairs = random_pairs(near, 400, 0.02, family_b ? 212 : 202);
  s.tracked = random_points(near, 200, family_b ? 213 : 203);
  return s;
}
}  // namespace scenario_detail

/// Stage 1 ends where stage 2 starts.
inline std::pair<Scenario, Scenario> build_countable_r2_two_stage() {
  return {scenario_detail::r2_stage(false), scenario_detail::r2_stage(true)};
}

// ---------------------------------------------------------------------------
// Recursive Reidemeister I. The arc is a wedge with vertex y_inf = origin;
// one leg runs along +x. V_1 is (6+eps) x (2+eps) x (2+eps) (l = 1,
// eps = 0.1) centred at y_inf, V_k = V_1 / 2^{k-1}, and V_{k+.5} is V_{k+1}
// scaled up by 1.25 about the same centre.
//
// h_k = (a) a pull toward y_inf in a box T_k with y_inf on one face, apex
// (0, 0.4, 0)/2^{k-1} -> (0, 0.2, 0)/2^{k-1} (this is what squishes points
// near the tip), then (b) a kink on the +x leg in V_k \ V_{k+.5}.
// h_{k+.5} = unsquish on (V_{k+.5}, V_{k+1}) with tip q_k = y_inf.
//
// Move k of the sequence is h_1 for k = 1 and h_{k-.5} then h_k for k >= 2,
// with support V_{k-.5}.

struct RecursiveR1Geometry {
  static constexpr double eps = 0.1;
  static constexpr double outer_scale = 1.25;

  static double s(std::size_t k) { return scenario_detail::pow2(1 - int(k)); }
  static Box V(std::size_t k) {
    return Box::centered({0, 0, 0}, {0.5 * (6 + eps) * s(k), 0.5 * (2 + eps) * s(k),
                                     0.5 * (2 + eps) * s(k)});
  }
  /// V_{k+.5}.
  static Box V_half(std::size_t k) { return V(k + 1).scaled(outer_scale); }
  static Box T(std::size_t k) {
    return Box({-0.5 * s(k), 0.0, -0.5 * s(k)}, {0.5 * s(k), 0.8 * s(k), 0.5 * s(k)});
  }
  static Point3 apex(std::size_t k) { return {0.0, 0.4 * s(k), 0.0}; }
  static Frame kink_frame(std::size_t k) { return Frame::uniform({2.0 * s(k), 0, 0}, s(k)); }

  /// h_k as an isotopy: tip pull, then kink insertion.
  static Isotopy insert(std::size_t k) {
    std::vector<Isotopy> parts{Isotopy::uniform({Stage::cone(T(k), apex(k), apex(k + 1))}),
                               r1_insert(kink_frame(k))};
    return Isotopy::chain(parts);
  }
};

/// Inverse-Lipschitz estimate of h_k on V_k (scale invariant, so k = 2),
/// times the safety factor 0.9.
inline double recursive_r1_c(std::uint64_t seed = 7) {
  using G = RecursiveR1Geometry;
  return 0.9 * estimate_inverse_lipschitz(G::insert(2).time1(), G::V(2), 200000, seed);
}

inline Scenario build_recursive_r1(bool with_unsquish = true) {
  using namespace scenario_detail;
  using G = RecursiveR1Geometry;
  const double c = recursive_r1_c();
  // legs: along +x, and down-left in the xy-plane
  const PLCurve wedge({{4.0, 0, 0}, {0, 0, 0}, {-2.5, -2.5, 0}}, false);
  Scenario s{
      .name = with_unsquish ? "recursive_r1" : "recursive_r1_no_unsquish",
      .initial_curve = [wedge](std::size_t) { return wedge; },
      .moves = MoveSequence(
          [c, with_unsquish](std::size_t k) {
            if (k == 1) return Move{G::insert(1).with_support(G::V(1)), G::V(1)};
            const Box outer = G::V_half(k - 1);
            std::vector<Isotopy> parts;
            if (with_unsquish)
              parts.push_back(Isotopy::uniform(
                  {Stage::unsquish({outer, G::V(k), {0, 0, 0}, c})}));
            parts.push_back(G::insert(k));
            return Move{Isotopy::chain(parts).with_support(outer), outer};
          },
          G::V(1).scaled(1.5), std::nullopt, 0.5),
      .schedule = Schedule(),
      .expected = {true, 0, with_unsquish},
      .declared_decay_ratio = 0.5,
      .grid = {}, .pairs = {}, .tracked = {}};
  s.grid = random_points(G::V(1), 1000, 301);
  // pairs along the line the tip pulls drag toward y_inf
  for (int i = 0; i < 40; ++i) {
    const double y = 0.01 + 0.0085 * i;
    s.pairs.push_back({{0, y, 0}, {0, y + 0.02, 0}});
  }
  for (const auto& pr : random_pairs(G::V(2), 200, 0.02, 302)) s.pairs.push_back(pr);
  for (const auto& p : random_points(G::V(1), 300, 303))
    if (norm(p) > 1e-3) s.tracked.push_back(p);
  return s;
}

// ---------------------------------------------------------------------------
// Countable connected sum, untied summand by summand. A trefoil summand can't
// be undone by an isotopy of its own shell, so each summand here is three R1
// kinks (three crossings) in a box W_k inside V_k \ V_{k+1}; H_k removes all
// three. The arc runs from (1.5, 0, 0) to the limit point at the origin.
//
// Extended: the arc continues straight on to (-1, 0, 0). To unknot that
// curve the supports must reach along the extra segment, so V_k is W_k
// hulled with it and the tail diameters never drop below its length.

inline Frame trefoil_kink_frame(std::size_t k, int i) {
  const double s = scenario_detail::pow2(-int(k));
  return Frame::uniform({(0.57 + 0.12 * i) * s, 0, 0}, 0.12 * s);
}

inline Box trefoil_summand_box(std::size_t k) {
  return trefoil_kink_frame(k, 0)(r1_local_support()).hull(trefoil_kink_frame(k, 2)(r1_local_support()));
}

inline Scenario build_trefoil_chain(bool extended = false) {
  using namespace scenario_detail;
  std::vector<Point3> v{{1.5, 0, 0}, {0, 0, 0}};
  if (extended) v.back() = {-1.0, 0, 0};
  const PLCurve arc(v, false);
  const Box segment({-1.0, 0, 0}, {0, 0, 0});
  Scenario s{
      .name = extended ? "trefoil_chain_extended" : "trefoil_chain",
      .initial_curve =
          [arc](std::size_t depth) {
            std::vector<Isotopy> ins;
            for (std::size_t k = 1; k <= depth; ++k)
              for (int i = 0; i < 3; ++i) ins.push_back(r1_insert(trefoil_kink_frame(k, i)));
            return push_all(ins, arc);
          },
      .moves = MoveSequence(
          [extended, segment](std::size_t k) {
            std::vector<Isotopy> parts;
            for (int i = 2; i >= 0; --i) parts.push_back(r1_remove(trefoil_kink_frame(k, i)));
            Box V = trefoil_summand_box(k);
            if (extended) V = V.hull(segment);
            return Move{Isotopy::chain(parts).with_support(V), V};
          },
          Box({-2, -1, -1}, {2, 1, 1}), std::nullopt, extended ? std::nullopt : std::optional(0.5)),
      .schedule = Schedule(),
      .expected = {!extended, extended ? 1 : 0, true},
      .declared_decay_ratio = extended ? std::nullopt : std::optional(0.5),
      .grid = {}, .pairs = {}, .tracked = {}};
  const Box near({0.0, -0.05, -0.05}, {0.95, 0.1, 0.1});
  s.grid = random_points(near, 1000, 401);
  s.pairs = random_pairs(near, 400, 0.02, 402);
  s.tracked = random_points(near, 200, 403);
  return s;
}

// ---------------------------------------------------------------------------
// Fox's remarkable curve, in the form that matters here: a band of stitches
// closing down on the wild point (origin). H_k slides stitch k off (R2
// finger removal) and pulls the trap T_k below the band toward the wild
// point. The band lies on the top face of every T_k, so the curve never
// sees the traps, but the line of points running down the z-axis (through
// the first stitch's span, below the band) is squeezed into the wild point:
// every tracked point stays in every later support.

inline Frame fox_stitch_frame(std::size_t j) {
  const double s = scenario_detail::pow2(-int(j));
  return Frame::uniform({s, 0, 0}, 0.5 * s);
}

inline Box fox_trap(std::size_t k) {
  const double s = scenario_detail::pow2(-int(k));
  return Box({-0.4 * s, -0.4 * s, -0.8 * s}, {0.4 * s, 0.4 * s, 0.0});
}

inline Scenario build_fox_remarkable() {
  using namespace scenario_detail;
  auto clean = [] {
    return band([](int j) { return pow2(-j); }, [](int j) { return 1.5 * pow2(-j); },
                [](int j) { return 0.15 * pow2(-j); }, int(kBandSteps), 1.2);
  };
  Scenario s{
      .name = "fox_remarkable",
      .initial_curve =
          [clean](std::size_t depth) {
            std::vector<Isotopy> ins;
            for (std::size_t j = 1; j <= std::min(depth, kBandSteps); ++j)
              ins.push_back(r2_insert(fox_stitch_frame(j)));
            return push_all(ins, clean());
          },
      .moves = MoveSequence(
          [](std::size_t k) {
            const double s = pow2(-int(k));
            const Box T = fox_trap(k);
            const Box V = T.hull(fox_stitch_frame(k)(r2_local_support()));
            std::vector<Isotopy> parts{
                r2_remove(fox_stitch_frame(k)),
                Isotopy::uniform({Stage::cone(T, {0, 0, -0.4 * s}, {0, 0, -0.2 * s})})};
            return Move{Isotopy::chain(parts).with_support(V), V};
          },
          Box({-1, -1, -1}, {2, 1, 1}), std::nullopt, 0.5),
      .schedule = Schedule(),
      .expected = {true, 0, false},
      .declared_decay_ratio = 0.5,
      .grid = {}, .pairs = {}, .tracked = {}};
  // the threading line: 101 points down the z-axis across the first trap
  const double depth1 = 0.4 * pow2(-1);
  std::vector<Point3> line;
  for (int i = 0; i <= 100; ++i) line.push_back({0, 0, -depth1 * (0.01 + 0.99 * i / 100.0)});
  s.tracked = line;
  for (int i = 0; i + 10 <= 100; ++i) s.pairs.push_back({line[i], line[i + 10]});
  s.grid = random_points(Box({-0.3, -0.3, -0.45}, {0.8, 0.3, 0.2}), 1000, 501);
  return s;
}

// ---------------------------------------------------------------------------
// Snowflake-style iterates. f_1 is an equilateral triangle; f_{n+1} splits
// every segment at 1/3 and 2/3 and lifts its midpoint by h * shrink^n,
// partly outward in the plane and partly along z. Existing vertices keep
// their parameter, so f_{n+1} - f_n peaks at the new apexes and the sup
// deviation contracts by exactly `shrink`.

inline std::vector<PLCurve> build_snowflake(double shrink, std::size_t depth, double h = 0.2) {
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("build_snowflake: shrink in (0,1)");
  if (depth < 1) throw std::invalid_argument("build_snowflake: depth >= 1");
  const double r = 1.0 / std::sqrt(3.0);
  std::vector<Point3> v;
  for (int i = 0; i < 3; ++i) {
    const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * i / 3;  // ccw
    v.push_back({r * std::cos(a), r * std::sin(a), 0});
  }
  std::vector<PLCurve> out{PLCurve(v, true)};
  double amp = h;
  for (std::size_t n = 1; n < depth; ++n, amp *= shrink) {
    std::vector<Point3> next;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point3 a = v[i], b = v[(i + 1) % v.size()];
      const Point3 d = b - a;
      const double len = std::hypot(d.x, d.y);
      const Point3 outward{d.y / len, -d.x / len, 0};
      const double up = (n % 2) ? 0.6 : -0.6;
      next.push_back(a);
      next.push_back(lerp(a, b, 1.0 / 3));
      next.push_back(lerp(a, b, 0.5) + amp * (0.8 * outward + Point3{0, 0, up}));
      next.push_back(lerp(a, b, 2.0 / 3));
    }
    v = std::move(next);
    out.emplace_back(v, true);
  }
  return out;
}

/// Sup over parameters of |g - f| where every vertex of f reappears in g
/// (f_n -> f_{n+1} above). PL difference peaks at a vertex of g.
inline double snowflake_deviation(const PLCurve& f, const PLCurve& g) {
  const auto& fv = f.vertices();
  const auto& gv = g.vertices();
  if (gv.size() != 4 * fv.size()) throw std::invalid_argument("snowflake_deviation: not consecutive");
  double sup = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const Point3 a = fv[i], b = fv[(i + 1) % fv.size()];
    const double ts[4] = {0.0, 1.0 / 3, 0.5, 2.0 / 3};
    for (int j = 0; j < 4; ++j) sup = std::max(sup, distance(gv[4 * i + j], lerp(a, b, ts[j])));
  }
  return sup;
}

// ---------------------------------------------------------------------------
// The 1-D counterexample: h_k(x) = x^{(k+1)/k} on [0,1]. Every h_k is an
// increasing bijection of the interval, but the composites x^{n+1} converge
// to a map crushing [0,1) to 0. Supports are the whole interval, so the
// tail diameters are stuck at 1.

inline Scenario build_1d_counterexample() {
  const Box unit({0, 0, 0}, {1, 0, 0});
  Scenario s{
      .name = "1d_counterexample",
      .initial_curve = [](std::size_t) { return PLCurve({{0, 0, 0}, {1, 0, 0}}, false); },
      .moves = MoveSequence(
          [unit](std::size_t k) {
            return Move{Isotopy::uniform({Stage::power1d(double(k + 1) / double(k))}), unit};
          },
          Box({-1, -1, -1}, {2, 1, 1})),
      .schedule = Schedule(),
      .expected = {false, 1, false},
      .declared_decay_ratio = std::nullopt,
      .grid = {}, .pairs = {}, .tracked = {}};
  for (int i = 1; i < 100; ++i) s.grid.push_back({i / 100.0, 0, 0});
  s.pairs = {{{0.1, 0, 0}, {0.3, 0, 0}}, {{0.5, 0, 0}, {0.9, 0, 0}}};
  s.tracked = {{0.25, 0, 0}, {0.5, 0, 0}, {0.9, 0, 0}};
  return s;
}

// ---------------------------------------------------------------------------
// Registry and verdicts.

/// The regression set, in report order.
inline std::vector<std::string> scenario_names() {
  return {"countable_r1",  "countable_r2_stage1",    "countable_r2_stage2", "recursive_r1",
          "trefoil_chain", "trefoil_chain_extended", "fox_remarkable",      "1d_counterexample"};
}

/// nullopt for an unknown name. "recursive_r1_no_unsquish" is the ablation.
inline std::optional<Scenario> find_scenario(const std::string& name) {
  if (name == "countable_r1") return build_countable_r1();
  if (name == "countable_r2_stage1") return build_countable_r2_two_stage().first;
  if (name == "countable_r2_stage2") return build_countable_r2_two_stage().second;
  if (name == "recursive_r1") return build_recursive_r1(true);
  if (name == "recursive_r1_no_unsquish") return build_recursive_r1(false);
  if (name == "trefoil_chain") return build_trefoil_chain(false);
  if (name == "trefoil_chain_extended") return build_trefoil_chain(true);
  if (name == "fox_remarkable") return build_fox_remarkable();
  if (name == "1d_counterexample") return build_1d_counterexample();
  return std::nullopt;
}

struct ScenarioRun {
  std::string name;
  std::size_t horizon = 0;
  std::size_t depth = 0;
  double tol = 0.0;
  HypothesisReport hypotheses;
  ProbeReport probes;
  bool injectivity_pass = true;
  Expected expected;
  bool matches = false;
};

/// Hypotheses up to `horizon`; probes at truncation `depth` (uniform
/// convergence compares depth/2 against depth); limit evaluation of the
/// tracked points at t = 1 with `tol`.
inline ScenarioRun run_scenario(const Scenario& s, std::size_t horizon, std::size_t depth,
                                double tol) {
  if (depth < 1) throw std::invalid_argument("run_scenario: depth >= 1");
  ScenarioRun r;
  r.name = s.name;
  r.horizon = horizon;
  r.depth = depth;
  r.tol = tol;
  r.expected = s.expected;
  r.hypotheses = check_hypotheses(s.moves, horizon, kHypothesisThreshold);
  r.probes.sup_deviation = uniform_convergence_probe(s.moves, depth / 2, depth, s.grid);
  r.probes.min_image_separation = injectivity_probe(s.moves, depth, s.pairs);
  r.probes.unsettled_points = infinite_motion_census(s.moves, depth, s.tracked);
  for (const auto& p : s.tracked)
    if (eval_limit_isotopy(s.moves, s.schedule, 1.0, p, tol).status == LimitStatus::budget_exhausted)
      r.probes.budget_exhausted = true;
  r.injectivity_pass = r.probes.min_image_separation >= kInjectivityFloor;
  const auto& h = r.hypotheses;
  r.matches = h.pass == s.expected.hypotheses_pass &&
              (h.pass || h.failed_condition == s.expected.failed_condition) &&
              r.injectivity_pass == s.expected.injectivity_pass;
  return r;
}

inline nlohmann::ordered_json to_json(const ScenarioRun& r) {
  using J = nlohmann::ordered_json;
  J j;
  j["scenario"] = r.name;
  j["horizon"] = r.horizon;
  j["depth"] = r.depth;
  j["tol"] = r.tol;
  j["hypotheses"] = to_json(r.hypotheses);
  j["probes"] = to_json(r.probes);
  j["injectivity"] = r.injectivity_pass ? "pass" : "fail";
  j["expected"] = J{{"hypotheses", r.expected.hypotheses_pass
                                       ? std::string("pass")
                                       : "fail(condition " +
                                             std::to_string(r.expected.failed_condition) + ")"},
                    {"injectivity", r.expected.injectivity_pass ? "pass" : "fail"}};
  j["match"] = r.matches;
  return j;
}

}  // namespace isotopy
