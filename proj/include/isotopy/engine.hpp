// Truncations, limit evaluation, hypothesis checks and numerical probes for
// a countable move sequence.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isotopy/curve_io.hpp"
#include "isotopy/isotopy.hpp"

namespace isotopy {

/// h_n o ... o h_1, with h_1 applied first. n = 0 is the identity.
inline LocalMap truncated_map(const MoveSequence& seq, std::size_t n) {
  if (seq.length() && n > *seq.length())
    throw std::out_of_range("truncated_map: sequence has only " + std::to_string(*seq.length()) +
                            " moves");
  LocalMap out;
  for (std::size_t k = 1; k <= n; ++k) out = compose(out, seq.time1(k));
  return out;
}

/// Applies h_{from+1}, ..., h_to to p.
inline Point3 apply_moves(const MoveSequence& seq, std::size_t from, std::size_t to, Point3 p) {
  for (std::size_t k = from + 1; k <= to; ++k) p = seq.time1(k).eval(p);
  return p;
}

/// out[n-1] = diam(V_n u ... u V_h) for n = 1..h.
inline std::vector<double> tail_diameters(const MoveSequence& seq, std::size_t horizon) {
  std::vector<Box> boxes;
  for (std::size_t k = 1; k <= horizon; ++k) boxes.push_back(seq.support(k));
  std::vector<double> out(horizon, 0.0);
  double running = 0.0;
  for (std::size_t i = horizon; i-- > 0;) {
    // adding V_i to the tail only creates new pairs involving V_i
    running = std::max(running, box_diameter(boxes[i]));
    const auto ci = boxes[i].corners();
    for (std::size_t j = i + 1; j < horizon; ++j)
      for (const auto& a : ci)
        for (const auto& b : boxes[j].corners()) running = std::max(running, distance(a, b));
    out[i] = running;
  }
  return out;
}

enum class LimitStatus { exact, settled, tol_converged, budget_exhausted };

inline std::string to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::exact:
      return "exact";
    case LimitStatus::settled:
      return "settled";
    case LimitStatus::tol_converged:
      return "tol-converged";
    case LimitStatus::budget_exhausted:
      return "budget-exhausted";
  }
  return "?";
}

struct LimitValue {
  Point3 point;
  LimitStatus status = LimitStatus::exact;
  std::size_t steps = 0;  // moves applied
};

/// The glued isotopy H_inf(t, p). For t < 1 the stage owning t is evaluated
/// exactly; at t = 1 moves are applied until the image leaves every later
/// support (settled) or the remaining tail union is smaller than tol.
inline LimitValue eval_limit_isotopy(const MoveSequence& seq, const Schedule& sched, double t,
                                     Point3 p, double tol, std::size_t k_budget = 64) {
  if (!(tol > 0.0)) throw std::invalid_argument("eval_limit_isotopy: tol must be positive");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_limit_isotopy: t outside [0,1]");
  if (t < 1.0) {
    const std::size_t k = sched.index(t);
    if (!seq.has(k)) {
      // finite sequence already finished
      const std::size_t n = *seq.length();
      return {apply_moves(seq, 0, n, p), LimitStatus::exact, n};
    }
    const Point3 y = apply_moves(seq, 0, k - 1, p);
    const double a = sched.t(k - 1);
    const double b = sched.t(k);
    return {seq.move(k).H.eval((t - a) / (b - a), y), LimitStatus::exact, k};
  }
  const std::size_t horizon = seq.length() ? std::min(k_budget, *seq.length()) : k_budget;
  const bool complete = seq.length() && horizon == *seq.length();
  const auto tails = tail_diameters(seq, horizon);
  Point3 y = p;
  for (std::size_t n = 0;; ++n) {
    if (n == horizon)
      return {y, complete ? LimitStatus::settled : LimitStatus::budget_exhausted, n};
    bool trapped = false;
    for (std::size_t k = n + 1; k <= horizon && !trapped; ++k) trapped = seq.support(k).contains(y);
    if (!trapped) return {y, LimitStatus::settled, n};
    if (tails[n] < tol) return {y, LimitStatus::tol_converged, n};
    y = seq.time1(n + 1).eval(y);
  }
}

struct HypothesisReport {
  std::vector<std::pair<std::size_t, double>> tail_diameters;
  bool containment_ok = true;
  bool disjoint_supports = true;
  bool pass = true;
  int failed_condition = 0;  // 0 = none; 1 = tail diameters; 2 = containment
  double threshold = 0.0;
  std::optional<double> declared_decay_ratio;
  std::optional<double> empirical_decay_ratio;

  std::string verdict() const {
    return pass ? "pass" : "fail(condition " + std::to_string(failed_condition) + ")";
  }
};

/// Conditions (1) tail-union diameters -> 0 and (2) all supports inside
/// the interior of the container, up to a finite horizon; plus pairwise
/// disjointness of supports.
inline HypothesisReport check_hypotheses(const MoveSequence& seq, std::size_t horizon,
                                         double threshold = 1e-3) {
  if (horizon < 2) throw std::invalid_argument("check_hypotheses: horizon must be >= 2");
  if (seq.length()) horizon = std::min(horizon, *seq.length());
  HypothesisReport r;
  r.threshold = threshold;
  r.declared_decay_ratio = seq.declared_decay_ratio();
  const auto tails = tail_diameters(seq, horizon);
  for (std::size_t n = 1; n <= horizon; ++n) r.tail_diameters.emplace_back(n, tails[n - 1]);
  for (std::size_t k = 1; k <= horizon; ++k) {
    if (!seq.container().contains_interior(seq.support(k))) r.containment_ok = false;
    for (std::size_t j = k + 1; j <= horizon && r.disjoint_supports; ++j)
      if (seq.support(k).intersects(seq.support(j))) r.disjoint_supports = false;
  }
  if (horizon >= 2 && tails.front() > 0.0 && tails.back() > 0.0)
    r.empirical_decay_ratio = std::pow(tails.back() / tails.front(), 1.0 / double(horizon - 1));
  if (tails.back() >= threshold) {
    r.pass = false;
    r.failed_condition = 1;
  } else if (!r.containment_ok) {
    r.pass = false;
    r.failed_condition = 2;
  }
  return r;
}

/// max over the grid of d(Mh_n(y), Mh_m(y)).
inline double uniform_convergence_probe(const MoveSequence& seq, std::size_t n, std::size_t m,
                                        std::span<const Point3> grid) {
  if (grid.empty()) throw std::invalid_argument("uniform_convergence_probe: empty grid");
  if (m < n) std::swap(n, m);
  double sup = 0.0;
  for (const auto& y : grid) {
    const Point3 a = apply_moves(seq, 0, n, y);
    const Point3 b = apply_moves(seq, n, m, a);
    sup = std::max(sup, distance(a, b));
  }
  return sup;
}

/// min over pairs of d(Mh_n(a), Mh_n(b)).
inline double injectivity_probe(const MoveSequence& seq, std::size_t n,
                                std::span<const std::pair<Point3, Point3>> pairs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : pairs) {
    if (a == b) throw std::invalid_argument("injectivity_probe: pair points must differ");
    best = std::min(best, distance(apply_moves(seq, 0, n, a), apply_moves(seq, 0, n, b)));
  }
  return best;
}

/// Samples whose image under Mh_{n_max} still lies in some V_k,
/// n_max < k <= n_max + window.
inline std::size_t infinite_motion_census(const MoveSequence& seq, std::size_t n_max,
                                          std::span<const Point3> samples,
                                          std::size_t window = 64) {
  std::size_t last = n_max + window;
  if (seq.length()) last = std::min(last, *seq.length());
  std::size_t count = 0;
  for (const auto& p : samples) {
    const Point3 y = apply_moves(seq, 0, n_max, p);
    for (std::size_t k = n_max + 1; k <= last; ++k)
      if (seq.support(k).contains(y)) {
        ++count;
        break;
      }
  }
  return count;
}

/// MH_n: H_k squeezed into [t_{k-1}, t_k), frozen from t_n on.
inline Isotopy glue_schedule(const MoveSequence& seq, const Schedule& sched, std::size_t n) {
  if (n < 1) throw std::invalid_argument("glue_schedule: n must be >= 1");
  std::vector<Isotopy> parts;
  std::vector<double> cuts{0.0};
  for (std::size_t k = 1; k <= n; ++k) {
    parts.push_back(seq.move(k).H);
    cuts.push_back(sched.t(k));
  }
  return Isotopy::chain(parts, cuts);
}

struct ProbeReport {
  double sup_deviation = 0.0;
  double min_image_separation = 0.0;
  std::size_t unsettled_points = 0;
  bool budget_exhausted = false;
};

// -- serialization ---------------------------------------------------------

inline nlohmann::ordered_json to_json(const HypothesisReport& r) {
  nlohmann::ordered_json j;
  j["tail_diameters"] = nlohmann::ordered_json::array();
  for (const auto& [n, d] : r.tail_diameters) j["tail_diameters"].push_back({n, d});
  j["containment_ok"] = r.containment_ok;
  j["disjoint_supports"] = r.disjoint_supports;
  j["verdict"] = r.verdict();
  j["threshold"] = r.threshold;
  j["declared_decay_ratio"] =
      r.declared_decay_ratio ? nlohmann::ordered_json(*r.declared_decay_ratio) : nullptr;
  j["empirical_decay_ratio"] =
      r.empirical_decay_ratio ? nlohmann::ordered_json(*r.empirical_decay_ratio) : nullptr;
  return j;
}

inline nlohmann::ordered_json to_json(const ProbeReport& r) {
  nlohmann::ordered_json j;
  j["sup_deviation"] = r.sup_deviation;
  j["min_image_separation"] = r.min_image_separation;
  j["unsettled_points"] = r.unsettled_points;
  j["budget_exhausted"] = r.budget_exhausted;
  return j;
}

/// key: value, one metric per line.
inline std::string to_text(const HypothesisReport& r) {
  std::ostringstream os;
  os << "tail_diameters:";
  for (const auto& [n, d] : r.tail_diameters) os << ' ' << n << '=' << format_real(d);
  os << "\ncontainment_ok: " << (r.containment_ok ? "true" : "false")
     << "\ndisjoint_supports: " << (r.disjoint_supports ? "true" : "false")
     << "\nverdict: " << r.verdict() << '\n';
  return os.str();
}

inline std::string to_text(const ProbeReport& r) {
  std::ostringstream os;
  os << "sup_deviation: " << format_real(r.sup_deviation)
     << "\nmin_image_separation: " << format_real(r.min_image_separation)
     << "\nunsettled_points: " << r.unsettled_points
     << "\nbudget_exhausted: " << (r.budget_exhausted ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace isotopy
