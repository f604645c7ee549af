// The geometric step of the Fox-Artin argument: around an endpoint p with
// nested neighbourhoods V_k shrinking to p, find a ball B_eps(p) with
// V_{n0} inside B_eps(p) inside V_1. The group-theoretic conclusion (the
// inclusion V_{n0} - arc -> V_1 - arc factors through a ball minus a radius,
// hence is trivial on pi_1) is only reported, not computed.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "isotopy/curve_io.hpp"
#include "isotopy/geometry.hpp"

namespace isotopy {

/// region(k) = V_k for k >= 1; V_1 is the outermost. `count` bounds a
/// finite family (V_1..V_count).
struct NestedFamily {
  Point3 p;
  std::function<Box(std::size_t)> region;
  std::optional<std::size_t> count;
};

struct BallFactoring {
  double epsilon = 0.0;
  std::size_t n0 = 0;
  bool chain_certified = false;

  std::string certificate() const {
    return "V_" + std::to_string(n0) + " in B_" + format_real(epsilon) +
           "(p) in V_1: inclusion-induced map on pi_1 factors through a ball minus a radius";
  }
};

/// Every corner of b strictly inside the open ball (b is convex).
inline bool box_in_ball(const Box& b, Point3 c, double r) {
  for (const auto& q : b.corners())
    if (!(distance(q, c) < r)) return false;
  return true;
}

/// Closed ball of radius r inside the interior of b.
inline bool ball_in_box(Point3 c, double r, const Box& b) {
  return b.contains_interior(c) && b.wall_distance(c) > r;
}

/// eps = half the distance from p to the boundary of V_1; n0 the first
/// index <= horizon with V_{n0} inside B_eps(p).
inline BallFactoring find_ball_factoring(const NestedFamily& fam, std::size_t horizon) {
  if (!fam.region) throw std::invalid_argument("find_ball_factoring: empty family");
  std::size_t last = horizon;
  if (fam.count) last = std::min(last, *fam.count);
  Box prev = fam.region(1);
  if (!prev.contains_interior(fam.p))
    throw std::invalid_argument("find_ball_factoring: p not interior to V_1");
  BallFactoring r;
  r.epsilon = 0.5 * prev.wall_distance(fam.p);
  for (std::size_t k = 2; k <= last; ++k) {
    const Box v = fam.region(k);
    if (!v.contains_interior(fam.p))
      throw std::invalid_argument("find_ball_factoring: p not interior to region " + std::to_string(k));
    if (!prev.contains(v) || prev == v)
      throw std::invalid_argument("find_ball_factoring: regions not strictly nested at " +
                                  std::to_string(k));
    if (box_in_ball(v, fam.p, r.epsilon)) {
      r.n0 = k;
      r.chain_certified = ball_in_box(fam.p, r.epsilon, fam.region(1));
      return r;
    }
    prev = v;
  }
  throw std::runtime_error("find_ball_factoring: no n0 within horizon " + std::to_string(horizon));
}

inline nlohmann::ordered_json to_json(const BallFactoring& b) {
  nlohmann::ordered_json j;
  j["epsilon"] = b.epsilon;
  j["n0"] = b.n0;
  j["chain_certified"] = b.chain_certified;
  j["certificate"] = b.certificate();
  return j;
}

}  // namespace isotopy
