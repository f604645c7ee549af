// Reidemeister I and II moves as short chains of cone pulls.
//
// Each move is defined in a unit local frame and placed by a positive
// diagonal scaling plus translation; that keeps cone maps cone maps with the
// same face split, so placed moves behave exactly like the local model.
//
//   R1: the strand y = z = 0 (x from 0 to 1) gets a kink with one crossing.
//   R2: strands y = 0 and y = 0.3 (z = 0); a finger of the first strand is
//       pushed over the second, giving two crossings.
#pragma once

#include <vector>

#include "isotopy/isotopy.hpp"

namespace isotopy {

struct Frame {
  Point3 origin{};
  Point3 scale{1, 1, 1};

  Point3 operator()(Point3 p) const {
    return {origin.x + scale.x * p.x, origin.y + scale.y * p.y, origin.z + scale.z * p.z};
  }
  Box operator()(const Box& b) const { return Box((*this)(b.lo()), (*this)(b.hi())); }

  static Frame uniform(Point3 origin, double s) { return {origin, {s, s, s}}; }
};

namespace detail {
inline Stage placed_cone(const Frame& f, Box region, Point3 p0, Point3 p1) {
  return Stage::cone(f(region), f(p0), f(p1));
}
}  // namespace detail

/// Local box holding every R1 stage.
inline Box r1_local_support() { return Box({0.0, -0.15, -0.25}, {1.0, 0.5, 0.45}); }
/// Local box holding every R2 stage.
inline Box r2_local_support() { return Box({0.1, -0.15, -0.15}, {0.9, 0.6, 0.35}); }

/// Tent, lift, slide: the apex of a tent over the strand is lifted and
/// slid back across the strand, leaving a kink.
inline Isotopy r1_insert(const Frame& f) {
  using detail::placed_cone;
  std::vector<Stage> s;
  s.push_back(placed_cone(f, Box({0.1, -0.1, -0.2}, {0.9, 0.45, 0.2}), {0.5, 0, 0}, {0.5, 0.35, 0}));
  s.push_back(placed_cone(f, Box({0.3, 0.2, -0.1}, {0.7, 0.45, 0.4}), {0.5, 0.35, 0},
                          {0.5, 0.35, 0.3}));
  s.push_back(placed_cone(f, Box({0.2, 0.05, 0.05}, {0.95, 0.45, 0.4}), {0.5, 0.35, 0.3},
                          {0.88, 0.2, 0.3}));
  return Isotopy::uniform(std::move(s)).with_support(f(r1_local_support()));
}

inline Isotopy r1_remove(const Frame& f) { return r1_insert(f).reversed(); }

/// Lift a bump of strand 1, then slide it over strand 2.
inline Isotopy r2_insert(const Frame& f) {
  using detail::placed_cone;
  std::vector<Stage> s;
  s.push_back(placed_cone(f, Box({0.3, -0.1, -0.1}, {0.7, 0.1, 0.3}), {0.5, 0, 0}, {0.5, 0, 0.15}));
  s.push_back(placed_cone(f, Box({0.2, -0.05, 0.05}, {0.8, 0.55, 0.3}), {0.5, 0, 0.15},
                          {0.5, 0.45, 0.15}));
  return Isotopy::uniform(std::move(s)).with_support(f(r2_local_support()));
}

inline Isotopy r2_remove(const Frame& f) { return r2_insert(f).reversed(); }

}  // namespace isotopy
