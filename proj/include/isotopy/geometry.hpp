// Points, boxes, polylines and segment predicates shared by every other
// part of the library.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace isotopy {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Point3 operator*(Point3 a, double s) { return s * a; }
  friend constexpr bool operator==(Point3 a, Point3 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3 a) { return std::hypot(a.x, a.y, a.z); }
constexpr Point3 lerp(Point3 a, Point3 b, double t) { return a + t * (b - a); }

/// Euclidean metric on model space.
inline double distance(Point3 a, Point3 b) { return norm(b - a); }

/// Closed axis-aligned box. Supports of every local map are boxes.
class Box {
 public:
  Box() = default;
  Box(Point3 lo, Point3 hi) : lo_(lo), hi_(hi) {
    if (!lo.finite() || !hi.finite()) throw std::invalid_argument("Box: non-finite corner");
    if (lo.x > hi.x || lo.y > hi.y || lo.z > hi.z)
      throw std::invalid_argument("Box: min corner exceeds max corner");
  }

  static Box centered(Point3 c, Point3 half) { return Box(c - half, c + half); }

  Point3 lo() const { return lo_; }
  Point3 hi() const { return hi_; }
  Point3 center() const { return 0.5 * (lo_ + hi_); }
  Point3 extent() const { return hi_ - lo_; }

  std::array<Point3, 8> corners() const {
    std::array<Point3, 8> out;
    for (std::size_t i = 0; i < 8; ++i)
      out[i] = {(i & 1) ? hi_.x : lo_.x, (i & 2) ? hi_.y : lo_.y, (i & 4) ? hi_.z : lo_.z};
    return out;
  }

  bool contains(Point3 p) const {
    return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y && p.z >= lo_.z &&
           p.z <= hi_.z;
  }
  bool contains_interior(Point3 p) const {
    return p.x > lo_.x && p.x < hi_.x && p.y > lo_.y && p.y < hi_.y && p.z > lo_.z && p.z < hi_.z;
  }
  bool contains(const Box& b) const { return contains(b.lo_) && contains(b.hi_); }
  /// b lies in the open interior of this box.
  bool contains_interior(const Box& b) const {
    return contains_interior(b.lo_) && contains_interior(b.hi_);
  }
  /// Closed boxes intersect (touching counts).
  bool intersects(const Box& b) const {
    return lo_.x <= b.hi_.x && b.lo_.x <= hi_.x && lo_.y <= b.hi_.y && b.lo_.y <= hi_.y &&
           lo_.z <= b.hi_.z && b.lo_.z <= hi_.z;
  }

  /// Distance from an interior point to the boundary.
  double wall_distance(Point3 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 3; ++i) d = std::min({d, p[i] - lo_[i], hi_[i] - p[i]});
    return d;
  }

  Box hull(const Box& b) const {
    return Box({std::min(lo_.x, b.lo_.x), std::min(lo_.y, b.lo_.y), std::min(lo_.z, b.lo_.z)},
               {std::max(hi_.x, b.hi_.x), std::max(hi_.y, b.hi_.y), std::max(hi_.z, b.hi_.z)});
  }

  /// Uniform scaling about the center.
  Box scaled(double s) const { return centered(center(), 0.5 * s * extent()); }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Point3 lo_{};
  Point3 hi_{};
};

inline double box_diameter(const Box& b) { return distance(b.lo(), b.hi()); }

/// Diameter of a union of boxes. The farthest pair of points of a union of
/// convex sets is attained at extreme points, so corner pairs suffice.
inline double union_diameter(std::span<const Box> boxes) {
  if (boxes.empty()) throw std::invalid_argument("union_diameter: empty list");
  double best = 0.0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    best = std::max(best, box_diameter(boxes[i]));
    const auto ci = boxes[i].corners();
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      for (const auto& a : ci)
        for (const auto& b : boxes[j].corners()) best = std::max(best, distance(a, b));
  }
  return best;
}

struct SegmentProximity {
  bool hit = false;
  Point3 witness{};   // midpoint of the closest pair
  double gap = 0.0;   // minimal distance between the segments
  double s = 0.0;     // closest-point parameter on the first segment
  double t = 0.0;     // closest-point parameter on the second segment
};

/// Closest points between segments [p1,p2] and [q1,q2]; hit iff the gap is below tol.
inline SegmentProximity segments_intersect(Point3 p1, Point3 p2, Point3 q1, Point3 q2,
                                           double tol) {
  const Point3 d1 = p2 - p1;
  const Point3 d2 = q2 - q1;
  const Point3 r = p1 - q1;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) {
    // both degenerate
  } else if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Point3 cp = p1 + s * d1;
  const Point3 cq = q1 + t * d2;
  SegmentProximity out;
  out.gap = distance(cp, cq);
  out.hit = out.gap < tol;
  out.witness = 0.5 * (cp + cq);
  out.s = s;
  out.t = t;
  return out;
}

/// Finite polyline, open arc or closed loop.
class PLCurve {
 public:
  PLCurve() = default;
  PLCurve(std::vector<Point3> vertices, bool closed) : v_(std::move(vertices)), closed_(closed) {
    if (v_.size() < 2 || (closed_ && v_.size() < 3))
      throw std::invalid_argument("PLCurve: too few vertices");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (!v_[i].finite()) throw std::invalid_argument("PLCurve: non-finite vertex");
      if (i + 1 < v_.size() && v_[i] == v_[i + 1])
        throw std::invalid_argument("PLCurve: repeated consecutive vertex");
    }
    if (closed_ && v_.front() == v_.back())
      throw std::invalid_argument("PLCurve: closed curve repeats its first vertex");
  }

  const std::vector<Point3>& vertices() const { return v_; }
  bool closed() const { return closed_; }
  std::size_t segment_count() const { return closed_ ? v_.size() : v_.size() - 1; }
  std::pair<Point3, Point3> segment(std::size_t i) const {
    return {v_[i], v_[(i + 1) % v_.size()]};
  }

  double length() const {
    double l = 0.0;
    for (std::size_t i = 0; i < segment_count(); ++i) {
      const auto [a, b] = segment(i);
      l += distance(a, b);
    }
    return l;
  }

  Box bounds() const {
    Point3 lo = v_.front();
    Point3 hi = v_.front();
    for (const auto& p : v_)
      for (std::size_t i = 0; i < 3; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    return Box(lo, hi);
  }

  bool segments_adjacent(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (j == i + 1) return true;
    return closed_ && i == 0 && j == segment_count() - 1;
  }

 private:
  std::vector<Point3> v_;
  bool closed_ = false;
};

/// Subdivides every segment into equal pieces no longer than max_len, and
/// into at least min_pieces (so short features still get sample points).
inline PLCurve densify(const PLCurve& c, double max_len, std::size_t min_pieces = 1) {
  if (!(max_len > 0.0)) throw std::invalid_argument("densify: max_len must be positive");
  std::vector<Point3> out;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    const auto [a, b] = c.segment(i);
    const auto m = std::max<std::size_t>(min_pieces, std::size_t(std::ceil(distance(a, b) / max_len)));
    for (std::size_t j = 0; j < m; ++j) out.push_back(lerp(a, b, double(j) / double(m)));
  }
  if (!c.closed()) out.push_back(c.vertices().back());
  return PLCurve(std::move(out), c.closed());
}

/// Drops consecutive (near-)duplicates and interior vertices that are
/// collinear with their neighbours, both relative to the polyline's extent.
inline std::vector<Point3> simplify_polyline(std::span<const Point3> pts, double rel_tol = 1e-12) {
  if (pts.empty()) return {};
  Point3 lo = pts.front(), hi = pts.front();
  for (const auto& p : pts)
    for (std::size_t i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  const double merge = rel_tol * distance(lo, hi);
  std::vector<Point3> dedup;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point3& p = pts[i];
    if (dedup.empty() || distance(dedup.back(), p) > merge) {
      dedup.push_back(p);
    } else if (i + 1 == pts.size()) {
      dedup.back() = p;  // keep the true endpoint
    }
  }
  if (dedup.size() == 1 && pts.size() > 1 && !(pts.front() == pts.back()))
    dedup.push_back(pts.back());
  if (dedup.size() < 3) return dedup;
  std::vector<Point3> out{dedup.front()};
  for (std::size_t k = 1; k + 1 < dedup.size(); ++k) {
    const Point3 a = out.back();
    const Point3 b = dedup[k];
    const Point3 c = dedup[k + 1];
    const Point3 ab = b - a;
    const Point3 bc = c - b;
    const double span = norm(c - a);
    const bool collinear = norm(cross(ab, bc)) <= rel_tol * span * span && dot(ab, bc) >= 0.0;
    if (!collinear) out.push_back(b);
  }
  out.push_back(dedup.back());
  return out;
}

namespace detail {
inline Box segment_box(Point3 a, Point3 b, double pad) {
  const Point3 lo{std::min(a.x, b.x) - pad, std::min(a.y, b.y) - pad, std::min(a.z, b.z) - pad};
  const Point3 hi{std::max(a.x, b.x) + pad, std::max(a.y, b.y) + pad, std::max(a.z, b.z) + pad};
  return Box(lo, hi);
}
}  // namespace detail

/// True iff no two non-adjacent segments come within tol of each other.
inline bool curve_is_simple(const PLCurve& c, double tol) {
  const std::size_t n = c.segment_count();
  std::vector<Box> boxes;
  boxes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = c.segment(i);
    boxes.push_back(detail::segment_box(a, b, tol));
  }
  // sweep on min-x keeps the pair test near-linear for long curves
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return boxes[a].lo().x < boxes[b].lo().x; });
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < n; ++oj) {
      const std::size_t j = order[oj];
      if (boxes[j].lo().x > boxes[i].hi().x) break;
      if (c.segments_adjacent(i, j) || !boxes[i].intersects(boxes[j])) continue;
      const auto [p1, p2] = c.segment(i);
      const auto [q1, q2] = c.segment(j);
      if (segments_intersect(p1, p2, q1, q2, tol).hit) return false;
    }
  }
  return true;
}

}  // namespace isotopy
