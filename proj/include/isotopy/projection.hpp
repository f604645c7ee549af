// Orthographic projection onto the xy-plane: crossing detection and an SVG
// knot-diagram writer with over/under gaps.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "isotopy/geometry.hpp"

namespace isotopy {

struct Crossing {
  std::size_t over = 0;   // segment index passing above (larger z)
  std::size_t under = 0;
  double t_over = 0.0;    // crossing parameters along each segment
  double t_under = 0.0;
  double x = 0.0;
  double y = 0.0;
};

namespace detail {

inline double orient2(Point3 a, Point3 b, Point3 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline Point3 rotate_x(Point3 p, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {p.x, c * p.y - s * p.z, s * p.y + c * p.z};
}
inline Point3 rotate_y(Point3 p, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * p.x + s * p.z, p.y, -s * p.x + c * p.z};
}

/// Returns false if some pair is within `eps` of a tangency (shared
/// endpoints, collinear overlap, degenerate projected segments).
inline bool collect_crossings(const PLCurve& c, std::vector<Crossing>& out, double eps) {
  out.clear();
  const std::size_t n = c.segment_count();
  struct Seg {
    Point3 a, b;
    double lo, hi, ylo, yhi, len;
  };
  std::vector<Seg> segs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = c.segment(i);
    segs[i] = {a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
               std::max(a.y, b.y), std::hypot(b.x - a.x, b.y - a.y)};
    if (segs[i].len <= eps) return false;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto l, auto r) { return segs[l].lo < segs[r].lo; });
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t i = order[oi];
    const Seg& s = segs[i];
    for (std::size_t oj = oi + 1; oj < n; ++oj) {
      const std::size_t j = order[oj];
      const Seg& r = segs[j];
      if (r.lo > s.hi + eps) break;
      if (r.ylo > s.yhi + eps || s.ylo > r.yhi + eps) continue;
      if (c.segments_adjacent(i, j)) continue;
      // signed distances of each endpoint to the other segment's line
      const double d1 = orient2(s.a, s.b, r.a) / s.len;
      const double d2 = orient2(s.a, s.b, r.b) / s.len;
      const double d3 = orient2(r.a, r.b, s.a) / r.len;
      const double d4 = orient2(r.a, r.b, s.b) / r.len;
      const bool straddle1 = (d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps);
      const bool straddle2 = (d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps);
      if (straddle1 && straddle2) {
        const double ts = d3 / (d3 - d4);
        const double tr = d1 / (d1 - d2);
        const double zs = s.a.z + ts * (s.b.z - s.a.z);
        const double zr = r.a.z + tr * (r.b.z - r.a.z);
        if (std::abs(zs - zr) <= eps) return false;  // actual intersection in 3-space
        Crossing x;
        const bool s_over = zs > zr;
        x.over = s_over ? i : j;
        x.under = s_over ? j : i;
        x.t_over = s_over ? ts : tr;
        x.t_under = s_over ? tr : ts;
        x.x = s.a.x + ts * (s.b.x - s.a.x);
        x.y = s.a.y + ts * (s.b.y - s.a.y);
        out.push_back(x);
        continue;
      }
      const bool clear1 = (d1 > eps && d2 > eps) || (d1 < -eps && d2 < -eps);
      const bool clear2 = (d3 > eps && d4 > eps) || (d3 < -eps && d4 < -eps);
      if (clear1 || clear2) continue;
      return false;  // touching or nearly so
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return std::tie(a.over, a.under) < std::tie(b.over, b.under);
  });
  return true;
}

}  // namespace detail

/// Crossings of the xy-projection. A near-tangent configuration (any pair
/// within 1e-9 of tangency) rotates the view by 1e-7 rad about x, then
/// additionally about y.
inline std::vector<Crossing> projection_crossings(const PLCurve& c, double eps = 1e-9) {
  std::vector<Crossing> out;
  if (detail::collect_crossings(c, out, eps)) return out;
  const double a = 1e-7;
  std::vector<Point3> v;
  for (const auto& p : c.vertices()) v.push_back(detail::rotate_x(p, a));
  if (detail::collect_crossings(PLCurve(v, c.closed()), out, eps)) return out;
  for (auto& p : v) p = detail::rotate_y(p, a);
  detail::collect_crossings(PLCurve(v, c.closed()), out, eps);
  return out;
}

inline std::size_t crossing_count(const PLCurve& c) { return projection_crossings(c).size(); }

/// Knot diagram as SVG: under-strands are broken by `gap` model units on
/// each side of a crossing.
inline void write_svg(std::ostream& os, const PLCurve& c, double gap = 0.005) {
  const auto xs = projection_crossings(c);
  const Box b = c.bounds();
  const double pad = 0.05 * std::max({b.extent().x, b.extent().y, 1e-9});
  const double w = b.extent().x + 2 * pad;
  const double h = b.extent().y + 2 * pad;
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  // svg y grows downward
  auto X = [&](double x) { return num(x - b.lo().x + pad); };
  auto Y = [&](double y) { return num(b.hi().y + pad - y); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(w) << ' ' << num(h)
     << "\">\n<g fill=\"none\" stroke=\"black\" stroke-width=\"" << num(0.004 * std::max(w, h))
     << "\" stroke-linecap=\"round\">\n";
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    const auto [p, q] = c.segment(i);
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    std::vector<std::pair<double, double>> cuts;
    for (const auto& x : xs)
      if (x.under == i) {
        const double dt = len > 0 ? gap / len : 0.0;
        cuts.emplace_back(x.t_under - dt, x.t_under + dt);
      }
    std::sort(cuts.begin(), cuts.end());
    double start = 0.0;
    auto emit = [&](double t0, double t1) {
      if (t1 <= t0) return;
      const Point3 a = lerp(p, q, t0), e = lerp(p, q, t1);
      os << "<line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\"" << X(e.x) << "\" y2=\""
         << Y(e.y) << "\"/>\n";
    };
    for (const auto& [lo, hi] : cuts) {
      emit(start, std::max(0.0, lo));
      start = std::max(start, std::min(1.0, hi));
    }
    emit(start, 1.0);
  }
  os << "</g>\n</svg>\n";
}

inline std::string svg_string(const PLCurve& c, double gap = 0.005) {
  std::ostringstream os;
  write_svg(os, c, gap);
  return os.str();
}

}  // namespace isotopy
