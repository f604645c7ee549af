// Compactly supported, invertible self-maps of model space.
//
// A LocalMap is an immutable handle; copies share the underlying
// implementation. Kinds:
//   affine     x -> A x + b on all of space (no compact support)
//   cone       piecewise-affine pull of an apex inside a box, identity outside
//   unsquish   the fiberwise push away from a twist tip, frozen at one time value
//   composite  m_1 first, then m_2, ...
//   power1d    x -> x^e on the unit segment of the x-axis (1-D scenarios)
#pragma once

#include <algorithm>
#include <cstdint>
#include <array>
#include <limits>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isotopy/curve_io.hpp"
#include "isotopy/geometry.hpp"

namespace isotopy {

struct Mat3 {
  std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 columns(Point3 c0, Point3 c1, Point3 c2) {
    return {{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }
  static Mat3 diagonal(Point3 d) { return {{d.x, 0, 0, 0, d.y, 0, 0, 0, d.z}}; }

  double operator()(int r, int c) const { return a[3 * r + c]; }
  Point3 operator*(Point3 p) const {
    return {a[0] * p.x + a[1] * p.y + a[2] * p.z, a[3] * p.x + a[4] * p.y + a[5] * p.z,
            a[6] * p.x + a[7] * p.y + a[8] * p.z};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.a[3 * i + j] = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    return r;
  }
  double det() const {
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
  Mat3 inverse() const {
    const double d = det();
    if (d == 0.0) throw std::domain_error("Mat3: singular");
    Mat3 r;
    r.a = {(a[4] * a[8] - a[5] * a[7]) / d, (a[2] * a[7] - a[1] * a[8]) / d,
           (a[1] * a[5] - a[2] * a[4]) / d, (a[5] * a[6] - a[3] * a[8]) / d,
           (a[0] * a[8] - a[2] * a[6]) / d, (a[2] * a[3] - a[0] * a[5]) / d,
           (a[3] * a[7] - a[4] * a[6]) / d, (a[1] * a[6] - a[0] * a[7]) / d,
           (a[0] * a[4] - a[1] * a[3]) / d};
    return r;
  }
};

struct AffineParams {
  Mat3 matrix;
  Point3 translation;
};

struct ConeParams {
  Box region;
  Point3 apex_source;
  Point3 apex_target;
};

/// Outer box V_{k+.5}, inner box V_{k+1}, twist tip q, squish bound c.
struct UnsquishParams {
  Box outer;
  Box inner;
  Point3 tip;
  double c = 0.5;

  /// Throws std::invalid_argument on malformed nesting.
  void validate() const {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("unsquish: c must lie in (0,1)");
    if (!outer.contains_interior(inner))
      throw std::invalid_argument("unsquish: inner box must lie strictly inside outer box");
    const double scale = std::max(1.0, box_diameter(outer));
    if (distance(outer.center(), inner.center()) > 1e-12 * scale)
      throw std::invalid_argument("unsquish: boxes must share a center");
    if (!inner.contains_interior(tip))
      throw std::invalid_argument("unsquish: tip must be interior to the inner box");
  }
};

class LocalMap;

namespace detail {

struct MapImpl {
  virtual ~MapImpl() = default;
  virtual Point3 eval(Point3 p) const = 0;
  virtual Point3 eval_inverse(Point3 p) const = 0;
  virtual std::string kind() const = 0;
  /// nullopt: unbounded (affine) or empty (identity); see bounded().
  virtual std::optional<Box> support() const = 0;
  virtual bool bounded() const { return true; }
  virtual void describe(std::ostream& os, int indent) const = 0;
};

inline std::string pt(Point3 p) {
  return format_real(p.x) + " " + format_real(p.y) + " " + format_real(p.z);
}
inline std::string box_text(const Box& b) { return pt(b.lo()) + " " + pt(b.hi()); }

}  // namespace detail

class LocalMap {
 public:
  /// Identity.
  LocalMap() = default;
  explicit LocalMap(std::shared_ptr<const detail::MapImpl> impl) : impl_(std::move(impl)) {}

  Point3 eval(Point3 p) const { return impl_ ? impl_->eval(p) : p; }
  Point3 eval_inverse(Point3 p) const { return impl_ ? impl_->eval_inverse(p) : p; }
  Point3 operator()(Point3 p) const { return eval(p); }

  std::string kind() const { return impl_ ? impl_->kind() : "composite"; }
  bool is_identity() const { return !impl_; }
  std::optional<Box> support() const { return impl_ ? impl_->support() : std::nullopt; }
  bool bounded() const { return impl_ ? impl_->bounded() : true; }

  std::string describe() const {
    std::ostringstream os;
    if (impl_)
      impl_->describe(os, 0);
    else
      os << "composite 0\n";
    return os.str();
  }

  LocalMap inverse() const;

  const detail::MapImpl* impl() const { return impl_.get(); }

 private:
  std::shared_ptr<const detail::MapImpl> impl_;
};

namespace detail {

class AffineImpl final : public MapImpl {
 public:
  explicit AffineImpl(AffineParams p) : p_(p) {
    if (std::abs(p_.matrix.det()) <= 1e-12) throw std::invalid_argument("affine: singular matrix");
    inv_ = p_.matrix.inverse();
  }
  Point3 eval(Point3 x) const override { return p_.matrix * x + p_.translation; }
  Point3 eval_inverse(Point3 y) const override { return inv_ * (y - p_.translation); }
  std::string kind() const override { return "affine"; }
  std::optional<Box> support() const override { return std::nullopt; }
  bool bounded() const override { return false; }
  void describe(std::ostream& os, int indent) const override {
    os << std::string(indent, ' ') << "affine";
    for (double v : p_.matrix.a) os << ' ' << format_real(v);
    os << ' ' << pt(p_.translation) << '\n';
  }
  const AffineParams& params() const { return p_; }
  Mat3 inverse_matrix() const { return inv_; }

 private:
  AffineParams p_;
  Mat3 inv_;
};

/// The 12 boundary triangles of a box; each face is split along the
/// diagonal through its minimal corner.
inline std::array<std::array<Point3, 3>, 12> box_boundary_triangles(const Box& b) {
  std::array<std::array<Point3, 3>, 12> tris;
  std::size_t n = 0;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const std::size_t u = (axis + 1) % 3;
    const std::size_t v = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      auto corner = [&](int iu, int iv) {
        Point3 p;
        p[axis] = side ? b.hi()[axis] : b.lo()[axis];
        p[u] = iu ? b.hi()[u] : b.lo()[u];
        p[v] = iv ? b.hi()[v] : b.lo()[v];
        return p;
      };
      tris[n++] = {corner(0, 0), corner(1, 0), corner(1, 1)};
      tris[n++] = {corner(0, 0), corner(1, 1), corner(0, 1)};
    }
  }
  return tris;
}

class ConeImpl final : public MapImpl {
 public:
  explicit ConeImpl(ConeParams p) : p_(p), tris_(box_boundary_triangles(p.region)) {
    if (!p_.region.contains_interior(p_.apex_source) || !p_.region.contains_interior(p_.apex_target))
      throw std::invalid_argument("cone: apex must be strictly interior to the region");
    for (std::size_t i = 0; i < 12; ++i) {
      const auto& t = tris_[i];
      fwd_[i] = Mat3::columns(t[0] - p_.apex_source, t[1] - p_.apex_source, t[2] - p_.apex_source)
                    .inverse();
      bwd_[i] = Mat3::columns(t[0] - p_.apex_target, t[1] - p_.apex_target, t[2] - p_.apex_target)
                    .inverse();
    }
  }

  Point3 eval(Point3 p) const override { return apply(p, p_.apex_source, p_.apex_target, fwd_); }
  Point3 eval_inverse(Point3 p) const override {
    return apply(p, p_.apex_target, p_.apex_source, bwd_);
  }
  std::string kind() const override { return "cone"; }
  std::optional<Box> support() const override { return p_.region; }
  void describe(std::ostream& os, int indent) const override {
    os << std::string(indent, ' ') << "cone " << box_text(p_.region) << ' ' << pt(p_.apex_source)
       << ' ' << pt(p_.apex_target) << '\n';
  }
  const ConeParams& params() const { return p_; }
  const std::array<std::array<Point3, 3>, 12>& triangles() const { return tris_; }

  /// Cone coordinates of p relative to `from`: index of the piece and weights.
  std::pair<std::size_t, Point3> locate(Point3 p, Point3 from,
                                        const std::array<Mat3, 12>& inv) const {
    std::size_t best = 0;
    Point3 best_w{};
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 12; ++i) {
      const Point3 w = inv[i] * (p - from);
      const double score = std::min({w.x, w.y, w.z});
      if (score > best_score) {
        best_score = score;
        best = i;
        best_w = w;
      }
      if (score >= 0.0) break;
    }
    return {best, best_w};
  }

 private:
  Point3 apply(Point3 p, Point3 from, Point3 to, const std::array<Mat3, 12>& inv) const {
    if (!p_.region.contains(p)) return p;
    if (p == from) return to;
    const auto [i, w] = locate(p, from, inv);
    const auto& t = tris_[i];
    return to + w.x * (t[0] - to) + w.y * (t[1] - to) + w.z * (t[2] - to);
  }

  ConeParams p_;
  std::array<std::array<Point3, 3>, 12> tris_;
  std::array<Mat3, 12> fwd_;
  std::array<Mat3, 12> bwd_;
};

/// Fiber coordinates of a point of the outer box: glued parameter S in [0,1]
/// and the inner-boundary point v the fiber passes through.
struct UnsquishFiber {
  double S = 0.0;
  Point3 v{};
};

class UnsquishImpl final : public MapImpl {
 public:
  UnsquishImpl(UnsquishParams p, double t) : p_(p), t_(t) {
    p_.validate();
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("unsquish: t outside [0,1]");
    const Point3 oe = p_.outer.extent();
    const Point3 ie = p_.inner.extent();
    for (std::size_t i = 0; i < 3; ++i) ratio_[i] = oe[i] / ie[i];
  }

  double s_c0() const { return 0.5 * p_.c; }
  double s_c() const { return t_ * 0.5 + (1.0 - t_) * s_c0(); }

  UnsquishFiber fiber(Point3 p) const {
    const Point3 q = p_.tip;
    if (p_.inner.contains(p)) {
      if (p == q) return {0.0, q};
      double s = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double d = p[i] - q[i];
        if (d > 0.0) s = std::max(s, d / (p_.inner.hi()[i] - q[i]));
        if (d < 0.0) s = std::max(s, d / (p_.inner.lo()[i] - q[i]));
      }
      return {0.5 * s, q + (1.0 / s) * (p - q)};
    }
    const Point3 c = p_.inner.center();
    const Point3 h = 0.5 * p_.inner.extent();
    double sigma = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      sigma = std::max(sigma, (std::abs(p[i] - c[i]) / h[i] - 1.0) / (ratio_[i] - 1.0));
    sigma = std::min(sigma, 1.0);
    Point3 u;
    for (std::size_t i = 0; i < 3; ++i) u[i] = (p[i] - c[i]) / (1.0 + sigma * (ratio_[i] - 1.0));
    return {0.5 * (1.0 + sigma), c + u};
  }

  Point3 place(double S, Point3 v) const {
    if (S <= 0.5) return p_.tip + (2.0 * S) * (v - p_.tip);
    const Point3 c = p_.inner.center();
    Point3 vo;
    for (std::size_t i = 0; i < 3; ++i) vo[i] = c[i] + ratio_[i] * (v[i] - c[i]);
    return v + (2.0 * S - 1.0) * (vo - v);
  }

  double warp(double S) const {
    const double a = s_c0();
    if (S <= a) return S / a * s_c();
    const double w = (S - a) / (1.0 - a);
    return w + (1.0 - w) * s_c();
  }
  double unwarp(double S) const {
    const double sc = s_c();
    if (S <= sc) return S / sc * s_c0();
    const double w = (S - sc) / (1.0 - sc);
    return s_c0() + w * (1.0 - s_c0());
  }

  Point3 eval(Point3 p) const override {
    if (!p_.outer.contains(p)) return p;
    const auto f = fiber(p);
    return place(warp(f.S), f.v);
  }
  Point3 eval_inverse(Point3 p) const override {
    if (!p_.outer.contains(p)) return p;
    const auto f = fiber(p);
    return place(unwarp(f.S), f.v);
  }
  std::string kind() const override { return "unsquish"; }
  std::optional<Box> support() const override { return p_.outer; }
  void describe(std::ostream& os, int indent) const override {
    os << std::string(indent, ' ') << "unsquish " << box_text(p_.outer) << ' '
       << box_text(p_.inner) << ' ' << pt(p_.tip) << ' ' << format_real(p_.c) << ' '
       << format_real(t_) << '\n';
  }
  const UnsquishParams& params() const { return p_; }
  double time() const { return t_; }

 private:
  UnsquishParams p_;
  double t_;
  Point3 ratio_{};
};

class PowerImpl final : public MapImpl {
 public:
  explicit PowerImpl(double e) : e_(e) {
    if (!(e > 0.0)) throw std::invalid_argument("power1d: exponent must be positive");
  }
  Point3 eval(Point3 p) const override {
    return on_segment(p) ? Point3{std::pow(p.x, e_), 0.0, 0.0} : p;
  }
  Point3 eval_inverse(Point3 p) const override {
    return on_segment(p) ? Point3{std::pow(p.x, 1.0 / e_), 0.0, 0.0} : p;
  }
  std::string kind() const override { return "power1d"; }
  std::optional<Box> support() const override { return Box({0, 0, 0}, {1, 0, 0}); }
  void describe(std::ostream& os, int indent) const override {
    os << std::string(indent, ' ') << "power1d " << format_real(e_) << '\n';
  }
  double exponent() const { return e_; }

 private:
  static bool on_segment(Point3 p) { return p.y == 0.0 && p.z == 0.0 && p.x >= 0.0 && p.x <= 1.0; }
  double e_;
};

class CompositeImpl final : public MapImpl {
 public:
  explicit CompositeImpl(std::vector<LocalMap> parts) : parts_(std::move(parts)) {
    for (const auto& m : parts_) {
      if (!m.bounded()) {
        unbounded_ = true;
        continue;
      }
      if (auto s = m.support()) support_ = support_ ? support_->hull(*s) : *s;
    }
  }
  Point3 eval(Point3 p) const override {
    for (const auto& m : parts_) p = m.eval(p);
    return p;
  }
  Point3 eval_inverse(Point3 p) const override {
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) p = it->eval_inverse(p);
    return p;
  }
  std::string kind() const override { return "composite"; }
  std::optional<Box> support() const override {
    return unbounded_ ? std::nullopt : support_;
  }
  bool bounded() const override { return !unbounded_; }
  void describe(std::ostream& os, int indent) const override {
    os << std::string(indent, ' ') << "composite " << parts_.size() << '\n';
    for (const auto& m : parts_) {
      if (m.impl())
        m.impl()->describe(os, indent + 2);
      else
        os << std::string(indent + 2, ' ') << "composite 0\n";
    }
  }
  const std::vector<LocalMap>& parts() const { return parts_; }

 private:
  std::vector<LocalMap> parts_;
  std::optional<Box> support_;
  bool unbounded_ = false;
};

/// Presents another map's inverse; used for kinds without a closed-form
/// inverse of the same kind.
class InverseImpl final : public MapImpl {
 public:
  explicit InverseImpl(LocalMap m) : m_(std::move(m)) {}
  Point3 eval(Point3 p) const override { return m_.eval_inverse(p); }
  Point3 eval_inverse(Point3 p) const override { return m_.eval(p); }
  std::string kind() const override { return m_.kind(); }
  std::optional<Box> support() const override { return m_.support(); }
  bool bounded() const override { return m_.bounded(); }
  void describe(std::ostream& os, int indent) const override {
    os << std::string(indent, ' ') << "inverse\n";
    m_.impl()->describe(os, indent + 2);
  }
  const LocalMap& base() const { return m_; }

 private:
  LocalMap m_;
};

}  // namespace detail

inline LocalMap identity_map() { return LocalMap(); }

inline LocalMap make_affine_map(const AffineParams& p) {
  return LocalMap(std::make_shared<detail::AffineImpl>(p));
}

inline LocalMap make_translation(Point3 t) { return make_affine_map({Mat3{}, t}); }

/// PL homeomorphism fixing the boundary and exterior of `region`, sending
/// p0 to p1 and affine on each of the 12 cones over the boundary triangles.
inline LocalMap make_cone_map(const Box& region, Point3 p0, Point3 p1) {
  return LocalMap(std::make_shared<detail::ConeImpl>(ConeParams{region, p0, p1}));
}

/// The unsquish isotopy frozen at time t.
inline LocalMap make_unsquish_at(const UnsquishParams& p, double t) {
  return LocalMap(std::make_shared<detail::UnsquishImpl>(p, t));
}

/// Glued fiber parameter S(p) of the unsquish construction (t-independent).
inline double unsquish_parameter(const UnsquishParams& p, Point3 x) {
  return detail::UnsquishImpl(p, 0.0).fiber(x).S;
}

inline LocalMap make_power1d(double exponent) {
  return LocalMap(std::make_shared<detail::PowerImpl>(exponent));
}

/// m1 first, then m2. Nested composites are flattened.
inline LocalMap compose(const LocalMap& m1, const LocalMap& m2) {
  std::vector<LocalMap> parts;
  auto append = [&](const LocalMap& m) {
    if (m.is_identity()) return;
    if (auto* c = dynamic_cast<const detail::CompositeImpl*>(m.impl()))
      parts.insert(parts.end(), c->parts().begin(), c->parts().end());
    else
      parts.push_back(m);
  };
  append(m1);
  append(m2);
  if (parts.empty()) return LocalMap();
  if (parts.size() == 1) return parts.front();
  return LocalMap(std::make_shared<detail::CompositeImpl>(std::move(parts)));
}

inline LocalMap compose_all(std::span<const LocalMap> maps) {
  LocalMap out;
  for (const auto& m : maps) out = compose(out, m);
  return out;
}

inline LocalMap LocalMap::inverse() const {
  if (!impl_) return *this;
  if (auto* c = dynamic_cast<const detail::ConeImpl*>(impl_.get())) {
    const auto& p = c->params();
    return make_cone_map(p.region, p.apex_target, p.apex_source);
  }
  if (auto* a = dynamic_cast<const detail::AffineImpl*>(impl_.get())) {
    const Mat3 inv = a->inverse_matrix();
    return make_affine_map({inv, Point3{} - inv * a->params().translation});
  }
  if (auto* c = dynamic_cast<const detail::CompositeImpl*>(impl_.get())) {
    LocalMap out;
    for (auto it = c->parts().rbegin(); it != c->parts().rend(); ++it)
      out = compose(out, it->inverse());
    return out;
  }
  if (auto* i = dynamic_cast<const detail::InverseImpl*>(impl_.get())) return i->base();
  return LocalMap(std::make_shared<detail::InverseImpl>(*this));
}

namespace detail {

/// Parameters in (0,1) where segment a->b crosses a cone-piece boundary.
inline void cone_breakpoints(const ConeImpl& cone, Point3 apex, Point3 a, Point3 b,
                             std::vector<double>& out) {
  const Point3 d = b - a;
  for (const auto& tri : cone.triangles()) {
    // tetrahedron (apex, tri); clip a + t d against its four faces
    const std::array<Point3, 4> v{apex, tri[0], tri[1], tri[2]};
    double lo = 0.0;
    double hi = 1.0;
    bool empty = false;
    for (int f = 0; f < 4 && !empty; ++f) {
      const Point3 p0 = v[(f + 1) % 4];
      const Point3 p1 = v[(f + 2) % 4];
      const Point3 p2 = v[(f + 3) % 4];
      Point3 n = cross(p1 - p0, p2 - p0);
      if (dot(n, v[f] - p0) < 0.0) n = Point3{} - n;  // inward
      const double num = dot(n, a - p0);
      const double den = dot(n, d);
      if (den == 0.0) {
        if (num < 0.0) empty = true;
        continue;
      }
      const double t = -num / den;
      if (den > 0.0)
        lo = std::max(lo, t);
      else
        hi = std::min(hi, t);
      if (lo > hi) empty = true;
    }
    if (empty) continue;
    if (lo > 0.0 && lo < 1.0) out.push_back(lo);
    if (hi > 0.0 && hi < 1.0) out.push_back(hi);
  }
}

inline void push_leaf(const LocalMap& m, std::span<const Point3> pts, int subdiv,
                      std::vector<Point3>& out) {
  out.clear();
  if (pts.empty()) return;
  const auto* cone = dynamic_cast<const ConeImpl*>(m.impl());
  const auto* aff = dynamic_cast<const AffineImpl*>(m.impl());
  const auto* inv = dynamic_cast<const InverseImpl*>(m.impl());
  std::vector<double> ts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point3 a = pts[i];
    const Point3 b = pts[i + 1];
    ts.assign({0.0});
    const auto support = m.support();
    const bool touches =
        !support || support->intersects(segment_box(a, b, 0.0));
    if (m.is_identity() || aff || !touches) {
      // affine and untouched segments map exactly by their endpoints
    } else if (cone) {
      cone_breakpoints(*cone, cone->params().apex_source, a, b, ts);
    } else {
      (void)inv;
      for (int k = 1; k < subdiv; ++k) ts.push_back(double(k) / subdiv);
    }
    std::sort(ts.begin(), ts.end());
    for (double t : ts) out.push_back(m.eval(lerp(a, b, t)));
  }
  out.push_back(m.eval(pts.back()));
}

}  // namespace detail

/// Image of a polyline. Exact for affine and cone pieces (segments are split
/// where they cross cone-piece boundaries); other kinds are sampled with
/// `subdiv` pieces per segment.
inline std::vector<Point3> push_polyline(const LocalMap& m, std::span<const Point3> pts,
                                         int subdiv = 16) {
  std::vector<Point3> cur(pts.begin(), pts.end());
  std::vector<Point3> next;
  auto leaf = [&](const LocalMap& part) {
    detail::push_leaf(part, cur, subdiv, next);
    cur = simplify_polyline(next);
  };
  if (auto* c = dynamic_cast<const detail::CompositeImpl*>(m.impl()))
    for (const auto& part : c->parts()) leaf(part);
  else
    leaf(m);
  return cur;
}

/// Image of a curve; closed curves stay closed.
inline PLCurve push_curve(const LocalMap& m, const PLCurve& c, int subdiv = 16) {
  std::vector<Point3> pts = c.vertices();
  if (c.closed()) pts.push_back(pts.front());
  auto img = push_polyline(m, pts, subdiv);
  if (c.closed()) {
    img.pop_back();
    // the seam vertex may have become collinear
    if (img.size() > 3) {
      std::vector<Point3> rot(img.begin() + 1, img.end());
      rot.push_back(img.front());
      rot.push_back(img[1]);
      auto s = simplify_polyline(rot);
      s.pop_back();
      img = std::move(s);
    }
  }
  return PLCurve(std::move(img), c.closed());
}

/// Smallest observed ratio |m(x)-m(y)| / |x-y| over sampled pairs in
/// `region`: half uniform pairs, half close pairs (x, x + delta u).
/// An upper estimate of the best inverse-Lipschitz constant.
inline double estimate_inverse_lipschitz(const LocalMap& m, const Box& region, int samples,
                                         std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_inverse_lipschitz: samples < 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Point3 lo = region.lo();
  const Point3 ext = region.extent();
  auto uniform_point = [&] {
    return Point3{lo.x + ext.x * u01(rng), lo.y + ext.y * u01(rng), lo.z + ext.z * u01(rng)};
  };
  const double delta = 1e-4 * box_diameter(region);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const Point3 x = uniform_point();
    Point3 y;
    if (i % 2 == 0) {
      y = uniform_point();
    } else {
      Point3 d{gauss(rng), gauss(rng), gauss(rng)};
      const double n = norm(d);
      if (n == 0.0) continue;
      y = x + (delta / n) * d;
      if (!region.contains(y)) continue;
    }
    const double dx = distance(x, y);
    if (dx == 0.0) continue;
    best = std::min(best, distance(m.eval(x), m.eval(y)) / dx);
  }
  return best;
}

}  // namespace isotopy
