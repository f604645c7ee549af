#include <gtest/gtest.h>

#include <random>

#include "isotopy/maps.hpp"

using namespace isotopy;

namespace {

// Independent cone-map oracle: write p = p0 + r (b - p0) with b the exit
// point of the ray from p0 through p; the image is p1 + r (b - p1).
Point3 cone_oracle(const Box& R, Point3 p0, Point3 p1, Point3 p) {
  if (!R.contains(p)) return p;
  const Point3 d = p - p0;
  if (norm(d) == 0.0) return p1;
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    if (d[i] > 0) t = std::min(t, (R.hi()[i] - p0[i]) / d[i]);
    if (d[i] < 0) t = std::min(t, (R.lo()[i] - p0[i]) / d[i]);
  }
  const Point3 b = p0 + t * d;
  const double r = 1.0 / t;
  return p1 + r * (b - p1);
}

Point3 random_in(const Box& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {b.lo().x + b.extent().x * u(rng), b.lo().y + b.extent().y * u(rng),
          b.lo().z + b.extent().z * u(rng)};
}

const Box kRegion({0, 0, 0}, {1, 2, 1.5});
const Point3 kP0{0.3, 0.7, 0.5};
const Point3 kP1{0.8, 1.4, 1.1};

}  // namespace

TEST(Cone, MatchesRayOracle) {
  auto m = make_cone_map(kRegion, kP0, kP1);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Point3 p = random_in(kRegion, rng);
    EXPECT_LT(distance(m.eval(p), cone_oracle(kRegion, kP0, kP1, p)), 1e-12);
  }
  EXPECT_EQ(m.eval(kP0), kP1);
}

TEST(Cone, FixesBoundaryAndExterior) {
  auto m = make_cone_map(kRegion, kP0, kP1);
  for (const auto& c : kRegion.corners()) EXPECT_LT(distance(m.eval(c), c), 1e-12);
  const Point3 face{0.37, 2.0, 0.91};
  EXPECT_LT(distance(m.eval(face), face), 1e-12);
  const Point3 out{1.5, -3, 0.2};
  EXPECT_EQ(m.eval(out), out);
}

TEST(Cone, InverseRoundTrip) {
  auto m = make_cone_map(kRegion, kP0, kP1);
  auto inv = m.inverse();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Point3 p = random_in(kRegion, rng);
    EXPECT_LT(distance(m.eval_inverse(m.eval(p)), p), 1e-9);
    EXPECT_LT(distance(inv.eval(m.eval(p)), p), 1e-9);
  }
}

TEST(Cone, RejectsApexOnBoundary) {
  EXPECT_THROW(make_cone_map(kRegion, {0, 0.5, 0.5}, kP1), std::invalid_argument);
  EXPECT_THROW(make_cone_map(kRegion, kP0, {0.5, 2.0, 0.5}), std::invalid_argument);
}

TEST(Affine, SingularRejectedAndGlobal) {
  Mat3 sing = Mat3::columns({1, 0, 0}, {2, 0, 0}, {0, 0, 1});
  EXPECT_THROW(make_affine_map({sing, {}}), std::invalid_argument);
  auto a = make_affine_map({Mat3::diagonal({2, 3, 4}), {1, 1, 1}});
  EXPECT_FALSE(a.bounded());
  EXPECT_FALSE(a.support().has_value());
  EXPECT_EQ(a.eval({1, 1, 1}), (Point3{3, 4, 5}));
  EXPECT_LT(distance(a.inverse().eval({3, 4, 5}), {1, 1, 1}), 1e-15);
}

TEST(Composite, OrderAndSupport) {
  auto a = make_cone_map(Box({0, 0, 0}, {1, 1, 1}), {0.5, 0.5, 0.5}, {0.6, 0.5, 0.5});
  auto b = make_cone_map(Box({2, 0, 0}, {3, 1, 1}), {2.5, 0.5, 0.5}, {2.5, 0.6, 0.5});
  auto ab = compose(a, b);
  EXPECT_EQ(ab.kind(), "composite");
  EXPECT_EQ(*ab.support(), Box({0, 0, 0}, {3, 1, 1}));
  auto t = make_translation({1, 0, 0});
  // translate first, then cone: (0.5..) -> (1.5..) untouched by a
  EXPECT_EQ(compose(t, a).eval({0.5, 0.5, 0.5}), (Point3{1.5, 0.5, 0.5}));
  EXPECT_LT(distance(compose(a, t).eval({0.5, 0.5, 0.5}), {1.6, 0.5, 0.5}), 1e-15);
  EXPECT_TRUE(compose(LocalMap(), LocalMap()).is_identity());
}

TEST(Describe, SeventeenDigits) {
  auto m = make_cone_map(Box({0, 0, 0}, {1, 1, 1}), {0.1, 0.5, 0.5}, {0.5, 0.5, 0.5});
  EXPECT_NE(m.describe().find("0.10000000000000001"), std::string::npos);
}

namespace {
UnsquishParams sample_unsquish() {
  UnsquishParams u;
  u.outer = Box({-2, -1, -1}, {2, 1, 1});
  u.inner = u.outer.scaled(0.8);
  u.tip = {0.7, 0.1, -0.2};
  u.c = 0.6;
  return u;
}
}  // namespace

TEST(Unsquish, IdentityAtTimeZeroAndOutside) {
  auto u = sample_unsquish();
  auto m0 = make_unsquish_at(u, 0.0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Point3 p = random_in(u.outer, rng);
    EXPECT_LT(distance(m0.eval(p), p), 1e-12);
  }
  auto m1 = make_unsquish_at(u, 1.0);
  for (const auto& c : u.outer.corners()) EXPECT_LT(distance(m1.eval(c), c), 1e-12);
  EXPECT_EQ(m1.eval({5, 0, 0}), (Point3{5, 0, 0}));
}

TEST(Unsquish, ScalesNearTipByInverseC) {
  auto u = sample_unsquish();
  auto m1 = make_unsquish_at(u, 1.0);
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 4000; ++i) {
    const Point3 p = random_in(u.inner, rng);
    const double S = unsquish_parameter(u, p);
    if (S <= u.c / 2) {
      ++checked;
      EXPECT_NEAR(distance(m1.eval(p), u.tip), distance(p, u.tip) / u.c, 1e-12);
    } else {
      const Point3 img = m1.eval(p);
      EXPECT_TRUE(u.outer.contains(img));
      EXPECT_FALSE(u.inner.contains_interior(img));
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Unsquish, InverseRoundTripAllTimes) {
  auto u = sample_unsquish();
  std::mt19937_64 rng(9);
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    auto m = make_unsquish_at(u, t);
    auto inv = m.inverse();
    for (int i = 0; i < 500; ++i) {
      const Point3 p = random_in(u.outer, rng);
      EXPECT_LT(distance(m.eval_inverse(m.eval(p)), p), 1e-9);
      EXPECT_LT(distance(inv.eval(m.eval(p)), p), 1e-9);
    }
  }
}

TEST(Unsquish, ContinuousAcrossInnerBoundary) {
  auto u = sample_unsquish();
  auto m = make_unsquish_at(u, 0.7);
  const Point3 on{u.inner.hi().x, 0.3, 0.2};
  const Point3 in = on - Point3{1e-9, 0, 0};
  const Point3 out = on + Point3{1e-9, 0, 0};
  EXPECT_LT(distance(m.eval(in), m.eval(out)), 1e-7);
}

TEST(Unsquish, RejectsBadNesting) {
  auto u = sample_unsquish();
  u.tip = {5, 0, 0};
  EXPECT_THROW(make_unsquish_at(u, 0.5), std::invalid_argument);
  u = sample_unsquish();
  u.c = 1.0;
  EXPECT_THROW(make_unsquish_at(u, 0.5), std::invalid_argument);
}

TEST(Pushforward, ConeExactAgainstDenseSampling) {
  auto m = make_cone_map(kRegion, kP0, kP1);
  std::vector<Point3> line{{-0.5, 0.7, 0.5}, {1.5, 0.7, 0.5}};
  auto img = push_polyline(m, line);
  EXPECT_GT(img.size(), 2u);
  // every dense sample of the true image lies on the pushed polyline
  for (int k = 0; k <= 400; ++k) {
    const Point3 y = m.eval(lerp(line[0], line[1], k / 400.0));
    double best = 1e9;
    for (std::size_t i = 0; i + 1 < img.size(); ++i)
      best = std::min(best, segments_intersect(y, y, img[i], img[i + 1], 0).gap);
    EXPECT_LT(best, 1e-12);
  }
}

TEST(Pushforward, ClosedCurveStaysClosed) {
  PLCurve sq({{0, 0, 0}, {4, 0, 0}, {4, 4, 0}, {0, 4, 0}}, true);
  auto m = make_cone_map(Box({1, -1, -1}, {3, 1, 1}), {2, 0, 0}, {2, 0.5, 0.5});
  auto c = push_curve(m, sq);
  EXPECT_TRUE(c.closed());
  EXPECT_TRUE(curve_is_simple(c, 1e-9));
  auto back = push_curve(m.inverse(), c);
  EXPECT_EQ(back.vertices().size(), 4u);
}

TEST(InverseLipschitz, BoundsTrueConstantOfLinearMap) {
  // diag(0.5, 2, 1): true constant 0.5
  auto a = make_affine_map({Mat3::diagonal({0.5, 2, 1}), {}});
  const double est = estimate_inverse_lipschitz(a, Box({0, 0, 0}, {1, 1, 1}), 20000, 1);
  EXPECT_GE(est, 0.5 - 1e-12);
  EXPECT_LT(est, 0.55);
  EXPECT_EQ(est, estimate_inverse_lipschitz(a, Box({0, 0, 0}, {1, 1, 1}), 20000, 1));
}
