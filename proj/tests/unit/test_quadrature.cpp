#include <gtest/gtest.h>

#include <cmath>

#include "lagint/chamber.hpp"
#include "lagint/quadrature.hpp"

namespace lagint {
namespace {

double integrate_segment(const Segment& s, const QuadratureOptions& o, double (*f)(double)) {
  std::vector<double> nodes, weights;
  append_segment_rule(s, o, nodes, weights);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

TEST(SingularPower, Classification) {
  EXPECT_FALSE(is_singular_power(0.0));
  EXPECT_FALSE(is_singular_power(2.0));
  EXPECT_TRUE(is_singular_power(0.5));
  EXPECT_TRUE(is_singular_power(-0.5));
  EXPECT_TRUE(is_singular_power(-1.0));
}

TEST(SegmentRule, FractionalPowerAtOrigin) {
  // int_0^1 y^{-1/2} e^{-y} dy = sqrt(pi) erf(1)
  const double v = integrate_segment({0.0, 1.0, -0.5}, {2, 20},
                                     [](double y) { return std::exp(-y) / std::sqrt(y); });
  EXPECT_NEAR(v, std::sqrt(M_PI) * std::erf(1.0), 1e-13);
}

TEST(SegmentRule, GradedNearOriginForLogs) {
  // int_{1e-6}^1 log y dy
  const double lo = 1e-6;
  const double exact = (-1.0) - (lo * std::log(lo) - lo);
  const double v = integrate_segment({lo, 1.0, 0.0, true}, {2, 20}, [](double y) { return std::log(y); });
  EXPECT_NEAR(v, exact, 1e-12);
}

TEST(SplitRange, KeepsInteriorBreakpointsOnly) {
  const double bps[] = {-1.0, 0.5, 0.25, 2.0, 3.0};
  const auto segs = split_range(0.0, 2.0, bps, 0.0);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[0].hi, 0.25);
  EXPECT_EQ(segs[1].hi, 0.5);
  EXPECT_EQ(segs[2].hi, 2.0);
}

TEST(IntegrateNested, TriangleArea) {
  // { 0 <= y0 <= 1, 0 <= y1 <= y0 }, integrand y0 * y1 -> 1/8
  auto ranges = [](std::size_t k, std::span<const double> prefix, std::vector<Segment>& out) {
    out.push_back({0.0, k == 0 ? 1.0 : prefix[0], 0.0});
  };
  const double v = integrate_nested(2, ranges, [](std::span<const double> y) { return y[0] * y[1]; },
                                    QuadratureOptions{1, 4});
  EXPECT_NEAR(v, 0.125, 1e-15);
}

TEST(IntegrateNested, MultiOutputMatchesScalarCalls) {
  auto ranges = [](std::size_t, std::span<const double>, std::vector<Segment>& out) {
    out.push_back({0.0, 2.0, 0.0});
  };
  const auto v = integrate_nested_multi(
      2, 2, ranges,
      [](std::span<const double> y, std::span<double> out) {
        out[0] = std::exp(-y[0] - y[1]);
        out[1] = y[0] * y[1];
      },
      QuadratureOptions{2, 10});
  EXPECT_NEAR(v[0], std::pow(-std::expm1(-2.0), 2), 1e-14);
  EXPECT_NEAR(v[1], 4.0, 1e-13);
}

TEST(Chamber, VandermondeValues) {
  EXPECT_EQ(vandermonde(ChamberPoint{3.0}), 1.0);
  EXPECT_EQ(vandermonde(ChamberPoint{0.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(vandermonde(ChamberPoint{1.0, 3.0}), 2.0);
}

TEST(Chamber, ValidatesOrderingAndSign) {
  EXPECT_THROW(ChamberPoint({2.0, 1.0}), DomainError);
  EXPECT_THROW(ChamberPoint({-1.0, 1.0}), DomainError);
  EXPECT_NO_THROW(ChamberPoint({-1.0, 1.0}, false));
  const auto p = ChamberPoint::from_unsorted({3.0, -1e-15, 1.0}, true, 1e-12);
  EXPECT_EQ(p.vector(), (std::vector<double>{0.0, 1.0, 3.0}));
  EXPECT_TRUE((ChamberPoint{1.0, 2.0}).is_strict_interior());
  EXPECT_FALSE((ChamberPoint{0.0, 2.0}).is_strict_interior());
  EXPECT_FALSE((ChamberPoint{1.0, 1.0}).is_strict_interior());
}

TEST(Chamber, InterlacingWindows) {
  const InterlacingWindow outer(WindowKind::outer, ChamberPoint{1.0, 2.0, 4.0});
  EXPECT_EQ(outer.output_dim(), 2u);
  EXPECT_EQ(outer.lower(1), 2.0);
  EXPECT_EQ(outer.upper(1), 4.0);
  const double in[] = {1.5, 3.0};
  const double out[] = {0.5, 3.0};
  EXPECT_TRUE(outer.contains(in));
  EXPECT_FALSE(outer.contains(out));

  const InterlacingWindow inner(WindowKind::inner, ChamberPoint{1.0, 3.0});
  EXPECT_EQ(inner.output_dim(), 2u);
  EXPECT_EQ(inner.lower(0), 0.0);
  EXPECT_EQ(inner.upper(0), 1.0);
  EXPECT_EQ(inner.lower(1), 1.0);
  const double y[] = {0.5, 2.0};
  EXPECT_TRUE(inner.contains(y));
}

}  // namespace
}  // namespace lagint
