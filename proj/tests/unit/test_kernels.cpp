#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lagint/kernels.hpp"
#include "lagint/rmt.hpp"
#include "support.hpp"

namespace lagint {
namespace {

const auto kOne = [](std::span<const double>) { return 1.0; };

std::vector<ChamberPoint> draw_points(std::size_t n, std::uint64_t stream,
                                      const std::function<ChamberPoint(RngStream&)>& f) {
  RngStream rng(testing::kSeed, stream);
  std::vector<ChamberPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(rng));
  return out;
}

EmpiricalSample coordinate(const std::vector<ChamberPoint>& pts, std::size_t k) {
  std::vector<double> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.push_back(p[k]);
  return EmpiricalSample(std::move(v));
}

/// Pearson chi-square over a rectangular binning of (y1 <= y2); returns the p-value
/// using the Wilson-Hilferty normal approximation. Cells expecting fewer than 20
/// draws are skipped.
double binned_gof(const std::vector<ChamberPoint>& pts, const std::vector<double>& e1,
                  const std::vector<double>& e2, const std::function<double(double, double)>& density) {
  const std::size_t b1 = e1.size() - 1, b2 = e2.size() - 1;
  std::vector<double> counts(b1 * b2, 0.0);
  for (const auto& p : pts) {
    const auto i = std::upper_bound(e1.begin(), e1.end(), p[0]) - e1.begin() - 1;
    const auto j = std::upper_bound(e2.begin(), e2.end(), p[1]) - e2.begin() - 1;
    if (i >= 0 && j >= 0 && std::size_t(i) < b1 && std::size_t(j) < b2) counts[i * b2 + j] += 1.0;
  }
  double chi2 = 0.0;
  int dof = -1;
  for (std::size_t i = 0; i < b1; ++i)
    for (std::size_t j = 0; j < b2; ++j) {
      const auto ranges = [&](std::size_t k, std::span<const double> y, std::vector<Segment>& out) {
        if (k == 0) out.push_back({e1[i], e1[i + 1], 0.0});
        else out.push_back({std::max(e2[j], y[0]), e2[j + 1], 0.0});
      };
      const double prob = integrate_nested(2, ranges, [&](std::span<const double> y) { return density(y[0], y[1]); },
                                           QuadratureOptions{2, 12});
      const double expected = prob * static_cast<double>(pts.size());
      if (expected < 20.0) continue;
      chi2 += (counts[i * b2 + j] - expected) * (counts[i * b2 + j] - expected) / expected;
      ++dof;
    }
  const double k = dof;
  const double z = (std::cbrt(chi2 / k) - (1.0 - 2.0 / (9.0 * k))) / std::sqrt(2.0 / (9.0 * k));
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = a + (b - a) * i / n;
  return v;
}

TEST(KernelNames, RoundTrip) {
  for (auto k : {KernelKind::corner, KernelKind::alpha_square, KernelKind::alpha_corner, KernelKind::hat_corner,
                 KernelKind::hat_square})
    EXPECT_EQ(parse_kernel_kind(kernel_name(k)), k);
  EXPECT_THROW(parse_kernel_kind("nope"), DomainError);
}

TEST(DensityCorner, Values) {
  const double y1[] = {1.0};
  EXPECT_NEAR(density_corner(ChamberPoint{0.0, 2.0}, y1), 0.5, 1e-15);
  const double y2[] = {0.5, 1.5};
  EXPECT_NEAR(density_corner(ChamberPoint{0.0, 1.0, 2.0}, y2), 1.0, 1e-15);
  const double out[] = {0.5, 0.7};
  EXPECT_EQ(density_corner(ChamberPoint{0.0, 1.0, 2.0}, out), 0.0);
}

TEST(DensityCorner, UnitMass) {
  EXPECT_NEAR(apply_kernel_quadrature({KernelKind::corner, 0.0}, ChamberPoint{0.0, 1.0, 2.0}, kOne), 1.0, 1e-10);
}

TEST(DensityAlphaSquare, Values) {
  const double y[] = {1.0};
  EXPECT_NEAR(density_alpha_square(0.0, ChamberPoint{2.0}, y), 0.5, 1e-15);
  const double h[] = {0.5};
  EXPECT_NEAR(density_alpha_square(1.0, ChamberPoint{1.0}, h), 1.0, 1e-15);
}

TEST(DensityAlphaSquare, UnitMass) {
  EXPECT_NEAR(apply_kernel_quadrature({KernelKind::alpha_square, 0.5}, ChamberPoint{1.0, 3.0}, kOne), 1.0, 1e-8);
}

TEST(DensityAlphaCorner, Values) {
  const double a[] = {0.5};
  const double b[] = {1.5};
  EXPECT_NEAR(density_alpha_corner(0.0, ChamberPoint{1.0, 2.0}, a), std::log(2.0), 1e-14);
  EXPECT_NEAR(density_alpha_corner(0.0, ChamberPoint{1.0, 2.0}, b), std::log(4.0 / 3.0), 1e-14);
  EXPECT_NEAR(apply_kernel_quadrature({KernelKind::alpha_corner, 0.0}, ChamberPoint{1.0, 2.0}, kOne), 1.0, 1e-10);
}

TEST(DensityHat, Values) {
  const double y[] = {1.0};
  EXPECT_NEAR(density_hat_square(0.0, ChamberPoint{2.0}, y), std::exp(1.0), 1e-14);
  const double y2[] = {2.0};
  EXPECT_NEAR(density_hat_corner(-1.0, ChamberPoint{1.0, 3.0}, y2), std::exp(2.0), 1e-13);
  const double out[] = {4.0};
  EXPECT_EQ(density_hat_corner(-1.0, ChamberPoint{1.0, 3.0}, out), 0.0);
  EXPECT_EQ(density_hat_square(0.0, ChamberPoint{2.0}, out), 0.0);
}

TEST(Kernels, DegenerateAnchorRejectedByDensities) {
  const double y[] = {1.0};
  EXPECT_THROW(density_corner(ChamberPoint{1.0, 1.0}, y), DegenerateAnchorError);
}

TEST(InversePowerIntegral, AcrossZero) {
  for (double a : {-0.5, -1e-9, 0.0, 1e-9, 1.5}) {
    const double q = integrate_composite([a](double z) { return std::pow(z, -a - 1.0); }, 0.5, 3.0, 8, 20);
    EXPECT_NEAR(inverse_power_integral(a, 0.5, 3.0), q, 1e-13) << a;
  }
}

TEST(KernelNormalization, AllProbabilityKernels) {
  const std::vector<double> anchor = {1.0, 2.0, 4.0, 7.0};
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto kind : {KernelKind::corner, KernelKind::alpha_square, KernelKind::alpha_corner})
      for (double a : {-0.5, 0.0, 1.0, 2.5}) {
        const std::size_t m = kind == KernelKind::alpha_square ? n : n + 1;
        const ChamberPoint x(std::vector<double>(anchor.begin(), anchor.begin() + m));
        EXPECT_NEAR(apply_kernel_quadrature({kind, a}, x, kOne), 1.0, 1e-8)
            << kernel_name(kind) << " N=" << n << " a=" << a;
      }
}

TEST(ApplyKernel, Means) {
  const auto first = [](std::span<const double> y) { return y[0]; };
  EXPECT_NEAR(apply_kernel_quadrature({KernelKind::corner, 0.0}, ChamberPoint{0.0, 2.0}, first), 1.0, 1e-10);
  EXPECT_NEAR(apply_kernel_quadrature({KernelKind::alpha_square, 1.0}, ChamberPoint{1.0}, first), 2.0 / 3.0, 1e-10);
}

TEST(ApplyKernel, RejectsLargeOutput) {
  EXPECT_THROW(apply_kernel_quadrature({KernelKind::corner, 0.0}, ChamberPoint{1.0, 2.0, 3.0, 4.0, 5.0}, kOne),
               UnsupportedError);
}

TEST(SampleCorner, UniformAtOneParticle) {
  const auto pts = draw_points(100'000, 30, [](RngStream& r) { return sample_corner(ChamberPoint{0.0, 2.0}, r); });
  EXPECT_TRUE(ks_one_sample(coordinate(pts, 0), [](double y) { return std::clamp(y / 2.0, 0.0, 1.0); }).pass);
}

TEST(SampleCorner, TiedAnchorIsFixed) {
  RngStream r(1, 1);
  for (int i = 0; i < 50; ++i) {
    const auto y = sample_corner(ChamberPoint{1.5, 1.5, 1.5}, r);
    EXPECT_EQ(y.vector(), (std::vector<double>{1.5, 1.5}));
  }
}

TEST(SampleCorner, BinnedFitAtTwoParticles) {
  const ChamberPoint x{0.0, 1.0, 2.0};
  const auto pts = draw_points(100'000, 31, [&](RngStream& r) { return sample_corner(x, r); });
  const double p = binned_gof(pts, linspace(0.0, 1.0, 8), linspace(1.0, 2.0, 8), [&](double a, double b) {
    const double y[] = {a, b};
    return density_corner(x, y);
  });
  EXPECT_GT(p, 0.01);
}

TEST(SampleCornerRejection, AgreesWithMatrixSampler) {
  const ChamberPoint x{0.0, 1.0, 2.0};
  const auto a = draw_points(10'000, 32, [&](RngStream& r) { return sample_corner(x, r); });
  const auto b = draw_points(10'000, 33, [&](RngStream& r) { return sample_corner_rejection(x, r); });
  EXPECT_TRUE(ks_two_sample(coordinate(a, 0), coordinate(b, 0)).pass);
  EXPECT_TRUE(ks_two_sample(coordinate(a, 1), coordinate(b, 1)).pass);
}

TEST(SampleCornerRejection, NeedsStrictAnchor) {
  RngStream r(1, 1);
  EXPECT_THROW(sample_corner_rejection(ChamberPoint{1.0, 1.0, 2.0}, r), DegenerateAnchorError);
}

TEST(SampleAlphaSquare, OneParticleCdf) {
  const auto pts = draw_points(100'000, 34, [](RngStream& r) { return sample_alpha_square(0.5, ChamberPoint{2.0}, r); });
  EXPECT_TRUE(ks_one_sample(coordinate(pts, 0), [](double y) {
    return std::pow(std::clamp(y / 2.0, 0.0, 1.0), 1.5);
  }).pass);
}

TEST(SampleAlphaSquare, MarginalsAgainstQuadrature) {
  const ChamberPoint z{1.0, 2.0};
  const double alpha = 1.0;
  const auto pts = draw_points(100'000, 35, [&](RngStream& r) { return sample_alpha_square(alpha, z, r); });
  // P(y_k <= c): integrate the density over the inner window cut at y_k = c.
  auto cdf = [&](std::size_t k, double c) {
    auto ranges = [&](std::size_t d, std::span<const double>, std::vector<Segment>& out) {
      const double lo = d == 0 ? 0.0 : z[0];
      const double hi = d == k ? std::clamp(c, lo, z[d]) : z[d];
      out.push_back({lo, hi, alpha});
    };
    return integrate_nested(2, ranges, [&](std::span<const double> y) { return density_alpha_square(alpha, z, y); },
                            QuadratureOptions{1, 8});
  };
  EXPECT_NEAR(cdf(0, 1.0), 1.0, 1e-13);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto rep = ks_one_sample(coordinate(pts, k), [&](double c) { return cdf(k, c); });
    EXPECT_TRUE(rep.pass) << k << " p=" << rep.p_value;
  }
}

TEST(SampleAlphaSquare, AgreesWithMatrixModel) {
  const ChamberPoint z{1.0, 2.0};
  const auto a = draw_points(20'000, 36, [&](RngStream& r) { return sample_alpha_square(1.0, z, r); });
  const auto b = draw_points(20'000, 37, [&](RngStream& r) { return sample_corner_alpha_matrix(1, z, r); });
  EXPECT_TRUE(ks_two_sample(coordinate(a, 0), coordinate(b, 0)).pass);
  EXPECT_TRUE(ks_two_sample(coordinate(a, 1), coordinate(b, 1)).pass);
}

TEST(SampleAlphaCorner, OneParticleClosedForm) {
  const auto pts = draw_points(100'000, 38, [](RngStream& r) { return sample_alpha_corner(0.0, ChamberPoint{1.0, 2.0}, r); });
  auto cdf = [](double y) {
    if (y <= 0.0) return 0.0;
    if (y <= 1.0) return y * std::log(2.0);
    if (y >= 2.0) return 1.0;
    return y * std::log(2.0 / y) + y - 1.0;
  };
  EXPECT_TRUE(ks_one_sample(coordinate(pts, 0), cdf).pass);
}

TEST(SampleAlphaCorner, TiedAnchorLimit) {
  // x = (c, c, c) forces z = (c, c); the inner window pins y2 = c and leaves
  // y1 with density proportional to y^alpha (c - y), i.e. y1 / c ~ Beta(alpha + 1, 2).
  const double c = 2.0, a = 1.0;
  const auto pts = draw_points(50'000, 39, [&](RngStream& r) { return sample_alpha_corner(a, ChamberPoint{c, c, c}, r); });
  for (const auto& p : pts) ASSERT_EQ(p[1], c);
  auto cdf = [&](double y) {
    const double u = std::clamp(y / c, 0.0, 1.0);
    return 3.0 * u * u - 2.0 * u * u * u;
  };
  EXPECT_TRUE(ks_one_sample(coordinate(pts, 0), cdf).pass);
}

TEST(SampleAlphaCorner, BinnedFitAtTwoParticles) {
  const ChamberPoint x{1.0, 2.0, 4.0};
  const auto pts = draw_points(100'000, 40, [&](RngStream& r) { return sample_alpha_corner(1.0, x, r); });
  const double p = binned_gof(pts, linspace(0.0, 2.0, 8), linspace(0.0, 4.0, 8), [&](double a, double b) {
    const double y[] = {a, b};
    return density_alpha_corner(1.0, x, y);
  });
  EXPECT_GT(p, 0.01);
}

}  // namespace
}  // namespace lagint
