#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "lagint/numerics.hpp"
#include "support.hpp"

namespace lagint {
namespace {

using testing::draw_scalars;
using testing::mean_within_4_sigma;

TEST(Pochhammer, SmallCases) {
  EXPECT_EQ(pochhammer(5.0, 0), 1.0);
  EXPECT_EQ(pochhammer(1.0, 3), 6.0);
  EXPECT_EQ(pochhammer(0.5, 2), 0.75);
}

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5), 0.5723649429247000870717, 1e-14);
  EXPECT_NEAR(log_gamma(1e-3), 6.907178885383853661684, 1e-13);
  EXPECT_NEAR(log_gamma(123.4), 469.3360974421905857943, 1e-11);
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
}

TEST(BesselScaled, ClosedForms) {
  EXPECT_EQ(bessel_i_scaled(0.0, 0.0), 1.0);
  EXPECT_EQ(bessel_i_scaled(1.5, 0.0), 0.0);
  const double half = std::exp(-1.0) * std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0);
  EXPECT_NEAR(bessel_i_scaled(0.5, 1.0), half, 1e-15);
}

TEST(BesselScaled, AgreesWithBoostOnGrid) {
  for (double nu : {0.0, 0.25, 0.5, 1.0, 1.5, 2.5, 3.5, 7.0, 20.0}) {
    for (double z : {1e-6, 0.01, 0.3, 1.0, 4.5, 12.0, 30.0, 75.0, 200.0, 700.0}) {
      const double ref = std::exp(-z) * boost::math::cyl_bessel_i(nu, z);
      EXPECT_NEAR(bessel_i_scaled(nu, z), ref, 1e-12 * std::abs(ref) + 1e-300)
          << "nu=" << nu << " z=" << z;
    }
  }
}

TEST(BesselScaled, HighPrecisionValues) {
  struct Case { double nu, z, ref; };
  const Case cases[] = {
      {0.0, 1000.0, 0.012617240455891256586},
      {2.5, 5000.0, 0.0056385113750037765891},
      {10.0, 1e4, 0.0039695741057832239381},
      {-0.3, 50.0, 0.0565102242605009887},
      {-1.5, 3.0, 0.15279171587612459967},
      {30.0, 40.0, 1.1585067161207774272e-6},
  };
  for (const auto& c : cases)
    EXPECT_NEAR(bessel_i_scaled(c.nu, c.z), c.ref, 1e-12 * c.ref) << c.nu << " " << c.z;
}

TEST(BesselScaled, IntegerOrderSymmetry) {
  for (double z : {0.5, 3.0, 40.0}) EXPECT_NEAR(bessel_i_scaled(-2.0, z), bessel_i_scaled(2.0, z), 1e-15);
}

TEST(IntegrateComposite, Polynomials) {
  EXPECT_NEAR(integrate_composite([](double) { return 1.0; }, 0.0, 1.0, 1, 2), 1.0, 1e-15);
  EXPECT_NEAR(integrate_composite([](double x) { return x; }, 0.0, 2.0, 3, 2), 2.0, 1e-14);
}

TEST(IntegrateComposite, Exponential) {
  const double v = integrate_composite([](double x) { return std::exp(-x); }, 0.0, 30.0, 30, 20);
  EXPECT_NEAR(v, -std::expm1(-30.0), 1e-12);
}

TEST(GaussJacobi, IntegratesPowerTimesPolynomial) {
  // int_0^2 y^{-0.5} (1 + y^2) dy = 2 sqrt2 + (2/5) 2^{5/2}
  const auto rule = gauss_jacobi_left(10, -0.5, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = rule.nodes[i];
    s += rule.weights[i] * std::pow(y, -0.5) * (1.0 + y * y);
  }
  EXPECT_NEAR(s, 2.0 * std::sqrt(2.0) + 0.4 * std::pow(2.0, 2.5), 1e-13);
}

TEST(RngStream, ReplaysAndSeparatesStreams) {
  RngStream a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 5; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
  }
  RngStream u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(SampleGamma, MeanOfShapeTwo) {
  const auto s = draw_scalars(1'000'000, 1, [](RngStream& r) { return sample_gamma(2.0, 1.0, r); });
  EXPECT_TRUE(mean_within_4_sigma(s, 2.0, 2.0));
}

TEST(SampleGamma, ShapeOneIsExponential) {
  const auto s = draw_scalars(100'000, 2, [](RngStream& r) { return sample_gamma(1.0, 1.0, r); });
  const auto rep = ks_one_sample(s, [](double y) { return y <= 0 ? 0.0 : -std::expm1(-y); });
  EXPECT_TRUE(rep.pass) << rep.p_value;
}

TEST(SampleGamma, ScaleRescalesInLaw) {
  const auto a = draw_scalars(20'000, 3, [](RngStream& r) { return sample_gamma(0.7, 3.0, r); });
  const auto b = draw_scalars(20'000, 4, [](RngStream& r) { return 3.0 * sample_gamma(0.7, 1.0, r); });
  EXPECT_TRUE(ks_two_sample(a, b).pass);
}

TEST(SamplePoisson, ZeroMean) {
  RngStream r(1, 1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_poisson(0.0, r), 0u);
}

TEST(SamplePoisson, MeanAndVariance) {
  const auto s = draw_scalars(1'000'000, 5, [](RngStream& r) { return double(sample_poisson(3.0, r)); });
  EXPECT_TRUE(mean_within_4_sigma(s, 3.0, 3.0));
  // Var of the squared deviation: mu4 - sigma^4 with mu4 = 3 lambda^2 + lambda.
  std::vector<double> sq(s.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = (s.values[i] - 3.0) * (s.values[i] - 3.0);
  EXPECT_TRUE(mean_within_4_sigma(EmpiricalSample(sq), 3.0, 3.0 * 9.0 + 3.0 - 9.0));
}

TEST(SampleNoncentralChisq, ZeroNoncentralityIsGamma) {
  const auto a = draw_scalars(20'000, 6, [](RngStream& r) { return sample_noncentral_chisq(3.0, 0.0, r); });
  const auto b = draw_scalars(20'000, 7, [](RngStream& r) { return sample_gamma(1.5, 2.0, r); });
  EXPECT_TRUE(ks_two_sample(a, b).pass);
}

TEST(SampleNoncentralChisq, MeanAndVariance) {
  const auto s = draw_scalars(1'000'000, 8, [](RngStream& r) { return sample_noncentral_chisq(3.0, 2.0, r); });
  // mean d + l = 5, variance 2(d + 2l) = 14, fourth central moment 48(d + 4l) + 3 var^2.
  EXPECT_TRUE(mean_within_4_sigma(s, 5.0, 14.0));
  std::vector<double> sq(s.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = (s.values[i] - 5.0) * (s.values[i] - 5.0);
  const double mu4 = 48.0 * (3.0 + 8.0) + 3.0 * 14.0 * 14.0;
  EXPECT_TRUE(mean_within_4_sigma(EmpiricalSample(sq), 14.0, mu4 - 196.0));
}

TEST(ParallelBatches, IndependentOfWorkerCount) {
  auto run = [](unsigned workers) {
    std::vector<double> out(2500);
    parallel_batches(out.size(), 300, 11, 100, [&](RngStream& r, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) out[i] = r.uniform();
    }, workers);
    return out;
  };
  EXPECT_EQ(run(1), run(4));
}

}  // namespace
}  // namespace lagint
