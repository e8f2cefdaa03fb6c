#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "checks.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "experiments.hpp"
#include "lagint/error.hpp"
#include "lagint/kernels.hpp"
#include "lagint/scalar_diffusion.hpp"

namespace lagint::experiments {
namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lagint_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST(Config, SetsKnownKeys) {
  ExperimentConfig cfg;
  cfg.set("alpha", "0.5");
  cfg.set("N", "2");
  cfg.set("x", "1, 2,4");
  cfg.set("seed", "42");
  cfg.set("dt", "1e-4");
  EXPECT_EQ(*cfg.alpha, 0.5);
  EXPECT_EQ(*cfg.n, 2);
  EXPECT_EQ(*cfg.x, (std::vector<double>{1.0, 2.0, 4.0}));
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(*cfg.dt, 1e-4);
}

TEST(Config, RejectsBadInput) {
  ExperimentConfig cfg;
  EXPECT_THROW(cfg.set("colour", "red"), ConfigError);
  EXPECT_THROW(cfg.set("alpha", "abc"), ConfigError);
  EXPECT_THROW(cfg.set("N", "2.5"), ConfigError);
  EXPECT_THROW(cfg.set("x", "1,,2"), ConfigError);
}

TEST(Config, LoadsFileWithComments) {
  const auto dir = temp_dir("config");
  std::ofstream(dir / "c.cfg") << "# comment\nalpha = 1.5   # trailing\n\nn_samples=500\nt = 0.25\n";
  ExperimentConfig cfg;
  load_config_file(dir / "c.cfg", cfg);
  EXPECT_EQ(*cfg.alpha, 1.5);
  EXPECT_EQ(cfg.n_samples, 500u);
  EXPECT_EQ(*cfg.t, 0.25);
  std::ofstream(dir / "bad.cfg") << "alpha 1\n";
  EXPECT_THROW(load_config_file(dir / "bad.cfg", cfg), ConfigError);
  EXPECT_THROW(load_config_file(dir / "missing.cfg", cfg), ConfigError);
}

TEST(Csv, FormattingAndEscaping) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  const auto dir = temp_dir("csv");
  {
    CsvWriter w(dir / "sub" / "out.csv");
    w.comment("k=v");
    w.row({"a", "b,c"});
  }
  EXPECT_EQ(slurp(dir / "sub" / "out.csv"), "# k=v\r\na,\"b,c\"\r\n");
}

TEST(Intertwining, TimeZeroSidesCoincide) {
  for (auto rel : {Relation::main, Relation::shifted_corner}) {
    const auto s = intertwining_sides(rel, 0.5, 0.0, ChamberPoint{1.0, 2.0}, kStandardTestFunctions,
                                      standard_test_functions, default_intertwine_quadrature(1));
    for (std::size_t i = 0; i < kStandardTestFunctions; ++i) EXPECT_EQ(s.lhs[i], s.rhs[i]);
  }
}

TEST(Intertwining, ConstantFunctionGivesOne) {
  const auto one = [](std::span<const double>, std::span<double> out) { out[0] = 1.0; };
  for (auto rel : {Relation::main, Relation::shifted_corner, Relation::shifted_square}) {
    const ChamberPoint x = rel == Relation::shifted_square ? ChamberPoint{1.0} : ChamberPoint{1.0, 2.0};
    const auto s = intertwining_sides(rel, 0.0, 0.5, x, 1, one, default_intertwine_quadrature(1));
    EXPECT_NEAR(s.lhs[0], 1.0, 1e-8);
    EXPECT_NEAR(s.rhs[0], 1.0, 1e-8);
  }
}

TEST(Intertwining, OneParticleRelationsHold) {
  for (auto rel : {Relation::main, Relation::shifted_corner, Relation::shifted_square})
    for (double a : {-0.5, 0.0, 1.0})
      for (double t : {0.25, 1.0}) {
        const ChamberPoint x = rel == Relation::shifted_square ? ChamberPoint{1.0} : ChamberPoint{1.0, 2.0};
        const auto s = intertwining_sides(rel, a, t, x, kStandardTestFunctions, standard_test_functions,
                                          default_intertwine_quadrature(1));
        EXPECT_LE(s.max_relative_discrepancy(), 1e-5) << relation_name(rel) << " a=" << a << " t=" << t;
      }
}

TEST(Intertwining, RejectsTiedAnchor) {
  EXPECT_THROW(intertwining_sides(Relation::main, 0.5, 0.5, ChamberPoint{1.0, 1.0}, kStandardTestFunctions,
                                  standard_test_functions, default_intertwine_quadrature(1)),
               DegenerateAnchorError);
}

TEST(Composition, PointwiseIdentity) {
  const ChamberPoint x{1.0, 2.0, 4.0};
  const double y[] = {1.5, 3.0};
  for (double a : {-0.5, 0.0, 2.5}) {
    const double direct = density_alpha_corner(a, x, y);
    EXPECT_NEAR(composed_density(a, x, y), direct, 1e-6 * direct) << a;
  }
}

TEST(DualIdentities, SquareFormAtNegativeParameter) {
  const auto s = dual_square_identity(-0.5, 0.5, 2.0, 1.0);
  EXPECT_NEAR(s.lhs, s.rhs, 1e-5 * std::abs(s.rhs));
}

TEST(DualIdentities, SquareFormRejectsNonNegativeParameter) {
  EXPECT_THROW(dual_square_identity(0.5, 0.5, 2.0, 1.0), DomainError);
}

TEST(DualIdentities, SquareFormVanishesForSeparatedSupports) {
  // y > x and small t: no mass reaches above y and the dual cannot move down to y.
  const auto s = dual_square_identity(-0.5, 1e-3, 1.0, 2.0);
  EXPECT_LT(std::abs(s.lhs), 1e-50);
  EXPECT_LT(std::abs(s.rhs), 1e-50);
}

TEST(DualIdentities, CornerForm) {
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    const auto s = dual_corner_identity(a, 0.5, 1.0, 3.0, 2.0);
    EXPECT_NEAR(s.lhs, s.rhs, 1e-5 * std::abs(s.rhs)) << a;
  }
}

TEST(DualIdentities, PointwiseResiduals) {
  EXPECT_LE(htransform_relative_residual(1.5, 0.7, 1.0, 2.0), 1e-10);
  EXPECT_LE(dual_definition_relative_residual(0.5, 0.4, 1.0, 2.0), 1e-12);
  EXPECT_LE(dual_generator_relative_residual(0.0, 0.5, 1.5, 1.0), 1e-4);
  EXPECT_LE(chapman_kolmogorov(0.5, 0.3, 0.7, 1.0, 2.0).relative(), 1e-8);
}

TEST(DrawMany, DeterministicAndBatched) {
  const ChamberSampler s = [](RngStream& r) { return ChamberPoint{r.uniform()}; };
  const auto a = draw_many(2500, 9, 100, s);
  const auto b = draw_many(2500, 9, 100, s);
  EXPECT_EQ(a, b);
  RngStream first(9, 100);
  EXPECT_EQ(a[0][0], first.uniform());
  RngStream third(9, 102);
  EXPECT_EQ(a[2000][0], third.uniform());
}

TEST(TransitionCdf, MatchesOneDimensionalQuadrature) {
  const std::vector<double> ys = {0.1, 0.5, 1.0, 3.0, 30.0};
  const auto cdf = transition_cdf_at_sorted(0.5, 0.7, 1.0, ys);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    std::vector<double> nodes, weights;
    append_segment_rule({0.0, ys[i], 0.5}, {32, 20}, nodes, weights);
    double q = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) q += weights[j] * transition_density(0.5, 0.7, 1.0, nodes[j]);
    EXPECT_NEAR(cdf[i], q, 1e-10) << ys[i];
  }
  EXPECT_NEAR(cdf.back(), 1.0, 1e-10);
}

TEST(Experiments, KernelsCheckPassesAndWritesSummary) {
  ExperimentConfig cfg;
  cfg.out_dir = temp_dir("kernels");
  cfg.n = 1;
  const auto res = run_kernels_check(cfg);
  EXPECT_TRUE(res.passed());
  write_result_csv(res, cfg);
  const auto text = slurp(cfg.out_dir / "kernels-check.csv");
  EXPECT_EQ(text.rfind("experiment,check,params,value,reference,statistic,threshold,pass\r\n", 0), 0u);
  EXPECT_NE(text.find("kernels-check,summary,"), std::string::npos);
}

TEST(Experiments, CorruptedDensityFails) {
  ExperimentConfig cfg;
  cfg.n = 1;
  cfg.fault = "corrupt-density";
  EXPECT_FALSE(run_kernel_normalization(cfg).passed());
}

TEST(Experiments, UnsupportedDimension) {
  ExperimentConfig cfg;
  cfg.n = 4;
  EXPECT_THROW(run_kernels_check(cfg), UnsupportedError);
  cfg.n = 3;
  EXPECT_THROW(run_intertwine(cfg), UnsupportedError);
}

TEST(Experiments, CalibrationGate) {
  const auto res = run_calibration(ExperimentConfig{});
  ASSERT_EQ(res.rows.size(), 2u);
  for (const auto& r : res.rows) EXPECT_LE(r.value, 0.03);
}

}  // namespace
}  // namespace lagint::experiments
