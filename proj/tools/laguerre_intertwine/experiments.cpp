#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "checks.hpp"
#include "csv.hpp"
#include "lagint/kernels.hpp"
#include "lagint/laguerre_process.hpp"
#include "lagint/rmt.hpp"
#include "lagint/scalar_diffusion.hpp"

namespace lagint::experiments {

namespace {

constexpr double kFamilyLevel = 0.01;
const std::vector<double> kAlphaGrid = {-0.5, 0.0, 1.0, 2.5};
const std::vector<double> kTimeGrid = {0.25, 1.0};
const std::vector<double> kDefaultAnchor = {1.0, 2.0, 4.0, 7.0};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

class Params {
 public:
  Params& add(const std::string& key, double v) { return add(key, fmt(v)); }
  Params& add(const std::string& key, const std::string& v) {
    text_ += (text_.empty() ? "" : ";") + key + "=" + v;
    return *this;
  }
  Params& add(const std::string& key, const ChamberPoint& x) { return add(key, format_list(x.vector())); }
  [[nodiscard]] const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::vector<double> alpha_grid(const ExperimentConfig& cfg, const std::vector<double>& defaults) {
  return cfg.alpha ? std::vector<double>{*cfg.alpha} : defaults;
}

std::vector<double> time_grid(const ExperimentConfig& cfg) {
  if (cfg.t && !(*cfg.t >= 0.0)) throw ConfigError("t must be non-negative");
  return cfg.t ? std::vector<double>{*cfg.t} : kTimeGrid;
}

/// Anchor of the requested size: cfg.x if given (size checked), else a prefix of the default.
ChamberPoint anchor(const ExperimentConfig& cfg, std::size_t size) {
  if (cfg.x) {
    if (cfg.x->size() != size)
      throw ConfigError("x must have " + std::to_string(size) + " coordinates");
    return ChamberPoint(*cfg.x, true);
  }
  if (size > kDefaultAnchor.size()) throw UnsupportedError("no default anchor of that size");
  return ChamberPoint(std::vector<double>(kDefaultAnchor.begin(), kDefaultAnchor.begin() + size), true);
}

QuadratureOptions quadrature(const ExperimentConfig& cfg, QuadratureOptions defaults) {
  if (cfg.panels) defaults.panels = *cfg.panels;
  if (cfg.order) defaults.order = *cfg.order;
  if (defaults.panels < 1 || defaults.order < 2) throw ConfigError("bad quadrature settings");
  return defaults;
}

int integer_alpha(double alpha) {
  if (alpha < 0.0 || alpha != std::floor(alpha))
    throw UnsupportedError("this experiment needs a non-negative integer alpha");
  return static_cast<int>(alpha);
}

void require_samples(const ExperimentConfig& cfg) {
  if (cfg.n_samples < 100) throw ConfigError("n_samples must be at least 100");
}

std::vector<std::size_t> dims(const ExperimentConfig& cfg, std::vector<std::size_t> defaults,
                              std::size_t max_n) {
  if (cfg.n) {
    if (*cfg.n < 1) throw ConfigError("N must be positive");
    if (static_cast<std::size_t>(*cfg.n) > max_n)
      throw UnsupportedError("N = " + std::to_string(*cfg.n) + " is not supported here");
    return {static_cast<std::size_t>(*cfg.n)};
  }
  return defaults;
}

}  // namespace

// ---------------------------------------------------------------------------

bool ExperimentResult::passed() const { return failures() == 0; }

std::size_t ExperimentResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

void ExperimentResult::append(const ExperimentResult& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void ExperimentResult::add_reports(const std::vector<ComparisonReport>& reports,
                                   const std::string& params) {
  for (const auto& r : reports)
    rows.push_back({r.test, params, r.p_value, 0.0, r.statistic, r.threshold, r.pass, true});
}

void write_result_csv(const ExperimentResult& result, const ExperimentConfig& cfg) {
  CsvWriter csv(cfg.out_dir / (result.experiment + ".csv"));
  csv.row({"experiment", "check", "params", "value", "reference", "statistic", "threshold", "pass"});
  for (const auto& r : result.rows)
    csv.row({result.experiment, r.check, r.params, format_double(r.value), format_double(r.reference),
             format_double(r.statistic), format_double(r.threshold), r.pass ? "1" : "0"});
  csv.row({result.experiment, "summary", "seed=" + std::to_string(cfg.seed),
           std::to_string(result.rows.size()), "", std::to_string(result.failures()), "0",
           result.passed() ? "1" : "0"});
}

void print_result(const ExperimentResult& result, std::ostream& os, bool failures_only) {
  for (const auto& r : result.rows) {
    if (failures_only && r.pass) continue;
    os << (r.pass ? "[pass] " : "[FAIL] ") << result.experiment << " " << r.check << " "
       << r.params << " statistic=" << fmt(r.statistic) << " threshold=" << fmt(r.threshold)
       << "\n";
  }
  os << result.experiment << ": " << (result.rows.size() - result.failures()) << "/"
     << result.rows.size() << " checks passed\n";
}

// ---------------------------------------------------------------------------
// Kernels

ExperimentResult run_kernel_normalization(const ExperimentConfig& cfg) {
  ExperimentResult res{"kernels-check", {}};
  const double tol = cfg.tol.value_or(1e-7);
  const auto opts = quadrature(cfg, {2, 20});
  const auto one = [](std::span<const double>) { return 1.0; };
  const double corruption = cfg.fault == "corrupt-density" ? 1.0 + 1e-3 : 1.0;
  for (std::size_t n : dims(cfg, {1, 2, 3}, 3)) {
    for (auto kind : {KernelKind::corner, KernelKind::alpha_square, KernelKind::alpha_corner}) {
      const auto alphas = kind == KernelKind::corner ? std::vector<double>{0.0} : alpha_grid(cfg, kAlphaGrid);
      for (double a : alphas) {
        if (!(a > -1.0)) throw ConfigError("alpha must exceed -1");
        const KernelSpec k{kind, a};
        const ChamberPoint x = anchor(cfg, kind == KernelKind::alpha_square ? n : n + 1);
        const double mass = corruption * apply_kernel_quadrature(k, x, one, opts);
        Params p;
        p.add("kernel", std::string(kernel_name(kind))).add("N", static_cast<double>(n));
        if (kind != KernelKind::corner) p.add("alpha", a);
        p.add("x", x);
        const double err = std::abs(mass - 1.0);
        res.rows.push_back({"normalization", p.str(), mass, 1.0, err, tol, err <= tol});
      }
    }
  }
  return res;
}

ExperimentResult run_composition(const ExperimentConfig& cfg) {
  ExperimentResult res{"kernels-check", {}};
  const double tol = cfg.tol.value_or(1e-6);
  const auto opts = quadrature(cfg, {4, 20});
  const auto alphas = alpha_grid(cfg, kAlphaGrid);
  std::uint64_t stream = 7000;
  for (std::size_t n : dims(cfg, {1, 2}, 2)) {
    const std::vector<ChamberPoint> anchors = {anchor(cfg, n + 1),
                                               cfg.x ? anchor(cfg, n + 1) : ChamberPoint{0.5, 1.5, 3.0}};
    for (int i = 0; i < 10; ++i) {
      const double a = alphas[static_cast<std::size_t>(i) % alphas.size()];
      const ChamberPoint& base = anchors[static_cast<std::size_t>(i) % 2];
      const ChamberPoint x(std::vector<double>(base.vector().begin(), base.vector().begin() + n + 1), true);
      RngStream rng(cfg.seed, stream++);
      const ChamberPoint y = sample_alpha_corner(a, x, rng);
      const double direct = density_alpha_corner(a, x, y.coords());
      const double composed = composed_density(a, x, y.coords(), opts);
      const double rel = std::abs(composed - direct) / std::abs(direct);
      Params p;
      p.add("N", static_cast<double>(n)).add("alpha", a).add("x", x).add("y", y);
      res.rows.push_back({"composition", p.str(), composed, direct, rel, tol, rel <= tol});
    }
  }
  return res;
}

ExperimentResult run_kernels_check(const ExperimentConfig& cfg) {
  auto res = run_kernel_normalization(cfg);
  if (!cfg.n || *cfg.n <= 2) res.append(run_composition(cfg));
  return res;
}

// ---------------------------------------------------------------------------
// Intertwining

ExperimentResult run_intertwine(const ExperimentConfig& cfg, IntertwineSet set) {
  ExperimentResult res{"intertwine", {}};
  std::vector<Relation> relations;
  if (set != IntertwineSet::shifted) relations.push_back(Relation::main);
  if (set != IntertwineSet::main) {
    relations.push_back(Relation::shifted_corner);
    relations.push_back(Relation::shifted_square);
  }
  const auto names = standard_test_function_names();
  for (std::size_t n : dims(cfg, {1}, 2)) {
    const double tol = cfg.tol.value_or(n == 1 ? 1e-5 : 1e-4);
    auto q = default_intertwine_quadrature(n);
    q.semigroup = quadrature(cfg, q.semigroup);
    q.kernel = quadrature(cfg, q.kernel);
    const ChamberPoint big = anchor(cfg, n + 1);
    const ChamberPoint small(std::vector<double>(big.vector().begin(), big.vector().begin() + n), true);
    for (Relation rel : relations) {
      const ChamberPoint& x = rel == Relation::shifted_square ? small : big;
      for (double a : alpha_grid(cfg, kAlphaGrid)) {
        if (!(a > -1.0)) throw ConfigError("alpha must exceed -1");
        for (double t : time_grid(cfg)) {
          const auto sides = intertwining_sides(rel, a, t, x, kStandardTestFunctions,
                                                standard_test_functions, q);
          for (std::size_t i = 0; i < kStandardTestFunctions; ++i) {
            const double scale = std::max(std::abs(sides.lhs[i]), std::abs(sides.rhs[i]));
            const double d = scale > 0.0 ? std::abs(sides.lhs[i] - sides.rhs[i]) / scale : 0.0;
            Params p;
            p.add("relation", relation_name(rel)).add("N", static_cast<double>(n)).add("alpha", a)
                .add("t", t).add("x", x).add("f", names[i]);
            res.rows.push_back({"intertwining", p.str(), sides.lhs[i], sides.rhs[i], d, tol, d <= tol});
          }
        }
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Scalar and dual identities

ExperimentResult run_htransform_checks(const ExperimentConfig& cfg) {
  ExperimentResult res{"dual-check", {}};
  struct Point { double t, x, y; };
  const std::vector<Point> pts = {{0.1, 3.0, 0.5}, {1.0, 1.0, 1.0}, {0.5, 0.2, 4.0}};
  for (double a : alpha_grid(cfg, {-0.5, 0.0, 0.25, 1.0, 2.5}))
    for (const auto& q : pts) {
      const double r = htransform_relative_residual(a, q.t, q.x, q.y);
      Params p;
      p.add("alpha", a).add("t", q.t).add("x", q.x).add("y", q.y);
      res.rows.push_back({"htransform-residual", p.str(), r, 0.0, r, 1e-10, r <= 1e-10});
      const double d = dual_definition_relative_residual(a, q.t, q.x, q.y);
      res.rows.push_back({"dual-definition", p.str(), d, 0.0, d, 1e-12, d <= 1e-12});
    }
  const std::vector<Point> gen_pts = {{0.5, 1.0, 2.0}, {1.0, 2.0, 1.0}, {0.3, 0.7, 0.9}};
  for (double a : alpha_grid(cfg, {-0.5, 0.5, 1.5}))
    for (const auto& q : gen_pts) {
      const double r = dual_generator_relative_residual(a, q.t, q.x, q.y);
      Params p;
      p.add("alpha", a).add("t", q.t).add("x", q.x).add("y", q.y);
      res.rows.push_back({"dual-generator-residual", p.str(), r, 0.0, r, 1e-4, r <= 1e-4});
    }
  struct Ck { double s, t, x, y; };
  const std::vector<Ck> ck_pts = {{0.3, 0.4, 1.0, 1.5}, {0.5, 0.5, 2.0, 0.7}};
  for (double a : alpha_grid(cfg, kAlphaGrid))
    for (const auto& q : ck_pts) {
      const auto sides = chapman_kolmogorov(a, q.s, q.t, q.x, q.y);
      const double r = sides.relative();
      Params p;
      p.add("alpha", a).add("s", q.s).add("t", q.t).add("x", q.x).add("y", q.y);
      res.rows.push_back({"chapman-kolmogorov", p.str(), sides.lhs, sides.rhs, r, 1e-8, r <= 1e-8});
    }
  return res;
}

ExperimentResult run_dual_kernel_checks(const ExperimentConfig& cfg) {
  ExperimentResult res{"dual-check", {}};
  const double tol = cfg.tol.value_or(1e-5);
  struct Sq { double t, x, y; };
  const std::vector<Sq> sq = {{0.5, 2.0, 1.0}, {1.0, 1.0, 2.0}, {0.25, 3.0, 0.5}};
  for (double a : alpha_grid(cfg, {-0.25, -0.5, -0.75, -1.5}))
    for (const auto& q : sq) {
      if (a >= 0.0) throw UnsupportedError("the square dual identity needs alpha < 0");
      const auto s = dual_square_identity(a, q.t, q.x, q.y);
      const double r = s.relative();
      Params p;
      p.add("alpha", a).add("t", q.t).add("x", q.x).add("y", q.y);
      res.rows.push_back({"dual-square", p.str(), s.lhs, s.rhs, r, tol, r <= tol});
    }
  struct Co { double t, x1, x2, y; };
  const std::vector<Co> co = {{0.5, 1.0, 3.0, 2.0}, {1.0, 0.5, 2.0, 1.0}, {0.25, 2.0, 4.0, 3.0}};
  for (double a : alpha_grid(cfg, kAlphaGrid))
    for (const auto& q : co) {
      const auto s = dual_corner_identity(a, q.t, q.x1, q.x2, q.y);
      const double r = s.relative();
      Params p;
      p.add("alpha", a).add("t", q.t).add("x1", q.x1).add("x2", q.x2).add("y", q.y);
      res.rows.push_back({"dual-corner", p.str(), s.lhs, s.rhs, r, tol, r <= tol});
    }
  return res;
}

ExperimentResult run_dual_check(const ExperimentConfig& cfg) {
  auto res = run_htransform_checks(cfg);
  res.append(run_dual_kernel_checks(cfg));
  return res;
}

ExperimentResult run_feller_decay(const ExperimentConfig& cfg) {
  ExperimentResult res{"feller-decay", {}};
  const double a = cfg.alpha.value_or(0.0);
  const auto opts = quadrature(cfg, {2, 20});
  const KernelSpec k{KernelKind::alpha_square, a};
  const auto f = [](std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v;
    return std::exp(-s);
  };
  double prev = HUGE_VAL;
  for (double s : {10.0, 20.0, 40.0, 80.0}) {
    const ChamberPoint z{1.0, 2.0, s};
    const double v = apply_kernel_quadrature(k, z, f, opts);
    Params p;
    p.add("alpha", a).add("z", z);
    res.rows.push_back({"strictly-decreasing", p.str(), v, prev, v - prev, 0.0, v < prev});
    prev = v;
  }
  res.rows.push_back({"small-at-s=80", "alpha=" + fmt(a), prev, 0.0, prev, 1e-3, prev < 1e-3});
  return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

/// Runs Bonferroni over all p-value rows collected in `reports` and stores them.
void finish_family(ExperimentResult& res, std::vector<ComparisonReport>& reports,
                   const std::vector<std::string>& params) {
  bonferroni(reports, kFamilyLevel);
  for (std::size_t i = 0; i < reports.size(); ++i) res.add_reports({reports[i]}, params[i]);
}

struct Family {
  std::vector<ComparisonReport> reports;
  std::vector<std::string> params;
  void add(std::vector<ComparisonReport> rs, const std::string& p) {
    for (auto& r : rs) {
      reports.push_back(std::move(r));
      params.push_back(p);
    }
  }
};

bool support_ok(const ChamberPoint& y, const ChamberPoint& x, double tol) {
  // Outer window with a zero lower bound for the first coordinate.
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double lo = k == 0 ? 0.0 : x[k - 1];
    if (y[k] < lo - tol || y[k] > x[k + 1] + tol) return false;
  }
  return true;
}

ChamberPoint truncated_radial(const ChamberPoint& x, int alpha, RngStream& rng) {
  const int n = static_cast<int>(x.size()) - 1;
  const ComplexMatrix m = sample_invariant_rectangular(x, alpha, rng);
  return radial_part(truncate(m, n + alpha, n));
}

}  // namespace

ExperimentResult run_truncation(const ExperimentConfig& cfg) {
  require_samples(cfg);
  ExperimentResult res{"truncation", {}};
  std::vector<std::pair<std::size_t, int>> pairs;
  if (cfg.n || cfg.alpha) {
    const std::size_t n = dims(cfg, {2}, 3).front();
    pairs.push_back({n, integer_alpha(cfg.alpha.value_or(1.0))});
  } else {
    pairs = {{1, 0}, {2, 1}, {2, 2}};
  }
  Family fam;
  std::uint64_t stream = 1'000'000;
  const std::size_t ns = cfg.n_samples;
  for (auto [n, a] : pairs) {
    const ChamberPoint x = anchor(cfg, n + 1);
    const auto matrix = draw_many(ns, cfg.seed, stream, [&](RngStream& r) { return truncated_radial(x, a, r); });
    stream += 1'000'000;
    const auto kernel = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
      return sample_alpha_corner(static_cast<double>(a), x, r);
    });
    stream += 1'000'000;
    Params p;
    p.add("N", static_cast<double>(n)).add("alpha", a).add("x", x).add("n", static_cast<double>(ns));
    fam.add(compare_draws(matrix, kernel, "fixed-anchor"), p.str());

    const std::size_t inside = static_cast<std::size_t>(std::count_if(
        matrix.begin(), matrix.end(), [&](const ChamberPoint& y) { return support_ok(y, x, 1e-9); }));
    res.rows.push_back({"support", p.str(), static_cast<double>(inside), static_cast<double>(ns),
                        static_cast<double>(ns - inside), 0.0, inside == ns});

    if (n == 1 && a == 0) {
      // Closed-form CDF of the alpha = 0 one-particle kernel.
      const double x1 = x[0], x2 = x[1];
      auto cdf = [x1, x2](double y) {
        if (y <= 0.0) return 0.0;
        if (y <= x1) return y * std::log(x2 / x1) / (x2 - x1);
        if (y >= x2) return 1.0;
        return (y * std::log(x2 / y) + y - x1) / (x2 - x1);
      };
      auto r = ks_one_sample(marginal(matrix, 0, "matrix"), cdf);
      r.test = "closed-form:y1";
      fam.add({r}, p.str());
    }

    // Random anchors drawn from the ensemble of dimension N+1.
    const auto mixed_matrix = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
      const ChamberPoint xr = sample_wishart_radial(static_cast<int>(n + 1), a, r);
      return truncated_radial(xr, a, r);
    });
    stream += 1'000'000;
    const auto mixed_kernel = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
      const ChamberPoint xr = sample_wishart_radial(static_cast<int>(n + 1), a, r);
      return sample_alpha_corner(static_cast<double>(a), xr, r);
    });
    stream += 1'000'000;
    const auto ensemble = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
      return sample_wishart_radial(static_cast<int>(n), a, r);
    });
    stream += 1'000'000;
    Params pm;
    pm.add("N", static_cast<double>(n)).add("alpha", a).add("x", "ensemble").add("n", static_cast<double>(ns));
    fam.add(compare_draws(mixed_matrix, mixed_kernel, "mixed-anchor"), pm.str());
    fam.add(compare_draws(mixed_matrix, ensemble, "mixed-vs-ensemble"), pm.str());
  }

  // Tied anchor: truncations still interlace below the common value.
  {
    const std::size_t n = pairs.front().first;
    const int a = pairs.front().second;
    const ChamberPoint tied(std::vector<double>(n + 1, 2.0), true);
    const auto draws = draw_many(1000, cfg.seed, stream, [&](RngStream& r) { return truncated_radial(tied, a, r); });
    const std::size_t inside = static_cast<std::size_t>(std::count_if(
        draws.begin(), draws.end(), [&](const ChamberPoint& y) { return support_ok(y, tied, 1e-9); }));
    Params p;
    p.add("N", static_cast<double>(n)).add("alpha", a).add("x", tied);
    res.rows.push_back({"support-tied", p.str(), static_cast<double>(inside), 1000.0,
                        static_cast<double>(1000 - inside), 0.0, inside == 1000});
  }
  finish_family(res, fam.reports, fam.params);
  return res;
}

ExperimentResult run_invariance(const ExperimentConfig& cfg) {
  require_samples(cfg);
  ExperimentResult res{"invariance", {}};
  std::vector<std::pair<std::size_t, double>> cases;
  if (cfg.n || cfg.alpha) {
    cases.push_back({dims(cfg, {2}, 3).front(), cfg.alpha.value_or(1.0)});
  } else {
    cases = {{2, 1.0}, {2, 0.5}, {1, 0.0}};
  }
  Family fam;
  std::uint64_t stream = 50'000'000;
  const std::size_t ns = cfg.n_samples;
  for (auto [n, a] : cases) {
    if (!(a > -1.0)) throw ConfigError("alpha must exceed -1");
    Params p;
    p.add("N", static_cast<double>(n)).add("alpha", a).add("n", static_cast<double>(ns));
    const int ni = static_cast<int>(n);
    const auto pushed = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
      return sample_alpha_corner(a, sample_laguerre_ensemble(ni + 1, a, r), r);
    });
    stream += 1'000'000;
    const auto target = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
      return sample_laguerre_ensemble(ni, a, r);
    });
    stream += 1'000'000;
    fam.add(compare_draws(pushed, target, "bidiagonal"), p.str());

    if (a >= 0.0 && a == std::floor(a)) {
      const int ai = static_cast<int>(a);
      const auto pushed_w = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
        return sample_alpha_corner(a, sample_wishart_radial(ni + 1, ai, r), r);
      });
      stream += 1'000'000;
      const auto target_w = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
        return sample_wishart_radial(ni, ai, r);
      });
      stream += 1'000'000;
      fam.add(compare_draws(pushed_w, target_w, "wishart"), p.str());
    }
    if (n == 1) {
      // One-particle ensemble is Gamma(alpha + 1, 1); exact CDF for alpha = 0.
      if (a == 0.0) {
        auto r = ks_one_sample(marginal(pushed, 0, "pushed"), [](double y) { return -std::expm1(-y); });
        r.test = "exp1:y1";
        fam.add({r}, p.str());
      }
    }
  }
  finish_family(res, fam.reports, fam.params);
  return res;
}

ExperimentResult run_sde_vs_exact(const ExperimentConfig& cfg) {
  require_samples(cfg);
  ExperimentResult res{"sde-vs-exact", {}};
  Family fam;
  std::uint64_t stream = 100'000'000;
  const std::size_t ns = cfg.n_samples;
  const auto ns_list = dims(cfg, {1, 2}, 3);
  for (std::size_t n : ns_list) {
    if (n == 1) {
      const double a = cfg.alpha.value_or(0.0);
      const double t = cfg.t.value_or(1.0);
      const double x0 = cfg.x ? anchor(cfg, 1)[0] : 1.0;
      const double dt = cfg.dt.value_or(1e-3);
      const auto exact = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
        return ChamberPoint{transition_sample(a, t, x0, r)};
      });
      stream += 1'000'000;
      double coarse_stat = 0.0;
      for (double factor : {4.0, 2.0, 1.0}) {
        const SdeConfig sc{dt * factor, SdeScheme::euler_reordered, 1e-12};
        const auto sde = draw_many(ns, cfg.seed, stream, [&](RngStream& r) {
          return simulate_sde(a, ChamberPoint{x0}, t, sc, r);
        });
        stream += 1'000'000;
        auto rep = ks_two_sample(marginal(sde, 0, "sde"), marginal(exact, 0, "exact"));
        Params p;
        p.add("N", 1.0).add("alpha", a).add("t", t).add("x0", x0).add("dt", sc.dt)
            .add("n", static_cast<double>(ns));
        if (factor == 4.0) coarse_stat = rep.statistic;
        if (factor == 1.0) {
          rep.test = "sde-vs-transition:y1";
          fam.add({rep}, p.str());
          // Refining the step should not make the fit worse beyond sampling noise.
          const double band = 1.63 * std::sqrt(2.0 / static_cast<double>(ns));
          res.rows.push_back({"dt-trend", p.str(), rep.statistic, coarse_stat, rep.statistic - coarse_stat,
                              band, rep.statistic <= coarse_stat + band});
        } else {
          res.rows.push_back({"ks-at-dt", p.str(), rep.p_value, 0.0, rep.statistic, 0.0, true});
        }
      }
    } else {
      const double a = cfg.alpha.value_or(1.0);
      const int ai = integer_alpha(a);
      const double t = cfg.t.value_or(0.5);
      const ChamberPoint x0 = cfg.x ? anchor(cfg, n) : (n == 2 ? ChamberPoint{1.0, 3.0} : anchor(cfg, n));
      const double dt = cfg.dt.value_or(1e-4);
      const std::size_t nm = std::min<std::size_t>(ns, 10000);
      const auto exact = draw_many(nm, cfg.seed, stream, [&](RngStream& r) { return simulate_matrix_ou(ai, x0, t, r); });
      stream += 1'000'000;
      const SdeConfig sc{dt, SdeScheme::euler_reordered, 1e-12};
      const auto sde = draw_many(nm, cfg.seed, stream, [&](RngStream& r) { return simulate_sde(a, x0, t, sc, r); });
      stream += 1'000'000;
      Params p;
      p.add("N", static_cast<double>(n)).add("alpha", a).add("t", t).add("x0", x0).add("dt", dt)
          .add("n", static_cast<double>(nm));
      fam.add(compare_draws(sde, exact, "sde-vs-matrix-ou"), p.str());
    }
  }
  finish_family(res, fam.reports, fam.params);
  return res;
}

ExperimentResult run_exact_samplers(const ExperimentConfig& cfg) {
  ExperimentResult res{"exact-samplers", {}};
  Family fam;
  std::uint64_t stream = 200'000'000;
  struct Setting { double alpha, t, x; };
  for (const Setting& s : {Setting{0.0, 1.0, 1.0}, Setting{-0.5, 0.5, 2.0}, Setting{2.5, 0.25, 3.0}}) {
    const auto draws = draw_many(100000, cfg.seed, stream, [&](RngStream& r) {
      return ChamberPoint{transition_sample(s.alpha, s.t, s.x, r)};
    });
    stream += 1'000'000;
    auto rep = ks_against_transition(marginal(draws, 0, "transition"), s.alpha, s.t, s.x);
    rep.test = "transition-sample";
    Params p;
    p.add("alpha", s.alpha).add("t", s.t).add("x", s.x).add("n", 1e5);
    fam.add({rep}, p.str());
  }
  for (const Setting& s : {Setting{0.0, 1.0, 1.0}, Setting{2.0, 0.5, 2.0}}) {
    const auto draws = draw_many(100000, cfg.seed, stream, [&](RngStream& r) {
      return simulate_matrix_ou(static_cast<int>(s.alpha), ChamberPoint{s.x}, s.t, r);
    });
    stream += 1'000'000;
    auto rep = ks_against_transition(marginal(draws, 0, "matrix-ou"), s.alpha, s.t, s.x);
    rep.test = "matrix-ou";
    Params p;
    p.add("alpha", s.alpha).add("t", s.t).add("x", s.x).add("n", 1e5);
    fam.add({rep}, p.str());
  }
  {
    const Setting s{0.0, 1.0, 1.0};
    const SdeConfig sc{1e-3, SdeScheme::euler_reordered, 1e-12};
    const auto draws = draw_many(20000, cfg.seed, stream, [&](RngStream& r) {
      return simulate_sde(s.alpha, ChamberPoint{s.x}, s.t, sc, r);
    });
    stream += 1'000'000;
    auto rep = ks_against_transition(marginal(draws, 0, "sde"), s.alpha, s.t, s.x);
    rep.test = "sde";
    Params p;
    p.add("alpha", s.alpha).add("t", s.t).add("x", s.x).add("dt", 1e-3).add("n", 2e4);
    fam.add({rep}, p.str());
  }
  // Each setting is judged on its own at level 0.01.
  for (std::size_t i = 0; i < fam.reports.size(); ++i) res.add_reports({fam.reports[i]}, fam.params[i]);
  return res;
}

ExperimentResult run_sampler_crosscheck(const ExperimentConfig& cfg) {
  require_samples(cfg);
  ExperimentResult res{"sampler-crosscheck", {}};
  Family fam;
  const std::size_t ns = cfg.n_samples;
  std::uint64_t stream = 300'000'000;
  {
    const ChamberPoint x{1.0, 2.0, 4.0};
    const auto a = draw_many(ns, cfg.seed, stream, [&](RngStream& r) { return sample_corner(x, r); });
    stream += 1'000'000;
    const auto b = draw_many(ns, cfg.seed, stream, [&](RngStream& r) { return sample_corner_rejection(x, r); });
    stream += 1'000'000;
    Params p;
    p.add("N", 2.0).add("x", x).add("n", static_cast<double>(ns));
    fam.add(compare_draws(a, b, "corner-matrix-vs-rejection"), p.str());
  }
  {
    const ChamberPoint z{1.0, 2.0};
    const auto a = draw_many(ns, cfg.seed, stream, [&](RngStream& r) { return sample_alpha_square(1.0, z, r); });
    stream += 1'000'000;
    const auto b = draw_many(ns, cfg.seed, stream, [&](RngStream& r) { return sample_corner_alpha_matrix(1, z, r); });
    stream += 1'000'000;
    Params p;
    p.add("N", 2.0).add("alpha", 1.0).add("z", z).add("n", static_cast<double>(ns));
    fam.add(compare_draws(a, b, "alpha-square-vs-matrix"), p.str());
  }
  finish_family(res, fam.reports, fam.params);
  return res;
}

ExperimentResult run_calibration(const ExperimentConfig& cfg) {
  ExperimentResult res{"calibration", {}};
  constexpr int kReplications = 200;
  constexpr std::size_t kSize = 10000;
  int rejected_two = 0;
  int rejected_one = 0;
  for (int rep = 0; rep < kReplications; ++rep) {
    RngStream rng(cfg.seed, 400'000'000ULL + static_cast<std::uint64_t>(rep));
    std::vector<double> a(kSize), b(kSize);
    for (auto& v : a) v = rng.uniform();
    for (auto& v : b) v = rng.uniform();
    if (!ks_two_sample(EmpiricalSample(a), EmpiricalSample(b), 0.01).pass) ++rejected_two;
    if (!ks_one_sample(EmpiricalSample(a), [](double u) { return u; }, 0.01).pass) ++rejected_one;
  }
  for (auto [name, count] : {std::pair{"ks-two-sample-null-rate", rejected_two},
                             std::pair{"ks-one-sample-null-rate", rejected_one}}) {
    const double rate = static_cast<double>(count) / kReplications;
    res.rows.push_back({name, "level=0.01;replications=200;n=10000", rate, 0.01, rate, 0.03,
                        rate >= 0.002 && rate <= 0.03});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sampling

void run_sample(const ExperimentConfig& cfg) {
  const std::string& name = cfg.sampler;
  const std::size_t n = cfg.n ? static_cast<std::size_t>(*cfg.n) : 2;
  if (cfg.n && *cfg.n < 1) throw ConfigError("N must be positive");
  const double a = cfg.alpha.value_or(1.0);
  const double t = cfg.t.value_or(1.0);
  ChamberSampler sampler;
  ChamberPoint x;
  if (name == "corner" || name == "corner-rejection" || name == "alpha-corner") {
    x = anchor(cfg, n + 1);
    if (name == "corner") sampler = [&](RngStream& r) { return sample_corner(x, r); };
    else if (name == "corner-rejection") sampler = [&](RngStream& r) { return sample_corner_rejection(x, r); };
    else sampler = [&](RngStream& r) { return sample_alpha_corner(a, x, r); };
    if (name == "alpha-corner" && !(a > -1.0)) throw ConfigError("alpha must exceed -1");
  } else if (name == "alpha-square" || name == "corner-alpha-matrix") {
    x = anchor(cfg, n);
    if (name == "alpha-square") {
      if (!(a > -1.0)) throw ConfigError("alpha must exceed -1");
      sampler = [&](RngStream& r) { return sample_alpha_square(a, x, r); };
    } else {
      const int ai = integer_alpha(a);
      sampler = [&, ai](RngStream& r) { return sample_corner_alpha_matrix(ai, x, r); };
    }
  } else if (name == "laguerre-ensemble") {
    if (!(a > -1.0)) throw ConfigError("alpha must exceed -1");
    sampler = [&](RngStream& r) { return sample_laguerre_ensemble(static_cast<int>(n), a, r); };
  } else if (name == "wishart-radial") {
    const int ai = integer_alpha(a);
    sampler = [&, ai](RngStream& r) { return sample_wishart_radial(static_cast<int>(n), ai, r); };
  } else if (name == "transition") {
    x = anchor(cfg, 1);
    if (!(a > -1.0) || !(t > 0.0)) throw ConfigError("transition needs alpha > -1 and t > 0");
    sampler = [&](RngStream& r) { return ChamberPoint{transition_sample(a, t, x[0], r)}; };
  } else if (name == "matrix-ou") {
    x = anchor(cfg, n);
    const int ai = integer_alpha(a);
    sampler = [&, ai](RngStream& r) { return simulate_matrix_ou(ai, x, t, r); };
  } else if (name == "sde") {
    x = anchor(cfg, n);
    if (!(a > -1.0)) throw ConfigError("alpha must exceed -1");
    const SdeConfig sc{cfg.dt.value_or(1e-3), SdeScheme::euler_reordered, 1e-12};
    sampler = [&, sc](RngStream& r) { return simulate_sde(a, x, t, sc, r); };
  } else {
    throw ConfigError("unknown sampler '" + name + "'");
  }
  if (cfg.n_samples < 1) throw ConfigError("n_samples must be positive");
  const auto draws = draw_many(cfg.n_samples, cfg.seed, 0, sampler);
  const std::size_t width = draws.front().size();

  CsvWriter csv(cfg.out_dir / "sample.csv");
  csv.comment("sampler=" + name);
  csv.comment("alpha=" + format_double(a));
  csv.comment("N=" + std::to_string(width));
  if (x.size()) csv.comment("anchor=" + format_list(x.vector()));
  if (name == "transition" || name == "matrix-ou" || name == "sde") csv.comment("t=" + format_double(t));
  if (name == "sde") csv.comment("dt=" + format_double(cfg.dt.value_or(1e-3)));
  csv.comment("n_samples=" + std::to_string(cfg.n_samples));
  csv.comment("seed=" + std::to_string(cfg.seed));
  std::vector<std::string> header;
  for (std::size_t k = 0; k < width; ++k) header.push_back("y" + std::to_string(k + 1));
  csv.row(header);
  std::vector<std::string> fields(width);
  for (const auto& d : draws) {
    for (std::size_t k = 0; k < width; ++k) fields[k] = format_double(d[k]);
    csv.row(fields);
  }
}

}  // namespace lagint::experiments
