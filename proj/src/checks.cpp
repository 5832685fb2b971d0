#include "cmap/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmap/curvature.hpp"
#include "cmap/twistor.hpp"

namespace cmap {
namespace {

struct Ctx {
  const Prepotential& P;
  const Config& cfg;
  SampleBox box;
};

// Independent stream per check, so toggling one check never shifts another.
Xoshiro256 rng_for(const Ctx& ctx, std::uint64_t salt) {
  return Xoshiro256(ctx.cfg.sweep.seed ^ (salt * 0x9e3779b97f4a7c15ULL));
}

CheckResult fail_with(std::string name, const Error& e) {
  CheckResult r;
  r.name = std::move(name);
  r.status = "fail";
  r.details["error"] = e.what();
  return r;
}

CheckResult check_homogeneity(const Ctx& ctx) {
  CheckResult r{"homogeneity", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 1);
  double worst = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.points; ++k) {
    auto [v, G] = sample_section(ctx.P, ctx.box, rng);
    std::span<const Complex> X(v.data(), v.size());
    auto [r1, r2] = homogeneity_residual(ctx.P, X);
    double scale = 1.0 + std::abs(ctx.P.eval(X));
    worst = std::max(worst, std::max(r1, r2) / scale);
  }
  r.details["max_residual"] = worst;
  r.details["tolerance"] = ctx.cfg.tol.homogeneity;
  r.details["points"] = ctx.cfg.sweep.points;
  if (worst > ctx.cfg.tol.homogeneity) r.status = "fail";
  return r;
}

CheckResult check_domain(const Ctx& ctx) {
  CheckResult r{"domain", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 2);
  const int n = ctx.P.n();
  int accepted = 0, violations = 0;
  for (int k = 0; k < ctx.cfg.sweep.points; ++k) {
    ProjectivePoint Z;
    Z.Z.resize(n);
    for (int a = 0; a < n; ++a)
      Z.Z(a) = Complex(rng.uniform(ctx.box.re_lo(a), ctx.box.re_hi(a)),
                       rng.uniform(ctx.box.im_lo(a), ctx.box.im_hi(a)));
    DomainReport rep = domain_check(ctx.P, Z);
    if (rep.all()) ++accepted;
    // the paper-level implication: positivity + negative Kähler block
    // forces 𝒩 + 𝒩̄ negative definite
    if (rep.positivity && rep.kahler_block_negdef && !rep.curlyN_sum_negdef)
      ++violations;
  }
  r.details["sampled"] = ctx.cfg.sweep.points;
  r.details["accepted"] = accepted;
  r.details["implication_violations"] = violations;
  if (violations > 0 || accepted == 0) r.status = "fail";
  return r;
}

CheckResult check_fs_metric(const Ctx& ctx) {
  CheckResult r{"fs_metric", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 3);
  double min_eig = std::numeric_limits<double>::infinity();
  double max_asym = 0.0;
  bool sigma_exact = true;
  for (int k = 0; k < ctx.cfg.sweep.points; ++k) {
    FSPoint pt = sample_fs(ctx.P, ctx.box, rng);
    RealSymMatrix g = fs_metric(ctx.P, pt);
    max_asym = std::max(max_asym, g.asymmetry());
    min_eig = std::min(min_eig, g.eigenvalues()(0));
    if (g.m(1, 1) != std::exp(-2.0 * pt.phi)) sigma_exact = false;
  }
  r.details["points"] = ctx.cfg.sweep.points;
  r.details["min_eigenvalue"] = min_eig;
  r.details["max_asymmetry"] = max_asym;
  r.details["sigma_coefficient_exact"] = sigma_exact;
  if (!(min_eig > 0.0) || max_asym != 0.0 || !sigma_exact) r.status = "fail";
  return r;
}

CheckResult check_isometries(const Ctx& ctx) {
  CheckResult r{"isometries", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 4);
  const int m = ctx.P.size();
  const int npts = std::min(ctx.cfg.sweep.points, 5);
  std::vector<FSPoint> pts;
  for (int k = 0; k < npts; ++k) pts.push_back(sample_fs(ctx.P, ctx.box, rng));

  double worst = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.group_elements; ++k) {
    GActionParams g = sample_group_element(rng, m);
    worst = std::max(worst,
                     isometry_residual(ctx.P, pts[k % pts.size()], g));
  }
  double comp_worst = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.group_elements; ++k) {
    GActionParams g1 = sample_group_element(rng, m);
    GActionParams g2 = sample_group_element(rng, m);
    FSPoint a = g_action(g_action(pts[k % pts.size()], g1), g2);
    FSPoint b = g_action(pts[k % pts.size()], compose(g1, g2));
    double d = std::abs(a.phi - b.phi);
    d = std::max(d, std::abs(a.sigma - b.sigma));
    d = std::max(d, (a.A - b.A).lpNorm<Eigen::Infinity>());
    d = std::max(d, (a.B - b.B).lpNorm<Eigen::Infinity>());
    comp_worst = std::max(comp_worst, d);
  }
  r.details["group_elements"] = ctx.cfg.sweep.group_elements;
  r.details["max_pullback_residual"] = worst;
  r.details["isometry_tolerance"] = ctx.cfg.tol.isometry;
  r.details["max_composition_residual"] = comp_worst;
  r.details["composition_tolerance"] = ctx.cfg.tol.composition;
  if (worst > ctx.cfg.tol.isometry || comp_worst > ctx.cfg.tol.composition)
    r.status = "fail";
  return r;
}

CheckResult check_contour(const Ctx& ctx) {
  CheckResult r{"contour_vs_closed", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 5);
  double worst = 0.0;
  double plateau = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.section_points; ++k) {
    auto [v, G] = sample_section(ctx.P, ctx.box, rng);
    std::span<const Complex> vs(v.data(), v.size());
    double closed = calL_closed(ctx.P, vs, G);
    double contour = calL_contour(ctx.P, vs, G);
    worst = std::max(worst,
                     std::abs(contour - closed) / (1.0 + std::abs(closed)));
    if (k == 0) {
      QuadratureConfig dense;
      dense.samples = 512;
      plateau = std::abs(calL_contour(ctx.P, vs, G, dense) - contour);
    }
  }
  r.details["points"] = ctx.cfg.sweep.section_points;
  r.details["max_scaled_difference"] = worst;
  r.details["tolerance"] = ctx.cfg.tol.contour_vs_closed;
  r.details["plateau_256_vs_512"] = plateau;
  r.details["plateau_tolerance"] = ctx.cfg.tol.contour_plateau;
  if (worst > ctx.cfg.tol.contour_vs_closed ||
      plateau > ctx.cfg.tol.contour_plateau)
    r.status = "fail";
  return r;
}

CheckResult check_chi(const Ctx& ctx) {
  CheckResult r{"chi_three_way", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 6);
  double worst = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.section_points; ++k) {
    HKCPoint pt = sample_hkc(ctx.P, ctx.box, rng);
    ChiRoutes routes = hk_potential_routes(ctx.P, pt);
    double ref = 1.0 + std::abs(routes.explicit_formula);
    worst = std::max(
        worst,
        std::max(std::abs(routes.explicit_formula - routes.k_over_g0),
                 std::abs(routes.explicit_formula - routes.k_at_scaled)) /
            ref);
  }
  r.details["points"] = ctx.cfg.sweep.section_points;
  r.details["max_relative_deviation"] = worst;
  r.details["tolerance"] = ctx.cfg.tol.chi_three_way;
  if (worst > ctx.cfg.tol.chi_three_way) r.status = "fail";
  return r;
}

CheckResult check_scaling(const Ctx& ctx) {
  CheckResult r{"scaling", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 7);
  const double lambdas[] = {0.5, 2.0, 7.0};
  double worst = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.section_points; ++k) {
    auto [v, G] = sample_section(ctx.P, ctx.box, rng);
    std::span<const Complex> vs(v.data(), v.size());
    double L = calL_closed(ctx.P, vs, G);
    HKCPoint pt = sample_hkc(ctx.P, ctx.box, rng);
    double chi = hk_potential(ctx.P, pt);
    for (double lam : lambdas) {
      Eigen::VectorXcd vl = lam * v;
      Eigen::VectorXd Gl = lam * G;
      double Ll =
          calL_closed(ctx.P, std::span<const Complex>(vl.data(), vl.size()),
                      Gl);
      worst = std::max(worst,
                       std::abs(Ll - lam * L) / (1.0 + std::abs(lam * L)));
      HKCPoint ptl = pt;
      ptl.v = lam * pt.v;
      double chil = hk_potential(ctx.P, ptl);
      worst = std::max(
          worst, std::abs(chil - lam * chi) / (1.0 + std::abs(lam * chi)));
    }
  }
  r.details["points"] = ctx.cfg.sweep.section_points;
  r.details["lambdas"] = {0.5, 2.0, 7.0};
  r.details["max_relative_deviation"] = worst;
  r.details["tolerance"] = ctx.cfg.tol.scaling;
  if (worst > ctx.cfg.tol.scaling) r.status = "fail";
  return r;
}

CheckResult check_laplace(const Ctx& ctx) {
  CheckResult r{"laplace", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 8);
  double worst = 0.0;
  double max_index0 = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.section_points; ++k) {
    auto [v, G] = sample_section(ctx.P, ctx.box, rng);
    LaplaceReport rep = laplace_residual(
        ctx.P, std::span<const Complex>(v.data(), v.size()), G);
    worst = std::max(worst, rep.block.cwiseAbs().maxCoeff());
    max_index0 =
        std::max(max_index0, rep.index0.cwiseAbs().maxCoeff());
  }
  r.details["points"] = ctx.cfg.sweep.section_points;
  r.details["max_block_residual"] = worst;
  r.details["tolerance"] = ctx.cfg.tol.laplace;
  r.details["max_index0_component"] = max_index0;
  r.details["index0_nonzero"] = max_index0 > 1e-6;
  if (worst > ctx.cfg.tol.laplace || !(max_index0 > 1e-6)) r.status = "fail";
  return r;
}

CheckResult check_u1(const Ctx& ctx) {
  CheckResult r{"u1_invariance", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 9);
  double worst_l = 0.0, worst_flow = 0.0;
  bool shift_exact = true;
  for (int k = 0; k < ctx.cfg.sweep.section_points; ++k) {
    HKCPoint pt = sample_hkc(ctx.P, ctx.box, rng);
    U1Report rep = u1_invariance_residual(ctx.P, pt, 0.7);
    double chi = hk_potential(ctx.P, pt);
    worst_l = std::max(worst_l, rep.l_residual / (1.0 + std::abs(chi)));
    worst_flow =
        std::max(worst_flow, rep.flow_derivative / (1.0 + std::abs(chi)));

    HKCPoint shifted = pt;
    shifted.w0 += Complex(0, rng.uniform(-2.0, 2.0));
    for (int i = 0; i < shifted.w.size(); ++i)
      shifted.w(i) += Complex(0, rng.uniform(-2.0, 2.0));
    if (hk_potential(ctx.P, shifted) != chi) shift_exact = false;
  }
  r.details["points"] = ctx.cfg.sweep.section_points;
  r.details["max_l_residual"] = worst_l;
  r.details["max_flow_derivative"] = worst_flow;
  r.details["tolerance"] = ctx.cfg.tol.u1;
  r.details["imaginary_shift_exact"] = shift_exact;
  if (worst_l > ctx.cfg.tol.u1 || worst_flow > ctx.cfg.tol.u1 ||
      !shift_exact)
    r.status = "fail";
  return r;
}

CheckResult check_metric_comparison(const Ctx& ctx) {
  CheckResult r{"metric_comparison", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 10);
  double worst_dev = 0.0;
  double cmin = std::numeric_limits<double>::infinity();
  double cmax = -cmin;
  double csum = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.points; ++k) {
    FSPoint pt = sample_fs(ctx.P, ctx.box, rng);
    MetricComparison cmp = compare_metrics(ctx.P, pt);
    worst_dev = std::max(worst_dev, cmp.max_rel_dev);
    cmin = std::min(cmin, cmp.constant);
    cmax = std::max(cmax, cmp.constant);
    csum += cmp.constant;
  }
  double cmean = csum / ctx.cfg.sweep.points;
  double spread = (cmax - cmin) / std::max(1.0, std::abs(cmean));
  r.details["points"] = ctx.cfg.sweep.points;
  r.details["max_relative_deviation"] = worst_dev;
  r.details["deviation_tolerance"] = ctx.cfg.tol.metric_deviation;
  r.details["constant_mean"] = cmean;
  r.details["constant_spread"] = spread;
  r.details["spread_tolerance"] = ctx.cfg.tol.constant_spread;
  if (worst_dev > ctx.cfg.tol.metric_deviation ||
      spread > ctx.cfg.tol.constant_spread)
    r.status = "fail";
  return r;
}

Eigen::MatrixXd sphere_metric(const Eigen::VectorXd& x) {
  Eigen::MatrixXd g(2, 2);
  g << 1.0, 0.0, 0.0, std::sin(x(0)) * std::sin(x(0));
  return g;
}

Eigen::MatrixXd hyperbolic_metric(const Eigen::VectorXd& x) {
  double y2 = x(1) * x(1);
  Eigen::MatrixXd g(2, 2);
  g << 1.0 / y2, 0.0, 0.0, 1.0 / y2;
  return g;
}

FSPoint fs_from_vector(const Eigen::VectorXd& x, int n) {
  const int m = n + 1;
  FSPoint pt;
  pt.phi = x(0);
  pt.sigma = x(1);
  pt.A = x.segment(2, m);
  pt.B = x.segment(2 + m, m);
  pt.Z.Z.resize(n);
  for (int a = 0; a < n; ++a)
    pt.Z.Z(a) = Complex(x(2 + 2 * m + 2 * a), x(2 + 2 * m + 2 * a + 1));
  return pt;
}

Eigen::VectorXd fs_to_vector(const FSPoint& pt) {
  const int m = pt.n() + 1;
  Eigen::VectorXd x(pt.dim());
  x(0) = pt.phi;
  x(1) = pt.sigma;
  x.segment(2, m) = pt.A;
  x.segment(2 + m, m) = pt.B;
  for (int a = 0; a < pt.n(); ++a) {
    x(2 + 2 * m + 2 * a) = pt.Z.Z(a).real();
    x(2 + 2 * m + 2 * a + 1) = pt.Z.Z(a).imag();
  }
  return x;
}

CheckResult check_einstein(const Ctx& ctx) {
  CheckResult r{"einstein", "pass", {}};
  Xoshiro256 rng = rng_for(ctx, 11);

  // Constant-curvature oracles gate the finite-difference machinery.
  Eigen::VectorXd sp(2);
  sp << 1.1, 0.7;
  EinsteinResult sphere = einstein_residual(sphere_metric, sp);
  Eigen::VectorXd hp(2);
  hp << 0.3, 1.4;
  EinsteinResult hyper = einstein_residual(hyperbolic_metric, hp);
  double oracle_worst =
      std::max({sphere.residual, std::abs(sphere.lambda - 1.0),
                hyper.residual, std::abs(hyper.lambda + 1.0)});
  r.details["oracle_residual"] = oracle_worst;
  r.details["oracle_tolerance"] = ctx.cfg.tol.einstein_oracle;
  if (oracle_worst > ctx.cfg.tol.einstein_oracle) {
    r.status = "fail";
    return r;
  }

  const int n = ctx.P.n();
  MetricFn fn = [&](const Eigen::VectorXd& x) {
    return fs_metric(ctx.P, fs_from_vector(x, n)).m;
  };
  double lmin = std::numeric_limits<double>::infinity(), lmax = -lmin;
  double worst = 0.0;
  double refined = 0.0;
  for (int k = 0; k < ctx.cfg.sweep.einstein_points; ++k) {
    FSPoint pt = sample_fs(ctx.P, ctx.box, rng);
    Eigen::VectorXd x = fs_to_vector(pt);
    EinsteinResult res = einstein_residual(fn, x);
    worst = std::max(worst, res.residual);
    lmin = std::min(lmin, res.lambda);
    lmax = std::max(lmax, res.lambda);
    if (k == 0)
      refined = einstein_residual(fn, x, kCurvatureStep / 2).residual;
  }
  r.details["points"] = ctx.cfg.sweep.einstein_points;
  r.details["max_residual"] = worst;
  r.details["tolerance"] = ctx.cfg.tol.einstein;
  r.details["lambda_min"] = lmin;
  r.details["lambda_max"] = lmax;
  r.details["lambda_spread"] = lmax - lmin;
  r.details["residual_at_half_step"] = refined;
  if (worst > ctx.cfg.tol.einstein ||
      (lmax - lmin) > ctx.cfg.tol.einstein)
    r.status = "fail";
  return r;
}

}  // namespace

std::vector<CheckResult> run_check_suite(const Config& cfg) {
  std::unique_ptr<Prepotential> P = make_prepotential(cfg.model);
  Ctx ctx{*P, cfg, cfg.sweep.box ? *cfg.sweep.box : default_box(*P)};

  using Fn = CheckResult (*)(const Ctx&);
  struct Entry {
    bool enabled;
    const char* name;
    Fn fn;
  };
  bool einstein_on =
      cfg.checks.einstein.value_or(4 * (cfg.model.n + 1) <= 8);
  const Entry entries[] = {
      {cfg.checks.homogeneity, "homogeneity", &check_homogeneity},
      {cfg.checks.domain, "domain", &check_domain},
      {cfg.checks.fs_metric, "fs_metric", &check_fs_metric},
      {cfg.checks.isometries, "isometries", &check_isometries},
      {cfg.checks.contour_vs_closed, "contour_vs_closed", &check_contour},
      {cfg.checks.chi_three_way, "chi_three_way", &check_chi},
      {cfg.checks.scaling, "scaling", &check_scaling},
      {cfg.checks.laplace, "laplace", &check_laplace},
      {cfg.checks.u1_invariance, "u1_invariance", &check_u1},
      {cfg.checks.metric_comparison, "metric_comparison",
       &check_metric_comparison},
      {einstein_on, "einstein", &check_einstein},
  };

  std::vector<CheckResult> results;
  bool gate_failed = false;
  for (const Entry& e : entries) {
    if (!e.enabled) continue;
    if (gate_failed) {
      results.push_back(
          {e.name, "skipped", Json{{"reason", "homogeneity gate failed"}}});
      continue;
    }
    CheckResult res;
    try {
      res = e.fn(ctx);
    } catch (const Error& err) {
      res = fail_with(e.name, err);
    }
    if (res.name == "homogeneity" && !res.passed()) gate_failed = true;
    results.push_back(std::move(res));
  }
  return results;
}

Json make_report(const Config& cfg, const std::vector<CheckResult>& results) {
  Json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["command"] = "check";
  rep["model"] = cfg.model.to_json();
  rep["seed"] = cfg.sweep.seed;
  rep["tolerances"] = cfg.tol.to_json();
  Json arr = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    Json j;
    j["name"] = r.name;
    j["status"] = r.status;
    j["details"] = r.details;
    arr.push_back(j);
    if (r.status == "pass") ++passed;
    if (r.status == "fail") ++failed;
    if (r.status == "skipped") ++skipped;
  }
  rep["checks"] = arr;
  rep["summary"] = Json{{"total", results.size()},
                        {"passed", passed},
                        {"failed", failed},
                        {"skipped", skipped}};
  return rep;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (r.status == "fail") return false;
  return true;
}

}  // namespace cmap
