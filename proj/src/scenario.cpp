#include "rhlab/scenario.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <thread>

#include "rhlab/catalog.hpp"
#include "rhlab/errors.hpp"
#include "rhlab/homogeneous.hpp"
#include "rhlab/ode.hpp"
#include "rhlab/sampling.hpp"

namespace rhlab {

namespace {

constexpr const char* kVersion = "0.1.0";

double tol_or(const Json& tolerances, const std::string& name,
              double fallback) {
  if (tolerances.is_object() && tolerances.contains(name))
    return tolerances.at(name).get<double>();
  return fallback;
}

Params params_from(const Json& j) {
  Params p;
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it)
      p[it.key()] = it.value().get<double>();
  return p;
}

RHInstance instance_from_catalog(const Json& inst) {
  if (inst.contains("entry")) {
    return catalog_entry(inst.at("entry").get<std::string>()).build();
  }
  RHInstance space = make_space(inst.at("space").get<std::string>(),
                                params_from(inst.value("params", Json())));
  if (inst.contains("solution")) {
    space.f = make_solution(inst.at("solution").get<std::string>(),
                            params_from(inst.value("solution_params", Json())),
                            space);
  }
  return space;
}

WarpedSpec warped_from(const Json& inst) {
  if (inst.contains("entry"))
    return warped_entry(inst.at("entry").get<std::string>());
  auto piece = [&](const char* key) {
    const Json& j = inst.at(key);
    return make_space(j.at("space").get<std::string>(),
                      params_from(j.value("params", Json())));
  };
  auto field = [&](const char* key, const RHInstance& on) {
    const Json& j = inst.at(key);
    return make_solution(j.at("solution").get<std::string>(),
                         params_from(j.value("params", Json())), on);
  };
  RHInstance base = piece("base");
  RHInstance fiber = piece("fiber");
  WarpedSpec spec;
  spec.base = base.metric;
  spec.fiber = fiber.metric;
  spec.warp = field("warp", base);
  spec.f1 = field("f1", base);
  spec.f2 = field("f2", fiber);
  const std::string tag = inst.value("case_tag", "product");
  spec.case_tag = tag == "a"   ? WarpedCase::A
                  : tag == "b" ? WarpedCase::B
                               : WarpedCase::Product;
  spec.label = inst.value("label", "warped");
  return spec;
}

ExtensionData extension_from(const Json& inst) {
  ExtensionData d;
  auto mat = [&](const char* key) {
    auto rows = inst.at(key).get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  };
  d.S_mat = mat("S");
  d.A_mat = mat("A");
  d.ric_N = mat("ric_N");
  auto v = inst.at("divS").get<std::vector<double>>();
  d.divS = Eigen::Map<Eigen::VectorXd>(v.data(), v.size());
  d.eps = inst.at("eps").get<int>();
  d.m = static_cast<int>(d.S_mat.rows());
  return d;
}

// ---- catalog-instance checks ----

using CheckFn = std::function<ResidualReport(
    const RHInstance&, const std::vector<Point>&, const Json& tolerances)>;

ResidualReport check_rh(const RHInstance& inst, const std::vector<Point>& pts,
                        const Json& tolerances, bool static_sign) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = static_sign ? "static_equation" : "rh_residual";
  r.records.resize(pts.size());
  par_map(static_cast<int>(pts.size()), [&](int i) {
    RhResidual res = static_sign ? static_residual(inst, pts[i])
                                 : rh_residual(inst, pts[i]);
    r.records[i].point = pts[i];
    r.records[i].residuals["raw"] = res.raw;
    r.records[i].residuals["normalized"] = res.normalized;
  });
  r.finalize();
  const double tol = tol_or(tolerances, r.check_name, 1e-8);
  r.verdict_from("normalized", tol);
  r.verdicts[r.check_name] = r.verdicts["normalized"];
  r.tolerances[r.check_name] = tol;
  return r;
}

ResidualReport check_mu(const RHInstance& inst, const std::vector<Point>& pts,
                        const Json& tolerances, const Json& expect) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "mu";
  MuConstancy mc = mu_constancy(inst, pts);
  r.mu_samples = mc.samples;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    PointRecord rec;
    rec.point = pts[i];
    rec.residuals["mu_deviation"] = std::abs(mc.samples[i] - mc.mean);
    r.records.push_back(rec);
  }
  r.stats["mu_mean"] = mc.mean;
  r.stats["mu_spread"] = mc.spread;
  r.finalize();
  const double tol = tol_or(tolerances, "mu_spread",
                            1e-7 * (1.0 + std::abs(mc.mean)));
  r.tolerances["mu_spread"] = tol;
  r.verdicts["mu_spread"] = mc.spread <= tol ? "pass" : "fail";
  if (expect.is_object() && expect.contains("mu")) {
    const double want = expect.at("mu").get<double>();
    const double tol_v = tol_or(tolerances, "mu_value", 1e-8);
    r.tolerances["mu_value"] = tol_v;
    r.stats["mu_expected"] = want;
    r.verdicts["mu_value"] =
        std::abs(mc.mean - want) <= tol_v ? "pass" : "fail";
  }
  return r;
}

ResidualReport check_identity_suite(const RHInstance& inst,
                                    const std::vector<Point>& pts,
                                    const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "identity_suite";
  int skipped = 0;
  for (const auto& p : pts) {
    try {
      PointRecord rec;
      rec.point = p;
      auto res = identity_suite(inst, p);
      rec.residuals = std::map<std::string, double>(res.begin(), res.end());
      r.records.push_back(rec);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PreconditionViolated) {
        ++skipped;
        continue;
      }
      throw;
    }
  }
  r.finalize();
  r.stats["points_skipped"] = skipped;
  const double tol = tol_or(tolerances, "identity_suite", 1e-7);
  if (r.records.empty()) {
    r.verdicts["identity_suite"] = "skipped";
    r.tolerances["identity_suite"] = tol;
    return r;
  }
  for (const char* name :
       {"grad_identity", "trace_law", "norm_identity", "curvature_exchange"})
    r.verdict_from(name, tol);
  std::string overall = "pass";
  for (const auto& [k, v] : r.verdicts)
    if (v == "fail") overall = "fail";
  r.verdicts["identity_suite"] = overall;
  r.tolerances["identity_suite"] = tol;
  return r;
}

ResidualReport check_conformal(const RHInstance& inst,
                               const std::vector<Point>& pts,
                               const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "conformal_check";
  MuConstancy mc = mu_constancy(inst, pts);
  r.stats["mu_mean"] = mc.mean;
  r.records.resize(pts.size());
  par_map(static_cast<int>(pts.size()), [&](int i) {
    ConformalCheck c = conformal_check(inst.metric, inst.f, mc.mean, pts[i]);
    r.records[i].point = pts[i];
    r.records[i].residuals["einstein"] = c.einstein_residual;
    r.records[i].residuals["laplace"] = c.laplace_residual;
  });
  r.finalize();
  r.verdict_from("einstein", tol_or(tolerances, "conformal_einstein", 1e-6));
  r.verdict_from("laplace", tol_or(tolerances, "conformal_laplace", 1e-6));
  return r;
}

ResidualReport check_level_set(const RHInstance& inst,
                               const std::vector<Point>& /*pts*/,
                               const Json& tolerances, int probes,
                               std::uint64_t seed) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "level_set";
  std::vector<Point> band;
  try {
    band = sample_level_band(inst, 0.0, 0.05, probes, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DomainExhausted) {
      r.verdicts["level_set"] = "skipped";
      r.stats["points_skipped"] = probes;
      return r;
    }
    throw;
  }
  for (const auto& p : band) {
    try {
      LevelSetProbe probe = level_set_probe(inst, p);
      PointRecord rec;
      rec.point = p;
      rec.residuals["weingarten"] = probe.weingarten_norm;
      rec.residuals["scal_n"] = std::abs(probe.scal_n);
      rec.residuals["ric_n"] = probe.ric_n_residual;
      r.records.push_back(rec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CriticalPoint) throw;
    }
  }
  r.finalize();
  r.verdict_from("weingarten", tol_or(tolerances, "weingarten", 1e-6));
  r.verdict_from("scal_n", tol_or(tolerances, "scal_n", 1e-6));
  r.verdict_from("ric_n", tol_or(tolerances, "ric_n", 1e-6));
  return r;
}

ResidualReport check_spectrum(const RHInstance& inst,
                              const std::vector<Point>& pts,
                              const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "ricci_spectrum";
  ScalarCurvatureStats st = scalar_stats(inst.metric, pts);
  r.stats["scal_mean"] = st.mean;
  r.stats["scal_spread"] = st.spread;
  if (st.spread > 1e-8)
    throw Error(ErrorCode::NonconstantScalar,
                "scalar curvature not constant over samples");
  const int eps = st.mean > 0 ? 1 : -1;
  r.stats["eps"] = eps;
  if (std::abs(st.mean - 2.0 * eps) > 1e-6)
    throw Error(ErrorCode::NonconstantScalar, "S != 2*eps; rescale the metric");
  const double tol = tol_or(tolerances, "ricci_spectrum", 1e-6);
  const int n = inst.metric.dim;
  for (const auto& p : pts) {
    try {
      RicciSpectrum spec = ricci_spectrum_check(inst, p, eps, tol);
      PointRecord rec;
      rec.point = p;
      double worst = 0.0;
      std::vector<double> expected(n, 0.0);
      expected[0] = expected[1] = eps;
      std::sort(expected.begin(), expected.end(), std::greater<double>());
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(spec.eigenvalues[i] - expected[i]));
      rec.residuals["eigenvalue"] = worst;
      if (n > 2) rec.residuals["ric_t_norm"] = std::abs(spec.ric_t_norm2 - 1.0);
      r.records.push_back(rec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CriticalPoint) throw;
    }
  }
  r.finalize();
  r.verdict_from("eigenvalue", tol);
  if (n > 2) r.verdict_from("ric_t_norm", tol);
  return r;
}

ResidualReport check_codazzi(const RHInstance& inst,
                             const std::vector<Point>& pts,
                             const Json& tolerances, int eps, int s_max) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "codazzi_traces";
  r.stats["eps"] = eps;
  r.stats["s_max"] = s_max;
  r.records.resize(pts.size());
  par_map(static_cast<int>(pts.size()), [&](int i) {
    CodazziTraces ct = codazzi_and_traces(inst.metric, pts[i], s_max, eps);
    r.records[i].point = pts[i];
    r.records[i].residuals["codazzi"] = ct.codazzi_residual;
    for (int s = 1; s <= s_max; ++s) {
      r.records[i].residuals["trace_s" + std::to_string(s)] =
          ct.trace_residuals[s - 1];
      r.records[i].residuals["div_s" + std::to_string(s)] =
          ct.divergence_norms[s - 1];
    }
  });
  r.finalize();
  r.verdict_from("codazzi", tol_or(tolerances, "codazzi", 1e-7));
  const double tol = tol_or(tolerances, "traces", 1e-7);
  for (int s = 1; s <= s_max; ++s) {
    r.verdict_from("trace_s" + std::to_string(s), tol);
    r.verdict_from("div_s" + std::to_string(s), tol);
  }
  return r;
}

ResidualReport check_kahler(const RHInstance& inst,
                            const std::vector<Point>& pts,
                            const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "kahler";
  r.records.resize(pts.size());
  par_map(static_cast<int>(pts.size()), [&](int i) {
    r.records[i].point = pts[i];
    r.records[i].residuals["commutator"] = kahler_j_check(inst, pts[i]);
  });
  r.finalize();
  r.verdict_from("commutator", tol_or(tolerances, "kahler", 1e-8));
  return r;
}

ResidualReport check_curvature_invariants(const RHInstance& inst,
                                          const std::vector<Point>& pts,
                                          const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.label;
  r.check_name = "curvature_invariants";
  const int n = inst.metric.dim;
  r.records.resize(pts.size());
  par_map(static_cast<int>(pts.size()), [&](int i) {
    CurvaturePack cp = curvature_pack(inst.metric, pts[i]);
    double scale = 1.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            scale = std::max(scale, std::abs(riemann_lowered(cp, a, b, c, d)));
    double sym = 0.0, bianchi = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const double rr = riemann_lowered(cp, a, b, c, d);
            sym = std::max(sym,
                           std::abs(rr + riemann_lowered(cp, b, a, c, d)));
            sym = std::max(sym,
                           std::abs(rr + riemann_lowered(cp, a, b, d, c)));
            bianchi = std::max(
                bianchi, std::abs(cp.riemann(d, a, b, c) +
                                  cp.riemann(d, b, c, a) +
                                  cp.riemann(d, c, a, b)));
          }
    Eigen::VectorXd delta = divergence_ric_power(cp, 1);
    Eigen::VectorXd dres = delta + 0.5 * cp.d_scal;
    r.records[i].point = pts[i];
    r.records[i].residuals["riemann_symmetry"] = sym / scale;
    r.records[i].residuals["first_bianchi"] = bianchi / scale;
    r.records[i].residuals["ricci_trace"] =
        std::abs(cp.ric.trace() - cp.scal) / (1.0 + std::abs(cp.scal));
    r.records[i].residuals["second_bianchi"] =
        covector_norm(dres, cp.g_inv) /
        (1.0 + covector_norm(cp.d_scal, cp.g_inv));
  });
  r.finalize();
  r.verdict_from("riemann_symmetry",
                 tol_or(tolerances, "riemann_symmetry", 1e-9));
  r.verdict_from("first_bianchi", tol_or(tolerances, "first_bianchi", 1e-9));
  r.verdict_from("ricci_trace", tol_or(tolerances, "ricci_trace", 1e-10));
  r.verdict_from("second_bianchi", tol_or(tolerances, "second_bianchi", 1e-7));
  return r;
}

// ---- warped checks ----

ResidualReport run_warped_check(const std::string& check,
                                const WarpedSpec& spec, int count,
                                std::uint64_t seed, const Json& tolerances) {
  ResidualReport r;
  r.instance_label = spec.label;
  r.check_name = check;
  auto base_pts = sample_points(spec.base.domain, count, seed);
  auto fiber_pts = sample_points(spec.fiber.domain, count, seed + 1);
  const int pair_count = std::min<std::size_t>(16, base_pts.size());

  if (check == "besse") {
    for (int i = 0; i < pair_count; ++i) {
      PointRecord rec;
      rec.point = base_pts[i];
      rec.residuals["besse"] =
          besse_crosscheck(spec, base_pts[i], fiber_pts[i]);
      r.records.push_back(rec);
    }
    r.finalize();
    r.verdict_from("besse", tol_or(tolerances, "besse", 1e-7));
    return r;
  }

  if (check == "rh_residual") {
    RHInstance inst = assemble(spec);
    auto pts = sample_points(inst.metric.domain, count, seed);
    return check_rh(inst, pts, tolerances, false);
  }

  if (check == "case_a" || check == "case_b") {
    RHInstance inst = assemble(spec);
    auto pts = sample_points(inst.metric.domain, count, seed + 2);
    double rh_worst = 0.0;
    for (const auto& p : pts)
      rh_worst = std::max(rh_worst, rh_residual(inst, p).normalized);
    r.stats["assembled_rh"] = rh_worst;
    const double tol = tol_or(tolerances, check, 1e-7);
    double case_worst = 0.0;
    if (check == "case_a") {
      CaseAResiduals ca = case_a_residuals(spec, base_pts, fiber_pts);
      r.stats["res_base"] = ca.res_base;
      r.stats["res_fiber"] = ca.res_fiber;
      r.stats["mu1_mean"] = ca.mu1_mean;
      r.stats["mu1_spread"] = ca.mu1_spread;
      case_worst = std::max({ca.res_base, ca.res_fiber, ca.mu1_spread});
    } else {
      CaseBResiduals cb = case_b_residuals(spec, base_pts, fiber_pts);
      r.stats["res_base"] = cb.res_base;
      r.stats["einstein_fiber"] = cb.einstein_fiber;
      r.stats["mu1_prime_mean"] = cb.mu1p_mean;
      r.stats["mu1_prime_spread"] = cb.mu1p_spread;
      case_worst = std::max({cb.res_base, cb.einstein_fiber, cb.mu1p_spread});
    }
    r.stats["case_residual"] = case_worst;
    r.tolerances[check] = tol;
    const bool case_ok = case_worst < tol;
    const bool rh_ok = rh_worst < tol;
    r.stats["equivalence"] = (case_ok == rh_ok) ? 1.0 : 0.0;
    r.verdicts["equivalence"] = case_ok == rh_ok ? "pass" : "fail";
    r.verdicts[check] = case_ok && rh_ok ? "pass" : "fail";
    return r;
  }

  if (check == "mu_relation") {
    MuRelationResult mr = mu_relation_check(
        spec, std::vector<Point>(base_pts.begin(), base_pts.begin() + pair_count),
        std::vector<Point>(fiber_pts.begin(), fiber_pts.begin() + pair_count));
    r.stats["max_residual"] = mr.max_residual;
    r.stats["grad_f1_spread"] = mr.grad_f1_spread;
    const double tol = tol_or(tolerances, "mu_relation", 1e-7);
    r.tolerances["mu_relation"] = tol;
    if (mr.flagged)
      r.verdicts["mu_relation"] = "flagged";
    else
      r.verdicts["mu_relation"] = mr.max_residual < tol ? "pass" : "fail";
    return r;
  }

  if (check == "product_split") {
    RHInstance inst = assemble(spec);
    auto pts = sample_points(inst.metric.domain, count, seed);
    ProductSplitResult ps =
        product_split_check(spec.base, spec.fiber, spec.f2, pts);
    r.stats["extended_residual"] = ps.extended_residual;
    r.stats["base_ric_norm"] = ps.base_ric_norm;
    const double tol = tol_or(tolerances, "product_split", 1e-7);
    r.tolerances["product_split"] = tol;
    r.verdicts["product_split"] =
        ps.extended_residual < tol ? "pass" : "fail";
    return r;
  }

  throw Error(ErrorCode::ConfigError, "unknown warped check " + check);
}

// ---- ode checks ----

ResidualReport run_ode_check(const std::string& check, const Json& inst,
                             const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.value("label", "ode");
  r.check_name = check;

  if (check == "closed_family") {
    const auto family =
        closed_family_from_name(inst.at("family").get<std::string>());
    const double A = inst.value("A", 1.0);
    const double phi = inst.value("phi", 0.0);
    const double mu1 = inst.at("mu1").get<double>();
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double t = -1.0 + 2.0 * i / 40.0;
      worst = std::max(worst, closed_family_residual(family, A, phi, mu1, t));
    }
    r.stats["defining_residual"] = worst;
    const double tol = tol_or(tolerances, "closed_family", 1e-10);
    r.tolerances["closed_family"] = tol;
    r.verdicts["closed_family"] = worst < tol ? "pass" : "fail";
    return r;
  }

  // integration-based checks share the profile
  OdeParams params;
  params.n2 = inst.value("n2", 2.0);
  params.mu1 = inst.value("mu1", 0.0);
  params.mu2 = inst.value("mu2", 0.0);
  params.C = inst.value("C", 0.0);
  Initial ic;
  ic.u0 = inst.at("u0").get<double>();
  ic.du0 = inst.value("du0", 0.0);
  const double t0 = inst.at("t_span").at(0).get<double>();
  const double t1 = inst.at("t_span").at(1).get<double>();
  const double tol_int = inst.value("tol", 1e-10);
  OdeProfile profile =
      integrate(ode_kind_from_name(inst.at("ode").get<std::string>()), params,
                ic, t0, t1, tol_int);
  r.stats["steps"] = profile.steps;
  r.stats["max_local_error"] = profile.max_local_error;
  r.stats["boundary_t"] = profile.boundary.t;

  if (check == "ode_residual") {
    const double resid = ode_residual(profile);
    r.stats["ode_residual"] = resid;
    const double tol = tol_or(tolerances, "ode_residual", 1e-8);
    r.tolerances["ode_residual"] = tol;
    r.verdicts["ode_residual"] = resid < tol ? "pass" : "fail";
    return r;
  }
  if (check == "first_integral") {
    const double drift = gradient_first_integral_drift(profile);
    r.stats["drift"] = drift;
    const double tol = tol_or(tolerances, "first_integral", 1e-9);
    r.tolerances["first_integral"] = tol;
    r.verdicts["first_integral"] = drift < tol ? "pass" : "fail";
    return r;
  }
  if (check == "log_law") {
    LogLawResult ll = log_law_check(profile, params.mu1,
                                    inst.value("C_check", params.C));
    r.stats["scal_law"] = ll.scal_law_residual;
    r.stats["u2_law"] = ll.u2_law_residual;
    const double tol = tol_or(tolerances, "log_law", 1e-7);
    r.tolerances["log_law"] = tol;
    r.verdicts["log_law"] =
        std::max(ll.scal_law_residual, ll.u2_law_residual) < tol ? "pass"
                                                                 : "fail";
    return r;
  }
  if (check == "profile_to_warped") {
    const int fiber_dim = inst.value("fiber_dim", 2);
    WarpedSpec spec = profile_to_warped(profile, fiber_dim);
    RHInstance geom = assemble(spec);
    auto pts = sample_points(geom.metric.domain, 24, 5);
    double worst = 0.0;
    const double n2 = inst.value("n2", 2.0);
    for (const auto& p : pts) {
      CurvaturePack cp = curvature_pack(geom.metric, p);
      DiffOps d = differentials(cp, geom.f, p);
      Eigen::MatrixXd resid;
      if (fiber_dim == 1) {
        // hyperbolic reconstruction: check S = -2
        worst = std::max(worst, std::abs(cp.scal + 2.0));
        continue;
      }
      resid = d.hess_form - (d.f / (n2 - 1.0)) * cp.ric_form;
      worst = std::max(worst, operator_norm_form(resid, cp.g));
    }
    r.stats["reconstruction_residual"] = worst;
    const double tol = tol_or(tolerances, "profile_to_warped", 1e-6);
    r.tolerances["profile_to_warped"] = tol;
    r.verdicts["profile_to_warped"] = worst < tol ? "pass" : "fail";
    return r;
  }
  throw Error(ErrorCode::ConfigError, "unknown ode check " + check);
}

// ---- extension checks ----

ResidualReport run_extension_check(const std::string& check, const Json& inst,
                                   const Json& tolerances) {
  ResidualReport r;
  r.instance_label = inst.value("label", "extension");
  r.check_name = check;
  ExtensionData data = extension_from(inst);
  const double tol = tol_or(tolerances, "extension", 1e-10);
  ExtensionConditions cond = extension_conditions(data, tol);
  r.stats["alpha"] = cond.alpha;
  r.stats["res_div"] = cond.res_div;
  r.stats["res_ric"] = cond.res_ric;
  r.tolerances["extension"] = tol;
  if (check == "extension_conditions") {
    r.verdicts["extension_conditions"] = cond.verdict ? "pass" : "fail";
    return r;
  }
  if (check == "extension_ricci") {
    ExtensionRicci er = extension_ricci(data, cond.alpha);
    r.stats["ric_xi_xi"] = er.ric_xi_xi;
    r.stats["ambient_scal"] = er.ambient_scal;
    r.stats["mu"] = er.mu;
    r.stats["hessian_residual"] = er.hessian_residual;
    r.verdicts["extension_ricci"] = er.hessian_residual < tol ? "pass" : "fail";
    return r;
  }
  throw Error(ErrorCode::ConfigError, "unknown extension check " + check);
}

}  // namespace

std::vector<std::string> known_checks() {
  return {"rh_residual",     "static_equation",     "mu",
          "identity_suite",  "conformal_check",     "level_set",
          "ricci_spectrum",  "codazzi_traces",      "kahler",
          "curvature_invariants", "besse",          "case_a",
          "case_b",          "mu_relation",         "product_split",
          "closed_family",   "ode_residual",        "first_integral",
          "log_law",         "profile_to_warped",   "extension_conditions",
          "extension_ricci"};
}

Scenario Scenario::parse(const Json& doc) {
  Scenario s;
  try {
    s.raw = doc;
    s.name = doc.at("name").get<std::string>();
    s.instance = doc.at("instance");
    for (const auto& c : doc.at("checks")) {
      const std::string name = c.get<std::string>();
      const auto known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw Error(ErrorCode::ConfigError, "unknown check name " + name);
      s.checks.push_back(name);
    }
    if (doc.contains("samples")) {
      s.sample_count = doc.at("samples").value("count", 64);
      s.seed = doc.at("samples").value("seed", 1);
    }
    if (s.sample_count < 1 || s.sample_count > 100000)
      throw Error(ErrorCode::ConfigError, "sample count outside [1, 100000]");
    s.tolerances = doc.value("tolerances", Json::object());
    s.expect = doc.value("expect", Json::object());
    s.outputs = doc.value("outputs", Json::array());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad scenario: ") + e.what());
  }
  return s;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ConfigError,
                path + ": " + std::string(e.what()));
  }
  return parse(doc);
}

RunReport run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario = s.raw;
  report.version = kVersion;

  const std::string kind = s.instance.value("kind", "catalog");
  for (const auto& check : s.checks) {
    ResidualReport r;
    try {
      if (kind == "catalog") {
        RHInstance inst = instance_from_catalog(s.instance);
        auto pts = sample_points(inst.metric.domain, s.sample_count, s.seed);
        if (check == "rh_residual")
          r = check_rh(inst, pts, s.tolerances, false);
        else if (check == "static_equation")
          r = check_rh(inst, pts, s.tolerances, true);
        else if (check == "mu")
          r = check_mu(inst, pts, s.tolerances, s.expect);
        else if (check == "identity_suite")
          r = check_identity_suite(inst, pts, s.tolerances);
        else if (check == "conformal_check")
          r = check_conformal(inst, pts, s.tolerances);
        else if (check == "level_set")
          r = check_level_set(inst, pts, s.tolerances,
                              s.instance.value("probes", 16), s.seed);
        else if (check == "ricci_spectrum")
          r = check_spectrum(inst, pts, s.tolerances);
        else if (check == "codazzi_traces")
          r = check_codazzi(inst, pts, s.tolerances,
                            s.instance.value("eps", 1),
                            s.instance.value("s_max", 4));
        else if (check == "kahler")
          r = check_kahler(inst, pts, s.tolerances);
        else if (check == "curvature_invariants")
          r = check_curvature_invariants(inst, pts, s.tolerances);
        else
          throw Error(ErrorCode::ConfigError,
                      "check " + check + " does not apply to catalog instances");
      } else if (kind == "warped") {
        r = run_warped_check(check, warped_from(s.instance), s.sample_count,
                             s.seed, s.tolerances);
      } else if (kind == "ode") {
        r = run_ode_check(check, s.instance, s.tolerances);
      } else if (kind == "extension") {
        r = run_extension_check(check, s.instance, s.tolerances);
      } else {
        throw Error(ErrorCode::ConfigError, "unknown instance kind " + kind);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::IoError)
        throw;
      // partial failures are recorded, not fatal
      r.instance_label = s.name;
      r.check_name = check;
      r.verdicts[check] = "error";
      r.stats["error_code"] = static_cast<double>(e.code());
    }
    report.checks.push_back(std::move(r));
  }

  // overall verdict against expectations (default: every check passes)
  std::string overall = "pass";
  for (const auto& c : report.checks) {
    std::string worst = "pass";
    for (const auto& [name, v] : c.verdicts) {
      if (v == "fail" || v == "error") worst = "fail";
      else if (worst == "pass" && v != "pass") worst = v;
    }
    std::string expected = "pass";
    if (s.expect.is_object() && s.expect.contains(c.check_name) &&
        s.expect.at(c.check_name).is_string())
      expected = s.expect.at(c.check_name).get<std::string>();
    if (expected == "pass" && worst != "pass" && worst != "skipped" &&
        worst != "flagged")
      overall = "fail";
    if (expected == "fail" && worst != "fail") overall = "fail";
  }
  report.overall = overall;

  const auto end = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  report.timestamp = buf;
  return report;
}

void emit_outputs(const Scenario& s, const RunReport& report) {
  if (!s.outputs.is_array()) return;
  for (const auto& out : s.outputs) {
    const std::string format = out.at("format").get<std::string>();
    const std::string path = out.at("path").get<std::string>();
    if (format == "json")
      write_file(path, report.to_json().dump(2) + "\n");
    else if (format == "csv")
      write_file(path, report.to_csv());
    else if (format == "md-summary")
      write_file(path, report.to_md_summary());
    else
      throw Error(ErrorCode::ConfigError, "unknown output format " + format);
  }
}

void par_map(int count, const std::function<void(int)>& fn) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RHLAB_THREADS"))
    threads = std::max(1, std::atoi(env));
  threads = std::min({threads, count, 16});
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rhlab
