// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Takes the scenario directory as argv[1] so the shipped scenario
// files are exercised alongside the library API.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rhlab/catalog.hpp"
#include "rhlab/homogeneous.hpp"
#include "rhlab/ode.hpp"
#include "rhlab/sampling.hpp"
#include "rhlab/scenario.hpp"

using namespace rhlab;

namespace {

int g_failures = 0;
std::string g_scenario_dir = "scenarios";

void report(int number, const std::string& label, bool pass,
            const std::string& detail) {
  std::printf("[%s] %02d %s: %s\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

RunReport run_file(const std::string& name) {
  Scenario s = Scenario::load(g_scenario_dir + "/" + name);
  return run_scenario(s);
}

double check_max(const RunReport& r, const std::string& check,
                 const std::string& key) {
  for (const auto& c : r.checks)
    if (c.check_name == check) {
      auto it = c.max_residual.find(key);
      if (it != c.max_residual.end()) return it->second;
      auto st = c.stats.find(key);
      if (st != c.stats.end()) return st->second;
    }
  return std::nan("");
}

double check_stat(const RunReport& r, const std::string& check,
                  const std::string& key) {
  for (const auto& c : r.checks)
    if (c.check_name == check) return c.stats.at(key);
  return std::nan("");
}

char buf[256];

void criterion_obata() {
  RunReport r = run_file("obata_sphere.json");
  const double rh = check_max(r, "rh_residual", "raw");
  const double mu = check_stat(r, "mu", "mu_mean");
  double ident = 0.0;
  for (const char* k : {"grad_identity", "trace_law", "norm_identity",
                        "curvature_exchange"})
    ident = std::max(ident, check_max(r, "identity_suite", k));
  const bool pass = r.overall == "pass" && rh < 1e-8 &&
                    std::abs(mu - 2.0) < 1e-8 && ident < 1e-7;
  std::snprintf(buf, sizeof buf,
                "rh max %.2e, mu %.10f, identity max %.2e (64 points)", rh, mu,
                ident);
  report(1, "Obata suite (sphere + linear form)", pass, buf);
}

void criterion_tashiro() {
  struct Case {
    const char* file;
    double mu;
  };
  const Case cases[] = {{"tashiro_cosh.json", -2.0},
                        {"tashiro_sinh.json", 2.0},
                        {"tashiro_exp.json", 0.0}};
  bool pass = true;
  double worst_rh = 0.0, worst_mu = 0.0;
  for (const auto& c : cases) {
    RunReport r = run_file(c.file);
    const double rh = check_max(r, "rh_residual", "raw");
    const double mu = check_stat(r, "mu", "mu_mean");
    worst_rh = std::max(worst_rh, rh);
    worst_mu = std::max(worst_mu, std::abs(mu - c.mu));
    pass = pass && r.overall == "pass" && rh < 1e-8 &&
           std::abs(mu - c.mu) < 1e-8;
  }
  std::snprintf(buf, sizeof buf, "rh max %.2e, worst |mu - target| %.2e",
                worst_rh, worst_mu);
  report(2, "Tashiro suite (cosh/sinh/exp profiles)", pass, buf);
}

void criterion_flat() {
  bool pass = true;
  double worst = 0.0;
  for (int n : {2, 3}) {
    RHInstance inst = make_space("euclidean", {{"n", double(n)}});
    Params p{{"a0", 1.0}, {"b", 0.25}};
    if (n >= 2) p["a1"] = -0.5;
    inst.f = make_solution("affine", p, inst);
    for (const auto& pt : sample_points(inst.metric.domain, 64, 1))
      worst = std::max(worst, rh_residual(inst, pt).raw);
    for (const auto& pt : sample_level_band(inst, 0.1, 0.3, 8, 5)) {
      LevelSetProbe probe = level_set_probe(inst, pt);
      worst = std::max({worst, probe.weingarten_norm, std::abs(probe.scal_n)});
    }
  }
  pass = worst <= 1e-12;
  std::snprintf(buf, sizeof buf,
                "all residuals and probe norms at most %.2e", worst);
  report(3, "flat suite (affine functions, hyperplane levels)", pass, buf);
}

void criterion_zero_set() {
  RHInstance inst = catalog_entry("s2xt2_obata").build();
  auto probes = sample_level_band(inst, 0.0, 0.05, 16, 3);
  double w = 0.0, s = 0.0;
  for (const auto& p : probes) {
    LevelSetProbe probe = level_set_probe(inst, p);
    w = std::max(w, probe.weingarten_norm);
    s = std::max(s, std::abs(probe.scal_n));
  }
  const bool pass = probes.size() >= 16 && w < 1e-6 && s < 1e-6;
  std::snprintf(buf, sizeof buf, "%zu probes, |W| max %.2e, |S_N| max %.2e",
                probes.size(), w, s);
  report(4, "zero-set rigidity (S2 x T2, near-zero probes)", pass, buf);
}

void criterion_spectrum() {
  RunReport r = run_file("ricci_spectrum_plus.json");
  const double ev = check_max(r, "ricci_spectrum", "eigenvalue");
  const double rt = check_max(r, "ricci_spectrum", "ric_t_norm");
  const bool pass = r.overall == "pass" && ev < 1e-6 && rt < 1e-6;
  std::snprintf(buf, sizeof buf,
                "eigenvalue deviation %.2e, |Ric^T|^2 - 1 within %.2e", ev, rt);
  report(5, "eigenvalue rigidity (spectrum (1,1,0,0))", pass, buf);
}

void criterion_traces() {
  bool pass = true;
  double worst = 0.0;
  for (const char* file :
       {"harmonic_traces_plus.json", "harmonic_traces_minus.json"}) {
    RunReport r = run_file(file);
    pass = pass && r.overall == "pass";
    for (int s = 1; s <= 4; ++s) {
      worst = std::max(worst, check_max(r, "codazzi_traces",
                                        "trace_s" + std::to_string(s)));
      worst = std::max(worst, check_max(r, "codazzi_traces",
                                        "div_s" + std::to_string(s)));
    }
  }
  pass = pass && worst < 1e-7;
  std::snprintf(buf, sizeof buf,
                "worst trace/divergence residual %.2e (eps = +1, -1; s = 1..4)",
                worst);
  report(6, "harmonic-curvature traces", pass, buf);
}

void criterion_conformal() {
  bool pass = true;
  double worst_rh = 0.0, worst_e = 0.0;
  for (const char* file : {"conformal_linear.json", "conformal_xy.json",
                           "conformal_x2my2.json"}) {
    RunReport r = run_file(file);
    pass = pass && r.overall == "pass";
    worst_rh = std::max(worst_rh, check_max(r, "rh_residual", "raw"));
    worst_e = std::max(worst_e, check_max(r, "conformal_check", "einstein"));
  }
  pass = pass && worst_rh < 1e-7 && worst_e < 1e-6;
  std::snprintf(buf, sizeof buf,
                "rh max %.2e, Einstein reformulation max %.2e", worst_rh,
                worst_e);
  report(7, "conformal construction (three harmonic u)", pass, buf);
}

void criterion_schwarzschild() {
  RHInstance inst = catalog_entry("schwarzschild3_static").build();
  auto pts = sample_points(inst.metric.domain, 64, 1);
  double worst = 0.0;
  for (const auto& p : pts)
    worst = std::max(worst, static_residual(inst, p).raw);
  ScalarCurvatureStats st = scalar_stats(inst.metric, pts);
  const bool pass =
      worst < 1e-7 && std::abs(st.mean) < 1e-8 && st.spread < 1e-8;
  std::snprintf(buf, sizeof buf, "static residual max %.2e, |S| mean %.2e",
                worst, std::abs(st.mean));
  report(8, "Schwarzschild static check", pass, buf);
}

void criterion_warped_equivalence() {
  bool pass = true;
  double worst_case = 0.0, worst_rh = 0.0, worst_besse = 0.0;
  const char* positives[] = {"warped_hyperbolic_b1.json",
                             "warped_const_s2.json", "warped_affine_s3.json",
                             "warped_cone.json", "warped_polar_r3.json"};
  for (const char* file : positives) {
    RunReport r = run_file(file);
    pass = pass && r.overall == "pass";
    const bool is_a = std::string(file).find("_b1") != std::string::npos ||
                      std::string(file).find("const_s2") != std::string::npos ||
                      std::string(file).find("affine_s3") != std::string::npos;
    const char* check = is_a ? "case_a" : "case_b";
    worst_case = std::max(worst_case, check_stat(r, check, "case_residual"));
    worst_rh = std::max(worst_rh, check_stat(r, check, "assembled_rh"));
    worst_besse = std::max(worst_besse, check_max(r, "besse", "besse"));
    pass = pass && check_stat(r, check, "equivalence") == 1.0;
  }
  // negative controls: both sides fail together, by a margin
  {
    RunReport r = run_file("warped_wrong_kappa.json");
    pass = pass && r.overall == "pass" &&
           check_stat(r, "case_a", "equivalence") == 1.0 &&
           check_stat(r, "case_a", "case_residual") > 1e-3 &&
           check_stat(r, "case_a", "assembled_rh") > 1e-3;
    worst_besse = std::max(worst_besse, check_max(r, "besse", "besse"));
  }
  {
    RunReport r = run_file("warped_polar_radial.json");
    pass = pass && r.overall == "pass" &&
           check_stat(r, "case_b", "equivalence") == 1.0 &&
           check_stat(r, "case_b", "case_residual") > 1e-3 &&
           check_stat(r, "case_b", "assembled_rh") > 1e-3;
    worst_besse = std::max(worst_besse, check_max(r, "besse", "besse"));
  }
  pass = pass && worst_case < 1e-7 && worst_rh < 1e-7 && worst_besse < 1e-7;
  std::snprintf(
      buf, sizeof buf,
      "positives: case %.2e, assembled %.2e; closed-form Ricci max %.2e",
      worst_case, worst_rh, worst_besse);
  report(9, "warped equivalence (3 case-a, 2 case-b, 2 controls)", pass, buf);
}

void criterion_mu_bookkeeping() {
  bool pass = true;
  double worst_rel = 0.0, worst_spread = 0.0;
  for (const char* name : {"wa_const_s2", "wa_const_h2"}) {
    WarpedSpec spec = warped_entry(name);
    auto bp = sample_points(spec.base.domain, 8, 3);
    auto fp = sample_points(spec.fiber.domain, 8, 4);
    MuRelationResult mr = mu_relation_check(spec, bp, fp);
    pass = pass && !mr.flagged;
    worst_rel = std::max(worst_rel, mr.max_residual);
  }
  for (const char* name : {"wa_hyperbolic_b1", "wa_const_s2", "wa_const_h2",
                           "wa_affine_s3", "wa_a1_cosh"}) {
    WarpedSpec spec = warped_entry(name);
    auto bp = sample_points(spec.base.domain, 12, 3);
    auto fp = sample_points(spec.fiber.domain, 12, 4);
    CaseAResiduals res = case_a_residuals(spec, bp, fp);
    worst_spread = std::max(worst_spread, res.mu1_spread);
  }
  pass = pass && worst_rel < 1e-7 && worst_spread < 1e-7;
  std::snprintf(buf, sizeof buf,
                "relation residual max %.2e, mu1 spread max %.2e", worst_rel,
                worst_spread);
  report(10, "mu bookkeeping on case-a instances", pass, buf);
}

void criterion_ode() {
  bool pass = true;
  // families a1-e1: defining-equation residual by jet evaluation
  double fam = 0.0;
  for (const char* file :
       {"ode_family_a1.json", "ode_family_b1.json", "ode_family_c1.json",
        "ode_family_d1.json", "ode_family_e1.json"}) {
    RunReport r = run_file(file);
    pass = pass && r.overall == "pass";
    fam = std::max(fam, check_stat(r, "closed_family", "defining_residual"));
  }
  pass = pass && fam < 1e-10;

  // mu1 = 0 closed form vs the integrator
  OdeParams params;
  params.n2 = 3.0;
  OdeProfile prof = integrate(OdeKind::BaseSecondOrder, params,
                              {1.0, 2.0 / 3.0}, 0.0, 1.0, 1e-10);
  double closed = 0.0;
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0})
    closed = std::max(closed,
                      std::abs(prof.eval(t) - std::pow(1.0 + t, 2.0 / 3.0)));
  pass = pass && closed < 1e-8;

  // gradient first integrals
  double drift = 0.0;
  for (const char* file : {"ode_gradient_circ.json", "ode_gradient_sinh.json",
                           "ode_gradient_cosh.json"}) {
    RunReport r = run_file(file);
    pass = pass && r.overall == "pass";
    drift = std::max(drift, check_stat(r, "first_integral", "drift"));
  }
  pass = pass && drift < 1e-9;

  // log law and reconstruction
  RunReport ll = run_file("ode_fiber_loglaw.json");
  const double law = std::max(check_stat(ll, "log_law", "scal_law"),
                              check_stat(ll, "log_law", "u2_law"));
  RunReport rec = run_file("ode_reconstruction.json");
  const double rr =
      check_stat(rec, "profile_to_warped", "reconstruction_residual");
  pass = pass && ll.overall == "pass" && law < 1e-7 &&
         rec.overall == "pass" && rr < 1e-6;
  std::snprintf(buf, sizeof buf,
                "families %.2e, closed-form %.2e, drift %.2e, log law %.2e, "
                "reconstruction %.2e",
                fam, closed, drift, law, rr);
  report(11, "ODE suite", pass, buf);
}

void criterion_homogeneous() {
  ExtensionData d;
  d.m = 1;
  d.S_mat = Eigen::MatrixXd::Constant(1, 1, 1.0);
  d.A_mat = Eigen::MatrixXd::Zero(1, 1);
  d.ric_N = Eigen::MatrixXd::Zero(1, 1);
  d.divS = Eigen::VectorXd::Zero(1);
  d.eps = -1;
  ExtensionConditions cond = extension_conditions(d);
  ExtensionRicci er = extension_ricci(d, cond.alpha);
  bool pass = cond.verdict && std::abs(cond.alpha + 1.0) < 1e-12 &&
              std::abs(er.ambient_scal + 2.0) < 1e-10 &&
              std::abs(er.mu) < 1e-10 && er.hessian_residual < 1e-10;

  ExtensionData flat;
  flat.m = 2;
  flat.S_mat = Eigen::MatrixXd::Identity(2, 2);
  flat.A_mat = Eigen::MatrixXd::Zero(2, 2);
  flat.ric_N = Eigen::MatrixXd::Zero(2, 2);
  flat.divS = Eigen::VectorXd::Zero(2);
  flat.eps = -1;
  ExtensionConditions bad = extension_conditions(flat);
  pass = pass && !bad.verdict &&
         std::abs(bad.res_ric - (std::sqrt(2.0) - 1.0)) < 1e-12;
  std::snprintf(buf, sizeof buf,
                "hyperbolic: alpha %.3f, S %.3f, mu %.1e; flat control "
                "res_ric %.6f",
                cond.alpha, er.ambient_scal, er.mu, bad.res_ric);
  report(12, "homogeneous extension system", pass, buf);
}

void criterion_kahler() {
  RunReport r = run_file("kahler_product.json");
  const double comm = check_max(r, "kahler", "commutator");
  RHInstance control = make_space("product(euclidean2,euclidean2)", {});
  control.f =
      make_solution("coordinate_square", {{"i", 0.0}}, control);
  const double bad = kahler_j_check(control, {0.3, -0.1, 0.2, 0.5});
  const bool pass = r.overall == "pass" && comm < 1e-8 && bad > 0.1;
  std::snprintf(buf, sizeof buf, "commutator max %.2e, control %.2f", comm,
                bad);
  report(13, "Kaehler commutation", pass, buf);
}

void criterion_determinism() {
  bool pass = true;
  for (const char* file : {"obata_sphere.json", "warped_const_s2.json",
                           "schwarzschild_static.json"}) {
    Scenario s = Scenario::load(g_scenario_dir + "/" + std::string(file));
    const std::string a = stable_dump(run_scenario(s));
    const std::string b = stable_dump(run_scenario(s));
    pass = pass && a == b;
  }
  report(14, "determinism (fixed seed, identical verdict blocks)", pass,
         pass ? "byte-identical reports" : "reports diverged");
}

void scenario_suite() {
  // every shipped scenario must meet its own expectations
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(g_scenario_dir))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  bool pass = !files.empty();
  std::string first_bad;
  for (const auto& f : files) {
    RunReport r = run_scenario(Scenario::load(f));
    if (r.overall != "pass") {
      pass = false;
      if (first_bad.empty()) first_bad = f;
    }
  }
  std::snprintf(buf, sizeof buf, "%zu scenario files%s%s", files.size(),
                pass ? ", all green" : ", first failure: ",
                first_bad.c_str());
  report(15, "shipped scenario suite", pass, buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_scenario_dir = argv[1];
  try {
    criterion_obata();
    criterion_tashiro();
    criterion_flat();
    criterion_zero_set();
    criterion_spectrum();
    criterion_traces();
    criterion_conformal();
    criterion_schwarzschild();
    criterion_warped_equivalence();
    criterion_mu_bookkeeping();
    criterion_ode();
    criterion_homogeneous();
    criterion_kahler();
    criterion_determinism();
    scenario_suite();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }
  if (g_failures == 0) {
    std::printf("acceptance: all criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
