#include <doctest.h>

#include <cmath>

#include "rhlab/catalog.hpp"
#include "rhlab/errors.hpp"
#include "rhlab/sampling.hpp"
#include "rhlab/verifier.hpp"

using namespace rhlab;

TEST_CASE("defining-equation residuals on model solutions") {
  SUBCASE("sphere + height function") {
    RHInstance inst = catalog_entry("sphere2_obata").build();
    for (const auto& p : sample_points(inst.metric.domain, 32, 2))
      CHECK(rh_residual(inst, p).raw < 1e-9);
  }
  SUBCASE("flat + affine is exactly zero") {
    RHInstance inst = catalog_entry("euclidean2_affine").build();
    for (const auto& p : sample_points(inst.metric.domain, 16, 2))
      CHECK(rh_residual(inst, p).raw == 0.0);
  }
  SUBCASE("hyperbolic cosh distance") {
    RHInstance inst = catalog_entry("hyperbolic2_cosh").build();
    for (const auto& p : sample_points(inst.metric.domain, 32, 2))
      CHECK(rh_residual(inst, p).raw < 1e-8);
  }
  SUBCASE("negative control: z^2 on the sphere") {
    RHInstance inst = catalog_entry("sphere2_z2").build();
    // residual endomorphism at theta = pi/4 is diag(1/2, -1/2)
    RhResidual r = rh_residual(inst, {M_PI / 4.0, 0.3});
    CHECK(r.raw == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.raw > 0.1);
  }
}

TEST_CASE("point excluded raises") {
  RHInstance inst = catalog_entry("schwarzschild3_static").build();
  CHECK_THROWS_AS(rh_residual(inst, {0.1, 0.0, 0.0}), Error);
}

TEST_CASE("mu values and constancy") {
  SUBCASE("sphere: mu = 2") {
    RHInstance inst = catalog_entry("sphere2_obata").build();
    auto pts = sample_points(inst.metric.domain, 64, 2);
    MuConstancy mc = mu_constancy(inst, pts);
    CHECK(mc.mean == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(mc.spread < 1e-9);
  }
  SUBCASE("flat affine: mu = 2(a^2 + b^2)") {
    RHInstance inst = make_space("euclidean", {{"n", 2}});
    inst.f = make_solution("affine", {{"a0", 1.5}, {"a1", -2.0}, {"b", 3.0}},
                           inst);
    CHECK(mu_value(inst, {0.2, 0.7}) ==
          doctest::Approx(2.0 * (1.5 * 1.5 + 4.0)).epsilon(1e-12));
  }
  SUBCASE("horocycle exponential: mu = 0") {
    RHInstance inst = catalog_entry("hyperbolic2_exp").build();
    auto pts = sample_points(inst.metric.domain, 32, 2);
    MuConstancy mc = mu_constancy(inst, pts);
    CHECK(std::abs(mc.mean) < 1e-10);
    CHECK(mc.spread < 1e-8);
  }
  SUBCASE("Tashiro family: mu = -2, +2, 0") {
    const char* entries[] = {"hyperbolic2_cosh", "hyperbolic2_sinh",
                             "hyperbolic2_exp"};
    const double expected[] = {-2.0, 2.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      RHInstance inst = catalog_entry(entries[i]).build();
      auto pts = sample_points(inst.metric.domain, 16, 4);
      MuConstancy mc = mu_constancy(inst, pts);
      CHECK(mc.mean == doctest::Approx(expected[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("identity suite") {
  SUBCASE("sphere solution: all four identities") {
    RHInstance inst = catalog_entry("sphere2_obata").build();
    for (const auto& p : sample_points(inst.metric.domain, 16, 3)) {
      auto res = identity_suite(inst, p);
      CHECK(res.at("grad_identity") < 1e-8);
      CHECK(res.at("trace_law") < 1e-8);
      CHECK(res.at("norm_identity") < 1e-8);
      CHECK(res.at("curvature_exchange") < 1e-8);
    }
  }
  SUBCASE("flat affine: identically zero") {
    RHInstance inst = catalog_entry("euclidean3_affine").build();
    auto res = identity_suite(inst, {0.4, -0.2, 0.9});
    for (const auto& [name, v] : res) {
      CAPTURE(name);
      CHECK(v == doctest::Approx(0.0));
    }
  }
  SUBCASE("conformally flat, u = x1 x2: nonzero grad S exercised") {
    RHInstance inst = catalog_entry("conformal_flat3_xy").build();
    for (const auto& p : sample_points(inst.metric.domain, 12, 3)) {
      auto res = identity_suite(inst, p);
      CHECK(res.at("grad_identity") < 1e-7);
      CHECK(res.at("trace_law") < 1e-7);
      CHECK(res.at("norm_identity") < 1e-7);
      CHECK(res.at("curvature_exchange") < 1e-7);
    }
    // the instance really has nonconstant scalar curvature
    auto pts = sample_points(inst.metric.domain, 8, 3);
    ScalarCurvatureStats st = scalar_stats(inst.metric, pts);
    CHECK(st.spread > 1e-2);
  }
  SUBCASE("precondition gating") {
    RHInstance inst = catalog_entry("sphere2_z2").build();
    CHECK_THROWS_AS(identity_suite(inst, {M_PI / 4.0, 0.2}), Error);
  }
}

TEST_CASE("consequence chain: equation implies the identity suite") {
  for (const char* name : {"sphere2_obata", "hyperbolic2_cosh",
                           "conformal_flat3_xy", "hyperbolic3_poisson"}) {
    CAPTURE(name);
    RHInstance inst = catalog_entry(name).build();
    for (const auto& p : sample_points(inst.metric.domain, 8, 9)) {
      if (rh_residual(inst, p).raw >= 1e-8) continue;
      auto res = identity_suite(inst, p);
      for (const auto& [k, v] : res) {
        CAPTURE(k);
        CHECK(v < 1e-7);
      }
    }
  }
}

TEST_CASE("conformal reformulation") {
  SUBCASE("forward on the shipped conformally flat family") {
    for (const char* name : {"conformal_flat3_linear", "conformal_flat3_xy",
                             "conformal_flat3_x2my2"}) {
      CAPTURE(name);
      RHInstance inst = catalog_entry(name).build();
      auto pts = sample_points(inst.metric.domain, 12, 5);
      MuConstancy mc = mu_constancy(inst, pts);
      for (const auto& p : pts) {
        ConformalCheck c = conformal_check(inst.metric, inst.f, mc.mean, p);
        CHECK(c.einstein_residual < 1e-7);
        CHECK(c.laplace_residual < 1e-6);
      }
    }
  }
  SUBCASE("constant f: homothety, residuals vanish") {
    RHInstance inst = make_space("euclidean", {{"n", 3}});
    inst.f = make_solution("constant", {{"c", 2.0}}, inst);
    ConformalCheck c =
        conformal_check(inst.metric, inst.f, 0.0, {0.1, 0.2, 0.3});
    CHECK(c.einstein_residual < 1e-12);
    CHECK(c.laplace_residual < 1e-12);
  }
  SUBCASE("negative control: f = 1 + x1^2 on flat R^3") {
    RHInstance inst = make_space("euclidean", {{"n", 3}});
    auto f =
        scalar_from("bad", [](const JetVec& x) { return 1.0 + x[0] * x[0]; });
    ConformalCheck c = conformal_check(inst.metric, f, 0.0, {0.4, 0.1, -0.2});
    CHECK(c.einstein_residual > 1e-3);
  }
  SUBCASE("sign violation") {
    RHInstance inst = make_space("euclidean", {{"n", 3}});
    auto f = scalar_from("negative",
                         [](const JetVec& x) { return x[0] * x[0] - 10.0; });
    CHECK_THROWS_AS(conformal_check(inst.metric, f, 0.0, {0.0, 0.0, 0.0}),
                    Error);
  }
}

TEST_CASE("level-set probes") {
  SUBCASE("sphere equator: totally geodesic, scalar-flat") {
    RHInstance inst = catalog_entry("sphere2_obata").build();
    LevelSetProbe probe = level_set_probe(inst, {M_PI / 2.0, 0.7});
    CHECK(probe.weingarten_norm < 1e-9);
    CHECK(std::abs(probe.scal_n) < 1e-8);
  }
  SUBCASE("product instance, regular level c = 0.5") {
    RHInstance inst = catalog_entry("s2xt2_obata").build();
    auto band = sample_level_band(inst, 0.5, 0.02, 6, 3);
    for (const auto& p : band) {
      LevelSetProbe probe = level_set_probe(inst, p);
      CHECK(std::abs(probe.scal_n) < 1e-7);
      CHECK(probe.ric_n_residual < 1e-7);
    }
  }
  SUBCASE("flat hyperplane levels") {
    RHInstance inst = make_space("euclidean", {{"n", 3}});
    inst.f = make_solution("affine", {{"a0", 1.0}, {"b", 0.0}}, inst);
    LevelSetProbe probe = level_set_probe(inst, {0.3, 0.1, -0.5});
    CHECK(probe.weingarten_norm == doctest::Approx(0.0));
    CHECK(probe.scal_n == doctest::Approx(0.0));
  }
  SUBCASE("critical point rejected") {
    RHInstance inst = make_space("euclidean", {{"n", 2}});
    inst.f = scalar_from("r^2", [](const JetVec& x) {
      return x[0] * x[0] + x[1] * x[1];
    });
    CHECK_THROWS_AS(level_set_probe(inst, {0.0, 0.0}), Error);
  }
  SUBCASE("zero-set rigidity at near-zero levels") {
    for (const char* name :
         {"sphere2_obata", "hyperbolic2_sinh", "s2xt2_obata"}) {
      CAPTURE(name);
      RHInstance inst = catalog_entry(name).build();
      auto band = sample_level_band(inst, 0.0, 0.05, 8, 11);
      for (const auto& p : band) {
        LevelSetProbe probe = level_set_probe(inst, p);
        CHECK(probe.weingarten_norm < 1e-6);
        CHECK(std::abs(probe.scal_n) < 1e-6);
      }
    }
  }
}

TEST_CASE("Ricci spectrum rigidity") {
  SUBCASE("sphere x torus: (1,1,0,0)") {
    RHInstance inst = catalog_entry("s2xt2_obata").build();
    for (const auto& p : sample_points(inst.metric.domain, 16, 7)) {
      RicciSpectrum spec = ricci_spectrum_check(inst, p, 1);
      CHECK(spec.multiplicity_ok);
      CHECK(spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(spec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(std::abs(spec.eigenvalues[2]) < 1e-8);
      CHECK(std::abs(spec.eigenvalues[3]) < 1e-8);
      CHECK(spec.ric_t_norm2 == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  SUBCASE("hyperbolic x torus: (-1,-1,0,0)") {
    RHInstance inst = catalog_entry("h2xt2_cosh").build();
    for (const auto& p : sample_points(inst.metric.domain, 8, 7)) {
      RicciSpectrum spec = ricci_spectrum_check(inst, p, -1);
      CHECK(spec.multiplicity_ok);
      CHECK(spec.ric_t_norm2 == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  SUBCASE("bare sphere: no zero block when n = 2") {
    RHInstance inst = catalog_entry("sphere2_obata").build();
    RicciSpectrum spec = ricci_spectrum_check(inst, {1.0, 0.5}, 1);
    CHECK(spec.multiplicity_ok);
    CHECK(spec.eigenvalues.size() == 2);
  }
}

TEST_CASE("Codazzi condition and trace laws") {
  SUBCASE("sphere x torus, s = 1..4") {
    RHInstance inst = catalog_entry("s2xt2_obata").build();
    for (const auto& p : sample_points(inst.metric.domain, 8, 5)) {
      CodazziTraces ct = codazzi_and_traces(inst.metric, p, 4, 1);
      CHECK(ct.codazzi_residual < 1e-7);
      for (int s = 0; s < 4; ++s) {
        CHECK(ct.trace_residuals[s] < 1e-7);
        CHECK(ct.divergence_norms[s] < 1e-7);
      }
    }
  }
  SUBCASE("flat R^4: Ricci-flat branch") {
    RHInstance inst = make_space("euclidean", {{"n", 4}});
    CodazziTraces ct =
        codazzi_and_traces(inst.metric, {0.1, 0.2, 0.3, 0.4}, 3, 1);
    CHECK(ct.codazzi_residual == doctest::Approx(0.0));
    for (int s = 0; s < 3; ++s) {
      // traces all vanish, so the eps-normalized law misses by exactly 2
      CHECK(ct.trace_residuals[s] == doctest::Approx(2.0));
      CHECK(ct.divergence_norms[s] == doctest::Approx(0.0));
    }
  }
  SUBCASE("Schwarzschild: Codazzi holds, trace normalization fails") {
    RHInstance inst = catalog_entry("schwarzschild3_static").build();
    for (const auto& p : sample_points(inst.metric.domain, 6, 5)) {
      CodazziTraces ct = codazzi_and_traces(inst.metric, p, 2, 1);
      CHECK(ct.codazzi_residual < 1e-6);
      CHECK(ct.trace_residuals[0] > 1e-3);  // tr Ric = 0 != 2
    }
  }
}

TEST_CASE("Kaehler commutation") {
  SUBCASE("product J instance") {
    RHInstance inst = catalog_entry("s2xt2_obata").build();
    REQUIRE(inst.J.has_value());
    for (const auto& p : sample_points(inst.metric.domain, 12, 3))
      CHECK(kahler_j_check(inst, p) < 1e-8);
  }
  SUBCASE("flat R^4 with affine f") {
    RHInstance inst = make_space("product(euclidean2,euclidean2)", {});
    REQUIRE(inst.J.has_value());
    inst.f = make_solution(
        "affine", {{"a0", 1.0}, {"a1", 2.0}, {"a2", -1.0}, {"b", 0.5}}, inst);
    CHECK(kahler_j_check(inst, {0.1, 0.2, 0.3, 0.4}) == doctest::Approx(0.0));
  }
  SUBCASE("rank-1 Hessian negative control") {
    RHInstance inst = make_space("product(euclidean2,euclidean2)", {});
    inst.f = scalar_from("x0^2", [](const JetVec& x) { return x[0] * x[0]; });
    CHECK(kahler_j_check(inst, {0.3, -0.1, 0.2, 0.5}) > 0.5);
  }
  SUBCASE("broken J rejected") {
    RHInstance inst = make_space("euclidean", {{"n", 2}});
    inst.J = [](const Point&) {
      Eigen::MatrixXd J(2, 2);
      J << 0, -2, 1, 0;  // J^2 != -Id
      return J;
    };
    CHECK_THROWS_AS(kahler_j_check(inst, {0.0, 0.0}), Error);
  }
}

TEST_CASE("scaling covariance of the defining residual") {
  for (const char* name : {"sphere2_obata", "sphere2_z2"}) {
    CAPTURE(name);
    RHInstance inst = catalog_entry(name).build();
    auto pts = sample_points(inst.metric.domain, 8, 13);
    for (double lambda2 : {0.25, 4.0}) {
      RHInstance scaled = inst;
      scaled.metric = scale_metric(inst.metric, lambda2);
      for (const auto& p : pts) {
        RhResidual a = rh_residual(inst, p);
        RhResidual b = rh_residual(scaled, p);
        // residuals scale consistently; verdicts do not move
        CHECK(b.raw == doctest::Approx(a.raw / lambda2).epsilon(1e-10));
        CHECK((a.normalized < 1e-8) == (b.normalized < 1e-8));
      }
    }
  }
}

TEST_CASE("soundness: every known-solution entry passes at 64 points") {
  for (const auto& entry : list_catalog()) {
    auto it = entry.expected.find("rh_residual");
    if (it == entry.expected.end() || it->second != "pass") continue;
    CAPTURE(entry.name);
    RHInstance inst = entry.build();
    auto pts = sample_points(inst.metric.domain, 64, 1);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, rh_residual(inst, p).raw);
    CHECK(worst < 1e-8);
    MuConstancy mc = mu_constancy(inst, pts);
    CHECK(mc.spread < 1e-7 * (1.0 + std::abs(mc.mean)));
  }
}

TEST_CASE("static equation on Schwarzschild") {
  RHInstance inst = catalog_entry("schwarzschild3_static").build();
  auto pts = sample_points(inst.metric.domain, 64, 1);
  for (const auto& p : pts) {
    CHECK(static_residual(inst, p).raw < 1e-7);
    CHECK(rh_residual(inst, p).raw > 1e-3);  // wrong sign fails
  }
  ScalarCurvatureStats st = scalar_stats(inst.metric, pts);
  CHECK(std::abs(st.mean) < 1e-8);
  CHECK(st.spread < 1e-8);
}
