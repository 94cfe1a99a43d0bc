#include "rhlab/warped.hpp"

#include <algorithm>
#include <cmath>

#include "rhlab/errors.hpp"

namespace rhlab {

namespace {

void require_case(const WarpedSpec& spec, WarpedCase expected) {
  if (spec.case_tag != expected)
    throw Error(ErrorCode::CaseMismatch, "operation needs the other case tag");
}

void validate(const WarpedSpec& spec, const Point& base_pt) {
  if (!(spec.warp.value(base_pt) > 1e-8))
    throw Error(ErrorCode::NonPositiveWarp, "phi not positive at base point");
}

}  // namespace

RHInstance assemble(const WarpedSpec& spec) {
  const int n1 = spec.n1(), n2 = spec.n2(), n = n1 + n2;
  RHInstance out;
  out.metric.dim = n;
  out.metric.label = "warped(" + spec.base.label + "," + spec.fiber.label + ")";
  Point lower = spec.base.domain.lower, upper = spec.base.domain.upper;
  lower.insert(lower.end(), spec.fiber.domain.lower.begin(),
               spec.fiber.domain.lower.end());
  upper.insert(upper.end(), spec.fiber.domain.upper.begin(),
               spec.fiber.domain.upper.end());
  out.metric.domain = make_box(lower, upper);
  for (const auto& e : spec.base.domain.exclusions)
    out.metric.domain.exclusions.push_back(
        {e.name, [e, n1](const Point& p) {
           return e.rejects(Point(p.begin(), p.begin() + n1));
         }});
  for (const auto& e : spec.fiber.domain.exclusions)
    out.metric.domain.exclusions.push_back(
        {e.name, [e, n1](const Point& p) {
           return e.rejects(Point(p.begin() + n1, p.end()));
         }});
  out.metric.periodic_axes = spec.base.periodic_axes;
  out.metric.periodic_axes.insert(out.metric.periodic_axes.end(),
                                  spec.fiber.periodic_axes.begin(),
                                  spec.fiber.periodic_axes.end());
  auto cb = spec.base.components;
  auto cf = spec.fiber.components;
  auto warp = spec.warp.eval;
  out.metric.components = [cb, cf, warp, n1, n2, n](const JetVec& x) {
    JetVec xb(x.begin(), x.begin() + n1);
    JetVec xf(x.begin() + n1, x.end());
    Jet phi = warp(xb);
    if (!(phi.value() > 0.0))
      throw Error(ErrorCode::NonPositiveWarp, "phi <= 0 in chart");
    Jet phi2 = phi * phi;
    JetMat m(n, std::vector<Jet>(n, Jet::constant(x[0].dim(), x[0].order(), 0.0)));
    JetMat mb = cb(xb);
    JetMat mf = cf(xf);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) m[i][j] = mb[i][j];
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) m[n1 + i][n1 + j] = phi2 * mf[i][j];
    return m;
  };

  auto f1 = spec.f1.eval;
  auto f2 = spec.f2.eval;
  out.f = scalar_from("f1*f2", [f1, f2, n1](const JetVec& x) {
    JetVec xb(x.begin(), x.begin() + n1);
    JetVec xf(x.begin() + n1, x.end());
    return f1(xb) * f2(xf);
  });
  out.label = spec.label.empty() ? out.metric.label : spec.label;
  return out;
}

BesseBlocks besse_ricci(const WarpedSpec& spec, const Point& base_pt,
                        const Point& fiber_pt) {
  validate(spec, base_pt);
  const int n2 = spec.n2();
  CurvaturePack cp1 = curvature_pack(spec.base, base_pt);
  CurvaturePack cp2 = curvature_pack(spec.fiber, fiber_pt);
  DiffOps dphi = differentials(cp1, spec.warp, base_pt);
  const double phi = dphi.f;

  BesseBlocks out;
  out.base_block = cp1.ric - (n2 / phi) * dphi.hess;
  const double coeff =
      dphi.laplacian / phi - (n2 - 1) * dphi.grad_norm2 / (phi * phi);
  out.fiber_block =
      cp2.ric / (phi * phi) +
      coeff * Eigen::MatrixXd::Identity(n2, n2);
  return out;
}

double besse_crosscheck(const WarpedSpec& spec, const Point& base_pt,
                        const Point& fiber_pt) {
  const int n1 = spec.n1(), n2 = spec.n2();
  BesseBlocks blocks = besse_ricci(spec, base_pt, fiber_pt);
  RHInstance inst = assemble(spec);
  Point p = base_pt;
  p.insert(p.end(), fiber_pt.begin(), fiber_pt.end());
  CurvaturePack cp = curvature_pack(inst.metric, p);

  Eigen::MatrixXd numeric_base = cp.ric.topLeftCorner(n1, n1);
  Eigen::MatrixXd numeric_fiber = cp.ric.bottomRightCorner(n2, n2);
  Eigen::MatrixXd off1 = cp.ric.topRightCorner(n1, n2);
  Eigen::MatrixXd off2 = cp.ric.bottomLeftCorner(n2, n1);

  double worst = (numeric_base - blocks.base_block).cwiseAbs().maxCoeff();
  worst = std::max(worst,
                   (numeric_fiber - blocks.fiber_block).cwiseAbs().maxCoeff());
  if (off1.size() > 0) worst = std::max(worst, off1.cwiseAbs().maxCoeff());
  if (off2.size() > 0) worst = std::max(worst, off2.cwiseAbs().maxCoeff());
  return worst;
}

double mu1_value(const WarpedSpec& spec, const Point& base_pt) {
  CurvaturePack cp1 = curvature_pack(spec.base, base_pt);
  DiffOps d = differentials(cp1, spec.f1, base_pt);
  return (spec.n2() - 2) * d.grad_norm2 - d.f * d.laplacian;
}

double mu1_prime_value(const WarpedSpec& spec, const Point& base_pt) {
  CurvaturePack cp1 = curvature_pack(spec.base, base_pt);
  DiffOps df1 = differentials(cp1, spec.f1, base_pt);
  DiffOps dphi = differentials(cp1, spec.warp, base_pt);
  if (std::abs(df1.f) < 1e-4)
    throw Error(ErrorCode::ZeroDivision, "f1 vanishes at base sample");
  const double pairing = df1.d1.dot(cp1.g_inv * dphi.d1);
  return -(dphi.f / df1.f) * pairing + (spec.n2() - 1) * dphi.grad_norm2 -
         dphi.f * dphi.laplacian;
}

double mu2_value(const WarpedSpec& spec, const Point& fiber_pt, double mu1) {
  CurvaturePack cp2 = curvature_pack(spec.fiber, fiber_pt);
  DiffOps d = differentials(cp2, spec.f2, fiber_pt);
  return 2.0 * d.grad_norm2 + d.f * d.laplacian - mu1 * d.f * d.f;
}

CaseAResiduals case_a_residuals(const WarpedSpec& spec,
                                const std::vector<Point>& base_pts,
                                const std::vector<Point>& fiber_pts) {
  require_case(spec, WarpedCase::A);
  // case (a) normalization: f1 == phi
  for (const auto& p : base_pts) {
    validate(spec, p);
    if (std::abs(spec.f1.value(p) - spec.warp.value(p)) > 1e-12)
      throw Error(ErrorCode::CaseMismatch, "case a requires f1 = phi");
  }

  CaseAResiduals out;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < base_pts.size(); ++i) {
    const double m = mu1_value(spec, base_pts[i]);
    out.mu1_mean += m;
    lo = i == 0 ? m : std::min(lo, m);
    hi = i == 0 ? m : std::max(hi, m);
  }
  out.mu1_mean /= static_cast<double>(base_pts.size());
  out.mu1_spread = hi - lo;

  const int n2 = spec.n2();
  for (const auto& p : base_pts) {
    CurvaturePack cp1 = curvature_pack(spec.base, p);
    DiffOps d = differentials(cp1, spec.f1, p);
    Eigen::MatrixXd resid =
        (n2 - 1) * d.hess_form - d.f * cp1.ric_form;
    out.res_base = std::max(out.res_base, operator_norm_form(resid, cp1.g));
  }
  for (const auto& p : fiber_pts) {
    CurvaturePack cp2 = curvature_pack(spec.fiber, p);
    DiffOps d = differentials(cp2, spec.f2, p);
    Eigen::MatrixXd target =
        d.f * (out.mu1_mean * cp2.g - cp2.ric_form);
    out.res_fiber = std::max(
        out.res_fiber, operator_norm_form(d.hess_form - target, cp2.g));
  }
  return out;
}

CaseBResiduals case_b_residuals(const WarpedSpec& spec,
                                const std::vector<Point>& base_pts,
                                const std::vector<Point>& fiber_pts) {
  require_case(spec, WarpedCase::B);
  CaseBResiduals out;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < base_pts.size(); ++i) {
    const double m = mu1_prime_value(spec, base_pts[i]);
    out.mu1p_mean += m;
    lo = i == 0 ? m : std::min(lo, m);
    hi = i == 0 ? m : std::max(hi, m);
  }
  out.mu1p_mean /= static_cast<double>(base_pts.size());
  out.mu1p_spread = hi - lo;

  const int n2 = spec.n2();
  for (const auto& p : base_pts) {
    validate(spec, p);
    CurvaturePack cp1 = curvature_pack(spec.base, p);
    DiffOps df1 = differentials(cp1, spec.f1, p);
    DiffOps dphi = differentials(cp1, spec.warp, p);
    Eigen::MatrixXd resid =
        df1.hess_form +
        df1.f * (cp1.ric_form - (n2 / dphi.f) * dphi.hess_form);
    out.res_base = std::max(out.res_base, operator_norm_form(resid, cp1.g));
  }
  for (const auto& p : fiber_pts) {
    CurvaturePack cp2 = curvature_pack(spec.fiber, p);
    Eigen::MatrixXd resid = cp2.ric_form - out.mu1p_mean * cp2.g;
    out.einstein_fiber =
        std::max(out.einstein_fiber, operator_norm_form(resid, cp2.g));
  }
  return out;
}

MuRelationResult mu_relation_check(const WarpedSpec& spec,
                                   const std::vector<Point>& base_pts,
                                   const std::vector<Point>& fiber_pts) {
  require_case(spec, WarpedCase::A);
  MuRelationResult out;

  CaseAResiduals mu1s = case_a_residuals(spec, base_pts, fiber_pts);
  const double mu1 = mu1s.mu1_mean;

  double grad_lo = 0.0, grad_hi = 0.0;
  std::vector<double> grad_norms;
  for (std::size_t i = 0; i < base_pts.size(); ++i) {
    CurvaturePack cp1 = curvature_pack(spec.base, base_pts[i]);
    DiffOps d = differentials(cp1, spec.f1, base_pts[i]);
    const double gn = std::sqrt(d.grad_norm2);
    grad_norms.push_back(gn);
    grad_lo = i == 0 ? gn : std::min(grad_lo, gn);
    grad_hi = i == 0 ? gn : std::max(grad_hi, gn);
  }
  out.grad_f1_spread = grad_hi - grad_lo;
  out.flagged = out.grad_f1_spread > 1e-7;

  RHInstance inst = assemble(spec);
  const int n2 = spec.n2();
  for (std::size_t bi = 0; bi < base_pts.size(); ++bi) {
    for (const auto& fp : fiber_pts) {
      Point p = base_pts[bi];
      p.insert(p.end(), fp.begin(), fp.end());
      CurvaturePack cp = curvature_pack(inst.metric, p);
      DiffOps d = differentials(cp, inst.f, p);
      const double mu = d.f * d.laplacian + 2.0 * d.grad_norm2;
      const double f2 = spec.f2.value(fp);
      const double mu2 = mu2_value(spec, fp, mu1);
      const double claim =
          n2 * grad_norms[bi] * grad_norms[bi] * f2 * f2 + mu2;
      out.max_residual = std::max(out.max_residual, std::abs(mu - claim));
    }
  }
  return out;
}

ProductSplitResult product_split_check(const MetricField& g1,
                                       const MetricField& g2,
                                       const ScalarField& f2,
                                       const std::vector<Point>& pts_product) {
  WarpedSpec spec;
  spec.base = g1;
  spec.fiber = g2;
  spec.warp = scalar_constant("one", 1.0);
  spec.f1 = scalar_constant("one", 1.0);
  spec.f2 = f2;
  spec.case_tag = WarpedCase::Product;
  RHInstance inst = assemble(spec);

  ProductSplitResult out;
  for (const auto& p : pts_product) {
    CurvaturePack cp = curvature_pack(inst.metric, p);
    DiffOps d = differentials(cp, inst.f, p);
    Eigen::MatrixXd resid = d.hess_form + d.f * cp.ric_form;
    out.extended_residual =
        std::max(out.extended_residual, operator_norm_form(resid, cp.g));
    Point base_pt(p.begin(), p.begin() + g1.dim);
    CurvaturePack cp1 = curvature_pack(g1, base_pt);
    out.base_ric_norm =
        std::max(out.base_ric_norm, operator_norm_form(cp1.ric_form, cp1.g));
  }
  return out;
}

}  // namespace rhlab
