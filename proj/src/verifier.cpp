#include "rhlab/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "rhlab/errors.hpp"
#include "rhlab/sampling.hpp"

namespace rhlab {

void ResidualReport::finalize() {
  max_residual.clear();
  mean_residual.clear();
  std::map<std::string, int> counts;
  for (const auto& rec : records)
    for (const auto& [name, value] : rec.residuals) {
      auto [it, fresh] = max_residual.try_emplace(name, value);
      if (!fresh) it->second = std::max(it->second, value);
      mean_residual[name] += value;
      counts[name] += 1;
    }
  for (auto& [name, sum] : mean_residual) sum /= counts[name];
}

void ResidualReport::verdict_from(const std::string& name, double tol) {
  tolerances[name] = tol;
  auto it = max_residual.find(name);
  if (it == max_residual.end()) {
    verdicts[name] = "skipped";
    return;
  }
  verdicts[name] = it->second <= tol ? "pass" : "fail";
}

namespace {

void check_almost_hermitian(const Eigen::MatrixXd& J, const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  if ((J * J + Eigen::MatrixXd::Identity(n, n)).norm() > 1e-10 * n ||
      (J.transpose() * g * J - g).norm() > 1e-10 * g.norm())
    throw Error(ErrorCode::NotAlmostHermitian,
                "J^2 != -Id or g(J.,J.) != g at sample point");
}

}  // namespace

namespace {

// The verdict divides by 1 + |Hess| + (1 + |f|)|Ric|, the local magnitude of
// the two sides of the equation plus the curvature scale, so the ratio stays
// meaningful near zeros of f and on (numerically) flat instances. The raw
// operator norm is reported alongside and scales exactly like lambda^-2
// under g -> lambda^2 g.
RhResidual signed_residual(const RHInstance& inst, const Point& p,
                           double sign) {
  CurvaturePack cp = curvature_pack(inst.metric, p);
  DiffOps d = differentials(cp, inst.f, p);
  Eigen::MatrixXd resid_form = d.hess_form + sign * d.f * cp.ric_form;
  RhResidual out;
  out.raw = operator_norm_form(resid_form, cp.g);
  const double ric_norm = operator_norm_form(cp.ric_form, cp.g);
  const double scale = 1.0 + operator_norm_form(d.hess_form, cp.g) +
                       (1.0 + std::abs(d.f)) * ric_norm;
  out.normalized = out.raw / scale;
  return out;
}

}  // namespace

RhResidual rh_residual(const RHInstance& inst, const Point& p) {
  if (!inst.metric.domain.admissible(p))
    throw Error(ErrorCode::PointExcluded, "point outside chart domain");
  return signed_residual(inst, p, 1.0);
}

RhResidual static_residual(const RHInstance& inst, const Point& p) {
  return signed_residual(inst, p, -1.0);
}

double mu_value(const RHInstance& inst, const Point& p) {
  CurvaturePack cp = curvature_pack(inst.metric, p);
  DiffOps d = differentials(cp, inst.f, p);
  return d.f * d.laplacian + 2.0 * d.grad_norm2;
}

MuConstancy mu_constancy(const RHInstance& inst,
                         const std::vector<Point>& pts) {
  MuConstancy out;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double m = mu_value(inst, pts[i]);
    out.samples.push_back(m);
    out.mean += m;
    lo = i == 0 ? m : std::min(lo, m);
    hi = i == 0 ? m : std::max(hi, m);
  }
  if (!pts.empty()) out.mean /= static_cast<double>(pts.size());
  out.spread = hi - lo;
  return out;
}

std::map<std::string, double> identity_suite(const RHInstance& inst,
                                             const Point& p,
                                             double precondition_tol) {
  const RhResidual rh = rh_residual(inst, p);
  if (rh.normalized > precondition_tol && rh.raw > precondition_tol)
    throw Error(ErrorCode::PreconditionViolated,
                "equation fails at point; identities not expected");

  CurvaturePack cp = curvature_pack(inst.metric, p, /*with_lap_scal=*/true);
  DiffOps d = differentials(cp, inst.f, p);
  const int n = inst.metric.dim;

  std::map<std::string, double> out;

  // Ric(grad f) - S/2 grad f - f/4 grad S
  Eigen::VectorXd v = cp.ric * d.grad - 0.5 * cp.scal * d.grad -
                      0.25 * d.f * cp.grad_scal;
  out["grad_identity"] = vector_norm(v, cp.g);

  out["trace_law"] = std::abs(d.laplacian - d.f * cp.scal);

  const double ric_norm2 = (cp.ric * cp.ric).trace();
  const double pairing = d.grad.dot(cp.g * cp.grad_scal);
  out["norm_identity"] =
      std::abs(d.f * ric_norm2 - 0.5 * d.f * cp.scal * cp.scal +
               0.25 * pairing - 0.25 * d.f * cp.lap_scal);

  // curvature exchange over Gram-Schmidt frame pairs
  Eigen::MatrixXd frame = gram_schmidt_frame(cp.g);
  std::vector<Eigen::MatrixXd> nabla_ric_endo(n);
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cp.nabla_ric(a, i, j);
    nabla_ric_endo[a] = cp.g_inv * m;
  }
  double worst = 0.0;
  for (int ia = 0; ia < n; ++ia)
    for (int ib = ia + 1; ib < n; ++ib) {
      Eigen::VectorXd X = frame.col(ia), Y = frame.col(ib);
      Eigen::VectorXd rxy = Eigen::VectorXd::Zero(n);
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              acc += cp.riemann(l, i, j, k) * X(i) * Y(j) * d.grad(k);
        rxy(l) = acc;
      }
      const double Xf = X.dot(d.d1);
      const double Yf = Y.dot(d.d1);
      Eigen::MatrixXd nabla_X = Eigen::MatrixXd::Zero(n, n);
      Eigen::MatrixXd nabla_Y = Eigen::MatrixXd::Zero(n, n);
      for (int a = 0; a < n; ++a) {
        nabla_X += X(a) * nabla_ric_endo[a];
        nabla_Y += Y(a) * nabla_ric_endo[a];
      }
      Eigen::VectorXd resid = rxy + Xf * (cp.ric * Y) - Yf * (cp.ric * X) +
                              d.f * (nabla_X * Y - nabla_Y * X);
      worst = std::max(worst, vector_norm(resid, cp.g));
    }
  out["curvature_exchange"] = worst;
  return out;
}

ConformalCheck conformal_check(const MetricField& g, const ScalarField& f,
                               double mu, const Point& p) {
  const int n = g.dim;
  if (n <= 2) throw Error(ErrorCode::BadParams, "conformal check needs n > 2");
  if (!(f.value(p) > 0.0))
    throw Error(ErrorCode::SignViolation, "f must be positive on sampled set");

  auto ffn = f.eval;
  ScalarField u = scalar_from("u", [ffn, n](const JetVec& x) {
    return log(ffn(x)) * (1.0 / (2.0 - n));
  });
  MetricField gbar = conformal_metric(g, u, g.label + "#conformal");

  CurvaturePack cp = curvature_pack(gbar, p);
  DiffOps du = differentials(cp, u, p);

  Eigen::MatrixXd gbar_v = cp.g;
  Eigen::MatrixXd du_du = du.d1 * du.d1.transpose();
  Eigen::MatrixXd resid_form = cp.ric_form - du.laplacian * gbar_v +
                               static_cast<double>((n - 2) * (n - 3)) * du_du;
  ConformalCheck out;
  out.einstein_residual = operator_norm_form(resid_form, gbar_v);
  const double uval = u.value(p);
  out.laplace_residual = std::abs(
      du.laplacian + mu / (n - 2) * std::exp(2.0 * (n - 3) * uval));
  return out;
}

LevelSetProbe level_set_probe(const RHInstance& inst, const Point& p,
                              double grad_tol) {
  CurvaturePack cp = curvature_pack(inst.metric, p);
  DiffOps d = differentials(cp, inst.f, p);
  const int n = inst.metric.dim;
  const double grad_norm = std::sqrt(d.grad_norm2);
  if (grad_norm <= grad_tol)
    throw Error(ErrorCode::CriticalPoint, "|grad f| below threshold");

  LevelSetProbe probe;
  probe.base_point = p;
  probe.level = d.f;
  Eigen::VectorXd nu = d.grad / grad_norm;
  probe.normal = nu;

  // P = Id - nu (x) nu^flat projects onto the tangent space of the level set
  Eigen::VectorXd nu_flat = cp.g * nu;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - nu * nu_flat.transpose();
  // nabla_X nu = (Hess X - <Hess X, nu> nu)/|grad f|; W = -(nabla nu)|_TN
  Eigen::MatrixXd W = -(P * d.hess * P) / grad_norm;
  probe.weingarten = W;
  probe.weingarten_norm = operator_norm_form(cp.g * W, cp.g);

  const double trW = W.trace();
  double W_norm2 = 0.0;  // |W|^2 = tr(W W) for g-self-adjoint W
  W_norm2 = (W * W).trace();
  const double ric_nu_nu = nu.dot(cp.ric_form * nu);
  probe.scal_n = cp.scal - 2.0 * ric_nu_nu + trW * trW - W_norm2;

  // Ric_N via the Gauss formula, compared against -(f/|grad f|) nabla_nu Ric.
  // Both sides on a g-orthonormal frame of TN.
  Eigen::MatrixXd frame = gram_schmidt_frame(cp.g);
  std::vector<Eigen::VectorXd> tangent;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = P * frame.col(i);
    for (const auto& t : tangent) e -= t.dot(cp.g * e) * t;
    const double nn = std::sqrt(std::max(0.0, e.dot(cp.g * e)));
    if (nn > 1e-6) tangent.push_back(e / nn);
  }
  Eigen::MatrixXd nabla_nu_ric = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cp.nabla_ric(a, i, j);
    nabla_nu_ric += nu(a) * m;  // (0,2) form
  }
  const int m_dim = static_cast<int>(tangent.size());
  Eigen::MatrixXd gauss(m_dim, m_dim), claim(m_dim, m_dim);
  for (int a = 0; a < m_dim; ++a)
    for (int b = 0; b < m_dim; ++b) {
      const Eigen::VectorXd& X = tangent[a];
      const Eigen::VectorXd& Y = tangent[b];
      // <R(X,nu)nu, Y>
      double rxnn = 0.0;
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              acc += cp.riemann(l, i, j, k) * X(i) * nu(j) * nu(k);
        rxnn += acc * (cp.g * Y)(l);
      }
      const double ric_xy = X.dot(cp.ric_form * Y);
      const double wx_wy =
          trW * X.dot(cp.g * (W * Y)) - X.dot(cp.g * (W * (W * Y)));
      gauss(a, b) = ric_xy - rxnn + wx_wy;
      claim(a, b) = -(d.f / grad_norm) * X.dot(nabla_nu_ric * Y);
    }
  probe.ric_n_residual = (gauss - claim).norm();
  return probe;
}

RicciSpectrum ricci_spectrum_check(const RHInstance& inst, const Point& p,
                                   int eps, double tol) {
  CurvaturePack cp = curvature_pack(inst.metric, p);
  DiffOps d = differentials(cp, inst.f, p);
  const int n = inst.metric.dim;
  const double grad_norm = std::sqrt(d.grad_norm2);
  if (grad_norm <= 1e-4)
    throw Error(ErrorCode::CriticalPoint, "|grad f| below threshold");

  RicciSpectrum out;
  Eigen::VectorXd ev = metric_eigenvalues(cp.ric, cp.g);
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            std::greater<double>());

  // expected spectrum: eps twice, zero n-2 times (sorted accordingly)
  std::vector<double> expected(n, 0.0);
  expected[0] = expected[1] = static_cast<double>(eps);
  std::sort(expected.begin(), expected.end(), std::greater<double>());
  bool ok = true;
  for (int i = 0; i < n; ++i)
    ok = ok && std::abs(out.eigenvalues[i] - expected[i]) < tol;

  // |Ric^T|^2 on nu-perp
  Eigen::VectorXd nu = d.grad / grad_norm;
  Eigen::MatrixXd frame = gram_schmidt_frame(cp.g);
  Eigen::VectorXd nu_flat = cp.g * nu;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - nu * nu_flat.transpose();
  std::vector<Eigen::VectorXd> tangent;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = P * frame.col(i);
    for (const auto& t : tangent) e -= t.dot(cp.g * e) * t;
    const double nn = std::sqrt(std::max(0.0, e.dot(cp.g * e)));
    if (nn > 1e-6) tangent.push_back(e / nn);
  }
  double acc = 0.0;
  for (const auto& X : tangent)
    for (const auto& Y : tangent) {
      const double v = X.dot(cp.ric_form * Y);
      acc += v * v;
    }
  out.ric_t_norm2 = acc;
  out.multiplicity_ok = ok && std::abs(acc - 1.0) < tol;
  if (n == 2) out.multiplicity_ok = ok;  // no zero block when n = 2
  return out;
}

CodazziTraces codazzi_and_traces(const MetricField& metric, const Point& p,
                                 int s_max, int eps) {
  CurvaturePack cp = curvature_pack(metric, p);
  const int n = metric.dim;
  CodazziTraces out;

  Eigen::MatrixXd frame = gram_schmidt_frame(cp.g);
  std::vector<Eigen::MatrixXd> nabla_ric_endo(n);
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cp.nabla_ric(a, i, j);
    nabla_ric_endo[a] = cp.g_inv * m;
  }
  double worst = 0.0;
  for (int ia = 0; ia < n; ++ia)
    for (int ib = ia + 1; ib < n; ++ib) {
      Eigen::VectorXd X = frame.col(ia), Y = frame.col(ib);
      Eigen::MatrixXd nabla_X = Eigen::MatrixXd::Zero(n, n);
      Eigen::MatrixXd nabla_Y = Eigen::MatrixXd::Zero(n, n);
      for (int a = 0; a < n; ++a) {
        nabla_X += X(a) * nabla_ric_endo[a];
        nabla_Y += Y(a) * nabla_ric_endo[a];
      }
      Eigen::VectorXd resid = nabla_X * Y - nabla_Y * X;
      worst = std::max(worst, vector_norm(resid, cp.g));
    }
  out.codazzi_residual = worst;

  Eigen::MatrixXd pow = Eigen::MatrixXd::Identity(n, n);
  for (int s = 1; s <= s_max; ++s) {
    pow = pow * cp.ric;
    out.trace_residuals.push_back(
        std::abs(pow.trace() - 2.0 * std::pow(static_cast<double>(eps), s)));
    Eigen::VectorXd delta = divergence_ric_power(cp, s);
    out.divergence_norms.push_back(covector_norm(delta, cp.g_inv));
  }
  return out;
}

double kahler_j_check(const RHInstance& inst, const Point& p) {
  if (!inst.J)
    throw Error(ErrorCode::NotAlmostHermitian, "instance carries no J");
  CurvaturePack cp = curvature_pack(inst.metric, p);
  DiffOps d = differentials(cp, inst.f, p);
  Eigen::MatrixXd J = (*inst.J)(p);
  check_almost_hermitian(J, cp.g);
  Eigen::MatrixXd comm = d.hess * J - J * d.hess;
  return operator_norm_form(cp.g * comm, cp.g);
}

ScalarCurvatureStats scalar_stats(const MetricField& metric,
                                  const std::vector<Point>& pts) {
  ScalarCurvatureStats out;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double s = curvature_pack(metric, pts[i]).scal;
    out.mean += s;
    lo = i == 0 ? s : std::min(lo, s);
    hi = i == 0 ? s : std::max(hi, s);
  }
  if (!pts.empty()) out.mean /= static_cast<double>(pts.size());
  out.spread = hi - lo;
  return out;
}

std::vector<Point> sample_level_band(const RHInstance& inst, double level,
                                     double band, int count,
                                     std::uint64_t seed) {
  ChartDomain d = inst.metric.domain;
  auto f = inst.f;
  d.exclusions.push_back(
      {"outside level band", [f, level, band](const Point& p) {
         return std::abs(f.value(p) - level) >= band;
       }});
  std::vector<Point> band_pts = sample_points(d, count, seed);

  // Newton-project each draw onto the exact level along the gradient flow,
  // so probes test the level hypersurface itself rather than a nearby one.
  std::vector<Point> out;
  const int n = inst.metric.dim;
  for (Point p : band_pts) {
    bool ok = true;
    for (int it = 0; it < 40; ++it) {
      CurvaturePack cp = curvature_pack(inst.metric, p);
      DiffOps df = differentials(cp, inst.f, p);
      const double err = df.f - level;
      if (std::abs(err) < 1e-13 * (1.0 + std::abs(level))) break;
      if (df.grad_norm2 < 1e-10) {
        ok = false;
        break;
      }
      for (int i = 0; i < n; ++i) p[i] -= err * df.grad(i) / df.grad_norm2;
      if (!inst.metric.domain.admissible(p)) {
        ok = false;
        break;
      }
    }
    if (ok && inst.metric.domain.admissible(p)) out.push_back(std::move(p));
  }
  if (out.empty())
    throw Error(ErrorCode::DomainExhausted, "no probe reached the level set");
  return out;
}

}  // namespace rhlab
