#include "rhlab/geometry.hpp"

#include <cmath>

#include "rhlab/errors.hpp"

namespace rhlab {

JetMat jet_matrix_inverse(const JetMat& m) {
  const int n = static_cast<int>(m.size());
  const int dim = m[0][0].dim();
  const int order = m[0][0].order();
  JetMat a = m;
  JetMat inv(n, std::vector<Jet>(n, Jet::constant(dim, order, 0.0)));
  for (int i = 0; i < n; ++i) inv[i][i] = Jet::constant(dim, order, 1.0);

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col].value()) > std::abs(a[pivot][col].value()))
        pivot = r;
    if (std::abs(a[pivot][col].value()) < 1e-14)
      throw Error(ErrorCode::SingularMetric, "jet matrix inversion failed");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Jet d = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet factor = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - factor * a[col][j];
        inv[r][j] = inv[r][j] - factor * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

struct JetCurvature {
  int n = 0;
  JetMat g, ginv;                         // order q
  std::vector<JetMat> gamma;              // [k][i][j], order q-1
  std::vector<std::vector<JetMat>> riem;  // [l][i][j][k], order q-2
  JetMat ric_form;                        // order q-2
  Jet scal;                               // order q-2
};

JetCurvature jet_curvature(const MetricField& metric, const Point& p,
                           int order) {
  JetCurvature jc;
  const int n = metric.dim;
  jc.n = n;
  jc.g = metric.jets(p, order);

  // SPD check on the value part.
  Eigen::MatrixXd gv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gv(i, j) = jc.g[i][j].value();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gv, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 1e-10))
    throw Error(ErrorCode::SingularMetric,
                "metric not positive definite at sample point");

  jc.ginv = jet_matrix_inverse(jc.g);

  // Koszul formula from metric first derivatives.
  const int dim = n;
  const int go = order - 1;
  auto zero = [&](int q) { return Jet::constant(dim, q, 0.0); };
  jc.gamma.assign(n, JetMat(n, std::vector<Jet>(n, zero(go))));
  std::vector<std::vector<JetVec>> dg(n);  // dg[a][i][j] = D_a g_ij
  for (int a = 0; a < n; ++a) {
    dg[a].assign(n, JetVec(n, zero(go)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[a][i][j] = jc.g[i][j].derivative(a);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet s = zero(go);
        for (int l = 0; l < n; ++l) {
          Jet ginv_kl = jc.ginv[k][l];  // order q, truncates in product
          s += ginv_kl * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        s = s * 0.5;
        jc.gamma[k][i][j] = s;
        jc.gamma[k][j][i] = s;
      }

  // R^l_{ijk} = D_i G^l_{jk} - D_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
  const int ro = order - 2;
  jc.riem.assign(
      n, std::vector<JetMat>(n, JetMat(n, std::vector<Jet>(n, zero(ro)))));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Jet s = jc.gamma[l][j][k].derivative(i) -
                  jc.gamma[l][i][k].derivative(j);
          for (int m = 0; m < n; ++m)
            s += jc.gamma[l][i][m] * jc.gamma[m][j][k] -
                 jc.gamma[l][j][m] * jc.gamma[m][i][k];
          jc.riem[l][i][j][k] = s;
        }

  jc.ric_form.assign(n, std::vector<Jet>(n, zero(ro)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Jet s = zero(ro);
      for (int i = 0; i < n; ++i) s += jc.riem[i][i][j][k];
      jc.ric_form[j][k] = s;
    }

  jc.scal = zero(ro);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) jc.scal += jc.ginv[j][k] * jc.ric_form[j][k];

  return jc;
}

}  // namespace

Tensor3 christoffel(const MetricField& metric, const Point& p) {
  JetCurvature jc = jet_curvature(metric, p, 1);
  Tensor3 out(metric.dim);
  for (int k = 0; k < metric.dim; ++k)
    for (int i = 0; i < metric.dim; ++i)
      for (int j = 0; j < metric.dim; ++j)
        out(k, i, j) = jc.gamma[k][i][j].value();
  return out;
}

CurvaturePack curvature_pack(const MetricField& metric, const Point& p,
                             bool with_lap_scal) {
  const int order = with_lap_scal ? 4 : 3;
  JetCurvature jc = jet_curvature(metric, p, order);
  const int n = metric.dim;

  CurvaturePack cp;
  cp.point = p;
  cp.g.resize(n, n);
  cp.g_inv.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cp.g(i, j) = jc.g[i][j].value();
      cp.g_inv(i, j) = jc.ginv[i][j].value();
    }
  cp.gamma = Tensor3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cp.gamma(k, i, j) = jc.gamma[k][i][j].value();
  cp.riemann = Tensor4(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          cp.riemann(l, i, j, k) = jc.riem[l][i][j][k].value();
  cp.ric_form.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cp.ric_form(i, j) = jc.ric_form[i][j].value();
  cp.ric = cp.g_inv * cp.ric_form;
  cp.scal = jc.scal.value();

  cp.d_scal.resize(n);
  for (int i = 0; i < n; ++i) cp.d_scal(i) = jc.scal.d1(i);
  cp.grad_scal = cp.g_inv * cp.d_scal;

  // (nabla_a ric)_{ij} = D_a ric_{ij} - G^m_{ai} ric_{mj} - G^m_{aj} ric_{im}
  cp.nabla_ric = Tensor3(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = jc.ric_form[i][j].d1(a);
        for (int m = 0; m < n; ++m)
          s -= cp.gamma(m, a, i) * cp.ric_form(m, j) +
               cp.gamma(m, a, j) * cp.ric_form(i, m);
        cp.nabla_ric(a, i, j) = s;
      }

  if (with_lap_scal) {
    // Delta S = -g^{ij}(d_i d_j S - G^m_{ij} d_m S)
    double lap = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double hess = jc.scal.d2(i, j);
        for (int m = 0; m < n; ++m) hess -= cp.gamma(m, i, j) * jc.scal.d1(m);
        lap += cp.g_inv(i, j) * hess;
      }
    cp.lap_scal = -lap;
    cp.has_lap_scal = true;
  }
  return cp;
}

double riemann_lowered(const CurvaturePack& cp, int i, int j, int k, int l) {
  double s = 0.0;
  for (int m = 0; m < cp.riemann.n; ++m)
    s += cp.g(l, m) * cp.riemann(m, i, j, k);
  return s;
}

DiffOps differentials(const CurvaturePack& cp, const ScalarField& f,
                      const Point& p) {
  const int n = static_cast<int>(cp.g.rows());
  Jet jf = f.jet(p, 2);
  DiffOps d;
  d.f = jf.value();
  d.d1.resize(n);
  for (int i = 0; i < n; ++i) d.d1(i) = jf.d1(i);
  d.grad = cp.g_inv * d.d1;
  d.grad_norm2 = d.d1.dot(d.grad);
  d.hess_form.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double h = jf.d2(i, j);
      for (int m = 0; m < n; ++m) h -= cp.gamma(m, i, j) * jf.d1(m);
      d.hess_form(i, j) = h;
    }
  d.hess = cp.g_inv * d.hess_form;
  d.laplacian = -d.hess.trace();
  return d;
}

Tensor3 nabla_ric_power(const CurvaturePack& cp, int s) {
  const int n = static_cast<int>(cp.g.rows());
  // nabla_a (Ric^s) as endomorphism: sum Ric^u (nabla_a Ric) Ric^v, u+v=s-1.
  std::vector<Eigen::MatrixXd> ric_pows(s + 1);
  ric_pows[0] = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= s; ++k) ric_pows[k] = ric_pows[k - 1] * cp.ric;

  Tensor3 out(n);
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXd nabla_ric_endo(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) nabla_ric_endo(i, j) = cp.nabla_ric(a, i, j);
    nabla_ric_endo = cp.g_inv * nabla_ric_endo;  // raise first index
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u <= s - 1; ++u)
      acc += ric_pows[u] * nabla_ric_endo * ric_pows[s - 1 - u];
    Eigen::MatrixXd form = cp.g * acc;  // lower to (0,2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(a, i, j) = form(i, j);
  }
  return out;
}

Eigen::VectorXd divergence_ric_power(const CurvaturePack& cp, int s) {
  const int n = static_cast<int>(cp.g.rows());
  Tensor3 nT = nabla_ric_power(cp, s);
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += cp.g_inv(a, b) * nT(a, b, j);
    delta(j) = -acc;
  }
  return delta;
}

}  // namespace rhlab
