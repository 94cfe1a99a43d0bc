#include "rhlab/fields.hpp"

#include <cmath>

#include "rhlab/errors.hpp"

namespace rhlab {

bool ChartDomain::inside_box(const Point& p) const {
  if (static_cast<int>(p.size()) != dim) return false;
  for (int i = 0; i < dim; ++i)
    if (!(p[i] > lower[i] && p[i] < upper[i])) return false;
  return true;
}

bool ChartDomain::excluded(const Point& p) const {
  for (const auto& e : exclusions)
    if (e.rejects(p)) return true;
  return false;
}

ChartDomain make_box(const Point& lower, const Point& upper) {
  ChartDomain d;
  d.dim = static_cast<int>(lower.size());
  d.lower = lower;
  d.upper = upper;
  return d;
}

JetVec seed_point(const Point& p, int order) {
  JetVec x;
  const int n = static_cast<int>(p.size());
  x.reserve(p.size());
  for (int i = 0; i < n; ++i) x.push_back(Jet::variable(n, order, i, p[i]));
  return x;
}

double ScalarField::value(const Point& p) const {
  return eval(seed_point(p, 0)).value();
}

Jet ScalarField::jet(const Point& p, int order) const {
  Jet j = eval(seed_point(p, order));
  if (!j.finite())
    throw Error(ErrorCode::NonFiniteValue, "field '" + label + "' at point");
  return j;
}

Eigen::MatrixXd MetricField::value(const Point& p) const {
  JetMat m = jets(p, 0);
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = m[i][j].value();
  return g;
}

JetMat MetricField::jets(const Point& p, int order) const {
  JetMat m = components(seed_point(p, order));
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.finite())
        throw Error(ErrorCode::NonFiniteValue, "metric '" + label + "' at point");
  return m;
}

ScalarField scalar_from(const std::string& label,
                        std::function<Jet(const JetVec&)> fn) {
  return ScalarField{label, std::move(fn)};
}

ScalarField scalar_constant(const std::string& label, double c) {
  return scalar_from(label, [c](const JetVec& x) {
    return Jet::constant(x[0].dim(), x[0].order(), c);
  });
}

MetricField scale_metric(const MetricField& g, double lambda2) {
  MetricField out = g;
  out.label = g.label + "*scaled";
  auto base = g.components;
  out.components = [base, lambda2](const JetVec& x) {
    JetMat m = base(x);
    for (auto& row : m)
      for (auto& e : row) e = e * lambda2;
    return m;
  };
  return out;
}

MetricField conformal_metric(const MetricField& g, const ScalarField& u,
                             const std::string& label) {
  MetricField out = g;
  out.label = label;
  auto base = g.components;
  auto ufn = u.eval;
  out.components = [base, ufn](const JetVec& x) {
    Jet factor = exp(2.0 * ufn(x));
    JetMat m = base(x);
    for (auto& row : m)
      for (auto& e : row) e = e * factor;
    return m;
  };
  return out;
}

double operator_norm_form(const Eigen::MatrixXd& b, const Eigen::MatrixXd& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (b + b.transpose()), g, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::VectorXd metric_eigenvalues(const Eigen::MatrixXd& endo,
                                   const Eigen::MatrixXd& g) {
  Eigen::MatrixXd form = g * endo;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (form + form.transpose()), g,
      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return es.eigenvalues();
}

double vector_norm(const Eigen::VectorXd& v, const Eigen::MatrixXd& g) {
  return std::sqrt(std::max(0.0, v.dot(g * v)));
}

double covector_norm(const Eigen::VectorXd& a, const Eigen::MatrixXd& g_inv) {
  return std::sqrt(std::max(0.0, a.dot(g_inv * a)));
}

Eigen::MatrixXd gram_schmidt_frame(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = e.col(i);
    for (int j = 0; j < i; ++j) v -= e.col(j).dot(g * v) * e.col(j);
    const double norm = std::sqrt(v.dot(g * v));
    if (!(norm > 1e-12))
      throw Error(ErrorCode::SingularMetric, "degenerate frame");
    e.col(i) = v / norm;
  }
  return e;
}

}  // namespace rhlab
