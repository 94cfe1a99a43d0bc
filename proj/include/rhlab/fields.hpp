#ifndef RHLAB_FIELDS_HPP
#define RHLAB_FIELDS_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "rhlab/jet.hpp"

namespace rhlab {

using Point = std::vector<double>;
using JetVec = std::vector<Jet>;
using JetMat = std::vector<std::vector<Jet>>;

//! Named closed condition rejecting points of a chart box.
struct Exclusion {
  std::string name;
  std::function<bool(const Point&)> rejects;
};

//! Open coordinate box with named exclusions; the single chart each space
//! lives on. Identities are checked on this dense open set only.
struct ChartDomain {
  int dim = 0;
  Point lower, upper;
  std::vector<Exclusion> exclusions;

  bool inside_box(const Point& p) const;
  bool excluded(const Point& p) const;  // true if any exclusion rejects p
  bool admissible(const Point& p) const {
    return inside_box(p) && !excluded(p);
  }
};

ChartDomain make_box(const Point& lower, const Point& upper);

//! Scalar function of chart coordinates, evaluable on jets of any order.
struct ScalarField {
  std::string label;
  std::function<Jet(const JetVec&)> eval;

  double value(const Point& p) const;
  Jet jet(const Point& p, int order) const;
};

//! Metric in chart coordinates: symmetric matrix of jet-evaluable components.
struct MetricField {
  int dim = 0;
  std::string label;
  ChartDomain domain;
  std::vector<bool> periodic_axes;  // flat-torus / circle factors
  std::function<JetMat(const JetVec&)> components;

  Eigen::MatrixXd value(const Point& p) const;
  JetMat jets(const Point& p, int order) const;
};

JetVec seed_point(const Point& p, int order);

ScalarField scalar_from(const std::string& label,
                        std::function<Jet(const JetVec&)> fn);
ScalarField scalar_constant(const std::string& label, double c);

//! g -> lambda^2 g, same chart.
MetricField scale_metric(const MetricField& g, double lambda2);

//! Conformal change g -> e^{2u} g for a jet-evaluable u.
MetricField conformal_metric(const MetricField& g, const ScalarField& u,
                             const std::string& label);

// ---- small dense helpers over doubles (Eigen-backed) ----

//! Max |eigenvalue| of a g-self-adjoint endomorphism given in (0,2) form
//! (b_ij = g_ik a^k_j, symmetric); solves b v = lambda g v.
double operator_norm_form(const Eigen::MatrixXd& b, const Eigen::MatrixXd& g);

//! Eigenvalues (ascending) of endomorphism a^i_j self-adjoint wrt SPD g.
Eigen::VectorXd metric_eigenvalues(const Eigen::MatrixXd& endo,
                                   const Eigen::MatrixXd& g);

double vector_norm(const Eigen::VectorXd& v, const Eigen::MatrixXd& g);
double covector_norm(const Eigen::VectorXd& a, const Eigen::MatrixXd& g_inv);

//! g-orthonormal frame by Gram-Schmidt of the coordinate frame (columns).
Eigen::MatrixXd gram_schmidt_frame(const Eigen::MatrixXd& g);

}  // namespace rhlab

#endif
