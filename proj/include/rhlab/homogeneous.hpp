#ifndef RHLAB_HOMOGENEOUS_HPP
#define RHLAB_HOMOGENEOUS_HPP

#include <Eigen/Dense>

namespace rhlab {

//! Matrix data of a one-dimensional extension of a homogeneous space:
//! symmetric part S_mat and skew part A_mat of the derivation, candidate
//! Ricci of N, div S data, and the sign epsilon.
struct ExtensionData {
  int m = 0;  // dim N = n - 1
  Eigen::MatrixXd S_mat;
  Eigen::MatrixXd A_mat;
  Eigen::MatrixXd ric_N;
  Eigen::VectorXd divS;
  int eps = -1;

  void validate() const;  // symmetry/skewness/nonzero S
};

//! The algebraic system characterizing f = e^t as a solution:
//!   alpha = eps/|S|  (Frobenius norm),  delta S = 0,
//!   Ric_N = |S|^-2 ((tr S + eps |S|) S + [S, A]).
struct ExtensionConditions {
  double alpha = 0.0;
  double res_div = 0.0;
  double res_ric = 0.0;
  bool verdict = false;
};
ExtensionConditions extension_conditions(const ExtensionData& data,
                                         double tol = 1e-10);

//! Ambient Ricci blocks for a given alpha and the blockwise residual of the
//! defining equation for f = e^t with Weingarten T = alpha S.
struct ExtensionRicci {
  double ric_xi_xi = 0.0;             // -alpha^2 tr(S^2)
  Eigen::VectorXd ric_x_xi;           // alpha * divS
  Eigen::MatrixXd ric_block;          // Ric_N - alpha^2 tr(S) S - alpha^2 [S,A]
  double ambient_scal = 0.0;
  double mu = 0.0;                    // mu(e^t) at t = 0
  double hessian_residual = 0.0;      // blockwise defining-equation residual
};
ExtensionRicci extension_ricci(const ExtensionData& data, double alpha);

}  // namespace rhlab

#endif
