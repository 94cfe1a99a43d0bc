#ifndef RHLAB_GEOMETRY_HPP
#define RHLAB_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

#include "rhlab/fields.hpp"

namespace rhlab {

//! Dense rank-3 array T[a][i][j].
struct Tensor3 {
  int n = 0;
  std::vector<double> data;
  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), data(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}
  double& operator()(int a, int i, int j) { return data[(a * n + i) * n + j]; }
  double operator()(int a, int i, int j) const { return data[(a * n + i) * n + j]; }
};

//! Dense rank-4 array T[l][i][j][k].
struct Tensor4 {
  int n = 0;
  std::vector<double> data;
  Tensor4() = default;
  explicit Tensor4(int dim)
      : n(dim), data(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}
  double& operator()(int l, int i, int j, int k) {
    return data[((l * n + i) * n + j) * n + k];
  }
  double operator()(int l, int i, int j, int k) const {
    return data[((l * n + i) * n + j) * n + k];
  }
};

//! Per-point curvature bundle computed from metric jets.
//!
//! Conventions: R(e_i,e_j)e_k = riemann(l,i,j,k) e_l with
//! R = [nabla_i, nabla_j] - nabla_{[i,j]}; ric_form(j,k) = sum_i riemann(i,i,j,k);
//! ric = g^{-1} ric_form (endomorphism); scal = tr_g(ric_form).
//! Laplacian sign is the geometer's positive one: Delta = -tr_g(Hess).
struct CurvaturePack {
  Point point;
  Eigen::MatrixXd g, g_inv;
  Tensor3 gamma;        // Gamma^k_{ij} indexed (k,i,j)
  Tensor4 riemann;      // R^l_{ijk} indexed (l,i,j,k)
  Eigen::MatrixXd ric;       // endomorphism Ric^i_j
  Eigen::MatrixXd ric_form;  // ric_{ij}
  Tensor3 nabla_ric;    // (nabla_a ric)_{ij} indexed (a,i,j)
  double scal = 0.0;
  Eigen::VectorXd grad_scal;      // raised index
  Eigen::VectorXd d_scal;         // coordinate partials of S
  double lap_scal = 0.0;          // Delta S, filled when with_lap_scal
  bool has_lap_scal = false;
};

//! Gauss-Jordan inverse of a matrix of jets (pivot on values).
JetMat jet_matrix_inverse(const JetMat& m);

//! Christoffel symbols from the Koszul formula, plus SPD validation.
Tensor3 christoffel(const MetricField& metric, const Point& p);

CurvaturePack curvature_pack(const MetricField& metric, const Point& p,
                             bool with_lap_scal = false);

//! Lowered curvature R_{ijkl} = g_{lm} R^m_{ijk}.
double riemann_lowered(const CurvaturePack& cp, int i, int j, int k, int l);

struct DiffOps {
  Eigen::VectorXd grad;       // raised gradient
  Eigen::VectorXd d1;         // coordinate partials of f
  Eigen::MatrixXd hess_form;  // (nabla^2 f)_{ij}
  Eigen::MatrixXd hess;       // endomorphism (nabla^2 f)^i_j
  double laplacian = 0.0;     // -tr_g hess
  double grad_norm2 = 0.0;
  double f = 0.0;
};

DiffOps differentials(const CurvaturePack& cp, const ScalarField& f,
                      const Point& p);

//! delta T for T = Ric^s (endomorphism powers of Ricci), as a covector:
//! (delta T)_j = -g^{ab} (nabla_a T)_{bj}. s = 1 gives -1/2 dS up to the
//! contracted Bianchi identity.
Eigen::VectorXd divergence_ric_power(const CurvaturePack& cp, int s);

//! (nabla_a Ric^s)_{ij} via the Leibniz rule on endomorphism powers.
Tensor3 nabla_ric_power(const CurvaturePack& cp, int s);

}  // namespace rhlab

#endif
