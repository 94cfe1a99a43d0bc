#include "rhlab/homogeneous.hpp"

#include <cmath>

#include "rhlab/errors.hpp"

namespace rhlab {

void ExtensionData::validate() const {
  if (m < 1 || S_mat.rows() != m || S_mat.cols() != m || A_mat.rows() != m ||
      A_mat.cols() != m || ric_N.rows() != m || divS.size() != m)
    throw Error(ErrorCode::BadParams, "inconsistent extension data sizes");
  if ((S_mat - S_mat.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::BadParams, "S_mat not symmetric");
  if ((A_mat + A_mat.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::BadParams, "A_mat not skew");
  if ((ric_N - ric_N.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::BadParams, "ric_N not symmetric");
  if (eps != 1 && eps != -1)
    throw Error(ErrorCode::BadParams, "eps must be +-1");
  if (!(S_mat.norm() > 0.0))
    throw Error(ErrorCode::ZeroSymmetricPart, "|S| = 0; alpha undefined");
}

ExtensionConditions extension_conditions(const ExtensionData& data,
                                         double tol) {
  data.validate();
  const double s_norm = data.S_mat.norm();  // Frobenius, tr(S^2)^(1/2)
  ExtensionConditions out;
  out.alpha = data.eps / s_norm;
  out.res_div = data.divS.norm();
  Eigen::MatrixXd bracket = data.S_mat * data.A_mat - data.A_mat * data.S_mat;
  Eigen::MatrixXd claim =
      ((data.S_mat.trace() + data.eps * s_norm) * data.S_mat + bracket) /
      (s_norm * s_norm);
  out.res_ric = (data.ric_N - claim).norm();
  out.verdict = out.res_div < tol && out.res_ric < tol;
  return out;
}

ExtensionRicci extension_ricci(const ExtensionData& data, double alpha) {
  data.validate();
  const int m = data.m;
  ExtensionRicci out;
  const double a2 = alpha * alpha;
  Eigen::MatrixXd bracket = data.S_mat * data.A_mat - data.A_mat * data.S_mat;
  out.ric_xi_xi = -a2 * (data.S_mat * data.S_mat).trace();
  out.ric_x_xi = alpha * data.divS;
  out.ric_block = data.ric_N - a2 * data.S_mat.trace() * data.S_mat -
                  a2 * bracket;
  out.ambient_scal = out.ric_xi_xi + out.ric_block.trace();

  // Blockwise residual of the defining equation for f = e^t at t = 0:
  // Hess f = f dt^2 - f g(alpha S ., .) must equal -f ric.
  double worst = std::abs(1.0 + out.ric_xi_xi);  // (xi,xi) block
  worst = std::max(worst, out.ric_x_xi.cwiseAbs().maxCoeff());  // mixed block
  Eigen::MatrixXd tangent_block = -alpha * data.S_mat + out.ric_block;
  worst = std::max(worst, tangent_block.cwiseAbs().maxCoeff());
  out.hessian_residual = worst;

  // mu(e^t) = f^2 (alpha tr S + 1); constant only when the system holds.
  out.mu = alpha * data.S_mat.trace() + 1.0;
  (void)m;
  return out;
}

}  // namespace rhlab
