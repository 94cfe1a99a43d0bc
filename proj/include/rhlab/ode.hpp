#ifndef RHLAB_ODE_HPP
#define RHLAB_ODE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rhlab/warped.hpp"

namespace rhlab {

enum class ClosedFamily { A1, B1, C1, D1, E1 };
ClosedFamily closed_family_from_name(const std::string& name);

//! Closed-form base profiles for the one-dimensional fiber case:
//!   a1 = A cosh(A^-1 sqrt(mu1) t + phi)        mu1 > 0
//!   b1 = A e^{phi t}                           mu1 = 0
//!   c1 = A cos(A^-1 sqrt(-mu1) t + phi)        mu1 < 0
//!   d1 = sqrt(-mu1) t + phi                    mu1 < 0
//!   e1 = A sinh(A^-1 sqrt(-mu1) t + phi)       mu1 < 0
//! Every member satisfies -u u'' + (u')^2 = -mu1.
struct ClosedValue {
  double u = 0.0;
  double du = 0.0;
};
ClosedValue closed_family(ClosedFamily kind, double A, double phi, double mu1,
                          double t);
//! Defining-equation residual checked by 1-d jet evaluation of the family.
double closed_family_residual(ClosedFamily kind, double A, double phi,
                              double mu1, double t);

enum class OdeKind {
  BaseSecondOrder,   // u'' u + (n2-2)/2 (u')^2 = mu1/2
  FiberFirstOrder,   // u' = sqrt(mu2/2 + ((3 mu1 - C)/2 - mu1 ln|u|) u^2)
  GradientCirc,      // y' = sqrt(1 - y^2)
  GradientSinh,      // y' = sqrt(1 + y^2)
  GradientExp,       // y' = y
  GradientCosh,      // y' = sqrt(y^2 - 1)
};
OdeKind ode_kind_from_name(const std::string& name);

struct OdeParams {
  double n2 = 2.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double C = 0.0;
  bool decreasing_branch = false;  // take the - square-root branch
};

struct BoundaryEvent {
  std::string kind;  // "radicand_zero" | "u_zero" | "none"
  double t = 0.0;
};

struct OdeProfile {
  OdeKind kind = OdeKind::GradientCirc;
  OdeParams params;
  std::vector<double> t;   // strictly increasing grid
  std::vector<double> u;
  std::vector<double> du;
  BoundaryEvent boundary{"none", 0.0};
  int steps = 0;
  double max_local_error = 0.0;
  double tol = 1e-10;

  //! Cubic-Hermite dense evaluation inside the grid.
  double eval(double tq) const;
  double eval_du(double tq) const;
  //! u'' at a node from the defining equation (used for dense output only).
  double ddu_at(std::size_t i) const;
};

struct Initial {
  double u0 = 0.0;
  double du0 = 0.0;  // second-order kinds only
};

//! Dormand-Prince RK5(4), adaptive, dense output by cubic Hermite; stops
//! cleanly at domain-boundary events (radicand -> 0, u -> 0) located by
//! bisection to 1e-12 in t. max_step keeps the Hermite interpolant within
//! the residual budget of ode_residual.
OdeProfile integrate(OdeKind kind, const OdeParams& params, const Initial& ic,
                     double t0, double t1, double tol = 1e-10,
                     double max_step = 3e-3);

//! Defining-equation residual recomputed on a fresh uniform grid through the
//! dense interpolant and finite-difference stencils (independent of the
//! integrator internals).
double ode_residual(const OdeProfile& profile);

//! Converse construction: from a positive increasing base profile build
//! (I x Sigma, dt^2 (+) rho(t)^2 ds^2), rho = u'/u'(0), f(t,s) = u(t); for
//! fiber_dim = 1 the case-(a) assembly dt^2 (+) u(t)^2 ds^2 is used.
WarpedSpec profile_to_warped(const OdeProfile& profile, int fiber_dim,
                             bool circle_fiber = false);

struct LogLawResult {
  double scal_law_residual = 0.0;  // S_2 - (2 mu1 ln|u| + C)
  double u2_law_residual = 0.0;    // u'' - (mu1 - C/2 - mu1 ln|u|) u
};
LogLawResult log_law_check(const OdeProfile& fiber_profile, double mu1,
                           double C);

//! First integrals of the gradient profiles: circ conserves y^2 + y'^2,
//! cosh/sinh conserve y'^2 - y^2 (values 1, -1, 1).
double gradient_first_integral_drift(const OdeProfile& profile);

}  // namespace rhlab

#endif
