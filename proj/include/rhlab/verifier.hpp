#ifndef RHLAB_VERIFIER_HPP
#define RHLAB_VERIFIER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rhlab/geometry.hpp"

namespace rhlab {

//! A metric together with a candidate solution of nabla^2 f = -f Ric, and
//! optionally an almost-complex structure for the Kaehler check.
struct RHInstance {
  MetricField metric;
  ScalarField f;
  std::optional<std::function<Eigen::MatrixXd(const Point&)>> J;
  std::string label;
};

//! One evaluated point: named residuals.
struct PointRecord {
  Point point;
  std::map<std::string, double> residuals;
};

struct ResidualReport {
  std::string instance_label;
  std::string check_name;
  std::vector<PointRecord> records;
  std::map<std::string, double> max_residual;
  std::map<std::string, double> mean_residual;
  std::vector<double> mu_samples;
  std::map<std::string, std::string> verdicts;  // pass | fail | skipped | flagged
  std::map<std::string, double> tolerances;
  std::map<std::string, double> stats;  // named scalars (mu mean, spread, ...)

  void finalize();  // fills max/mean from records
  void verdict_from(const std::string& name, double tol);
};

struct LevelSetProbe {
  Point base_point;
  double level = 0.0;
  Eigen::VectorXd normal;       // unit nu = grad f / |grad f|
  Eigen::MatrixXd weingarten;   // W on TN, ambient coordinates
  double weingarten_norm = 0.0; // operator norm of W
  double scal_n = 0.0;          // intrinsic scalar curvature via Gauss
  double ric_n_residual = 0.0;  // vs -(f/|grad f|) nabla_nu Ric, constant S only
};

// ---- pointwise operations ----

//! Operator norm of nabla^2 f + f Ric at the point, plus the scale-free
//! version used for verdicts (invariant under g -> lambda^2 g).
struct RhResidual {
  double raw = 0.0;
  double normalized = 0.0;
};
RhResidual rh_residual(const RHInstance& inst, const Point& p);

//! mu = f Delta f + 2 |grad f|^2 (constant along any solution).
double mu_value(const RHInstance& inst, const Point& p);
struct MuConstancy {
  double mean = 0.0;
  double spread = 0.0;  // max - min
  std::vector<double> samples;
};
MuConstancy mu_constancy(const RHInstance& inst, const std::vector<Point>& pts);

//! The four pointwise consequences of the equation:
//!   grad_identity : Ric(grad f) - S/2 grad f - f/4 grad S
//!   trace_law     : Delta f - f S
//!   norm_identity : f|Ric|^2 - f S^2/2 + 1/4 <grad f, grad S> - f/4 Delta S
//!   curvature_exchange : R_{X,Y} grad f + X(f) Ric Y - Y(f) Ric X
//!                        + f((nabla_X Ric)Y - (nabla_Y Ric)X), frame pairs
//! Throws PreconditionViolated when the equation itself fails at p.
std::map<std::string, double> identity_suite(const RHInstance& inst,
                                             const Point& p,
                                             double precondition_tol = 1e-6);

//! Conformal reformulation for n > 2 and f of one sign:
//! u = ln|f|/(2-n), gbar = e^{2u} g;
//!   einstein_residual : ric_bar - (Delta_bar u) gbar + (n-2)(n-3) du (x) du
//!   laplace_residual  : Delta_bar u + mu/(n-2) e^{2(n-3)u}
struct ConformalCheck {
  double einstein_residual = 0.0;
  double laplace_residual = 0.0;
};
ConformalCheck conformal_check(const MetricField& g, const ScalarField& f,
                               double mu, const Point& p);

LevelSetProbe level_set_probe(const RHInstance& inst, const Point& p,
                              double grad_tol = 1e-4);

struct RicciSpectrum {
  std::vector<double> eigenvalues;  // descending
  bool multiplicity_ok = false;
  double ric_t_norm2 = 0.0;  // |Ric^T|^2 on the orthogonal complement of nu
};
RicciSpectrum ricci_spectrum_check(const RHInstance& inst, const Point& p,
                                   int eps, double tol = 1e-6);

struct CodazziTraces {
  double codazzi_residual = 0.0;                // max over frame pairs
  std::vector<double> trace_residuals;          // |tr Ric^s - 2 eps^s|, s=1..
  std::vector<double> divergence_norms;         // |delta(Ric^s)|, s=1..
};
CodazziTraces codazzi_and_traces(const MetricField& metric, const Point& p,
                                 int s_max, int eps);

//! Operator norm of nabla^2 f J - J nabla^2 f; requires J^2 = -Id and
//! g(J.,J.) = g at p.
double kahler_j_check(const RHInstance& inst, const Point& p);

//! Static-equation residual ||nabla^2 f - f Ric|| (note the sign: the
//! scalar-flat static condition, not the defining equation).
RhResidual static_residual(const RHInstance& inst, const Point& p);

//! Scalar curvature mean/spread over samples; eps = S/2 when constant.
struct ScalarCurvatureStats {
  double mean = 0.0;
  double spread = 0.0;
};
ScalarCurvatureStats scalar_stats(const MetricField& metric,
                                  const std::vector<Point>& pts);

//! Halton points restricted to a band |f - level| < band.
std::vector<Point> sample_level_band(const RHInstance& inst, double level,
                                     double band, int count,
                                     std::uint64_t seed);

}  // namespace rhlab

#endif
