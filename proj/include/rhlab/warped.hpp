#ifndef RHLAB_WARPED_HPP
#define RHLAB_WARPED_HPP

#include <map>
#include <string>
#include <vector>

#include "rhlab/verifier.hpp"

namespace rhlab {

enum class WarpedCase { A, B, Product };

//! Declarative warped product g1 (+) phi^2 g2 with f = f1 * f2.
struct WarpedSpec {
  MetricField base;    // (M1, g1)
  MetricField fiber;   // (M2, g2)
  ScalarField warp;    // phi > 0 on M1
  ScalarField f1;      // on M1
  ScalarField f2;      // on M2
  WarpedCase case_tag = WarpedCase::Product;
  std::string label;

  int n1() const { return base.dim; }
  int n2() const { return fiber.dim; }
};

struct WarpedReport {
  std::map<std::string, double> max_residual;
  std::map<std::string, double> stats;
  std::map<std::string, std::string> verdicts;
};

//! Product-chart metric [[g1,0],[0,phi^2 g2]] and f(x1,x2) = f1 f2.
RHInstance assemble(const WarpedSpec& spec);

//! Ricci blocks of the assembled metric from the closed warped-product
//! formulas (base: Ric_1 - n2/phi Hess phi; fiber:
//! phi^-2 Ric_2 + (Delta phi/phi - (n2-1)|grad phi|^2/phi^2) Id).
struct BesseBlocks {
  Eigen::MatrixXd base_block;   // endomorphism on TM1
  Eigen::MatrixXd fiber_block;  // endomorphism on TM2 (coefficient of X2)
};
BesseBlocks besse_ricci(const WarpedSpec& spec, const Point& base_pt,
                        const Point& fiber_pt);

//! Max block difference between closed-form and numeric Ricci of assemble().
double besse_crosscheck(const WarpedSpec& spec, const Point& base_pt,
                        const Point& fiber_pt);

//! mu1(f1) = (n2-2)|grad f1|^2 - f1 Delta f1 on the base.
double mu1_value(const WarpedSpec& spec, const Point& base_pt);
//! mu1' = -(phi/f1) g1(grad f1, grad phi) + (n2-1)|grad phi|^2 - phi Delta phi.
double mu1_prime_value(const WarpedSpec& spec, const Point& base_pt);
//! mu2(f2) = 2|grad f2|^2 + f2 Delta f2 - mu1 f2^2 on the fiber.
double mu2_value(const WarpedSpec& spec, const Point& fiber_pt, double mu1);

struct CaseAResiduals {
  double res_base = 0.0;   // ||(n2-1) Hess f1 - f1 Ric_1||
  double res_fiber = 0.0;  // ||Hess f2 - f2 (mu1 Id - Ric_2)||
  double mu1_mean = 0.0;
  double mu1_spread = 0.0;
};
CaseAResiduals case_a_residuals(const WarpedSpec& spec,
                                const std::vector<Point>& base_pts,
                                const std::vector<Point>& fiber_pts);

struct CaseBResiduals {
  double res_base = 0.0;        // ||Hess f1 + f1 (Ric_1 - n2/phi Hess phi)||
  double einstein_fiber = 0.0;  // ||Ric_2 - mu1' Id||
  double mu1p_mean = 0.0;
  double mu1p_spread = 0.0;
};
CaseBResiduals case_b_residuals(const WarpedSpec& spec,
                                const std::vector<Point>& base_pts,
                                const std::vector<Point>& fiber_pts);

struct MuRelationResult {
  double max_residual = 0.0;     // |mu(f) - n2 |grad f1|^2 f2^2 - mu2(f2)|
  double grad_f1_spread = 0.0;   // spread of |grad f1| over base samples
  bool flagged = false;          // nonconstant |grad f1|: relation not certified
};
MuRelationResult mu_relation_check(const WarpedSpec& spec,
                                   const std::vector<Point>& base_pts,
                                   const std::vector<Point>& fiber_pts);

struct ProductSplitResult {
  double extended_residual = 0.0;  // max rh residual of the trivial extension
  double base_ric_norm = 0.0;
};
ProductSplitResult product_split_check(const MetricField& g1,
                                       const MetricField& g2,
                                       const ScalarField& f2,
                                       const std::vector<Point>& pts_product);

}  // namespace rhlab

#endif
