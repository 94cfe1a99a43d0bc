#ifndef RHLAB_CATALOG_HPP
#define RHLAB_CATALOG_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rhlab/verifier.hpp"
#include "rhlab/warped.hpp"

namespace rhlab {

using Params = std::map<std::string, double>;

struct CatalogEntry {
  std::string name;
  Params params;
  std::vector<std::string> tags;
  std::function<RHInstance()> build;
  std::map<std::string, std::string> expected;  // check name -> pass|fail
  std::string note;
};

//! Model space by name; the returned instance has a constant placeholder f.
//! Names: euclidean(n), sphere2, hyperbolic2_halfplane, hyperbolic2_warped,
//! cylinder, flat_torus(n), product(of, with), schwarzschild3(m),
//! conformal_flat3(u), hyperbolic3_poisson.
RHInstance make_space(const std::string& name, const Params& params);

//! Solution candidate paired to a space. Names: affine(a0..,b), linear_form
//! (a,b,c), tashiro_cosh/sinh/exp, exp_t, static_potential, conformal_exp,
//! poisson_radial, constant(c), sphere_z2 (negative control), extended_z.
ScalarField make_solution(const std::string& name, const Params& params,
                          const RHInstance& space);

//! Product space of two built spaces; metric blocks concatenate, J present
//! when both factors supply one (or with_j forces the standard product J).
RHInstance product_space(const RHInstance& a, const RHInstance& b,
                         bool with_j = false);

//! Trivial extension of a fiber solution to a product chart.
ScalarField extend_to_product(const ScalarField& f_fiber, int base_dim,
                              bool fiber_second);

const std::vector<CatalogEntry>& list_catalog();
std::vector<CatalogEntry> list_catalog(const std::string& tag);
const CatalogEntry& catalog_entry(const std::string& name);

//! Named warped-product fixtures (cases of the product reduction, positive
//! and negative); composable in scenario files by name.
WarpedSpec warped_entry(const std::string& name);
std::vector<std::string> list_warped_entries();

}  // namespace rhlab

#endif
