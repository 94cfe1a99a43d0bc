#include "rhlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "rhlab/errors.hpp"

namespace rhlab {

namespace {

Jet jconst(const JetVec& x, double v) {
  return Jet::constant(x[0].dim(), x[0].order(), v);
}

JetMat zero_mat(const JetVec& x, int n) {
  return JetMat(n, std::vector<Jet>(n, jconst(x, 0.0)));
}

double get_param(const Params& p, const std::string& key, double fallback,
                 bool required = false) {
  auto it = p.find(key);
  if (it != p.end()) return it->second;
  if (required) throw Error(ErrorCode::BadParams, "missing parameter " + key);
  return fallback;
}

// ---- metric builders ----

MetricField euclidean_metric(int n, double half_width = 1.5) {
  if (n < 1 || n > 4) throw Error(ErrorCode::BadParams, "euclidean dim 1..4");
  MetricField g;
  g.dim = n;
  g.label = "euclidean" + std::to_string(n);
  g.domain = make_box(Point(n, -half_width), Point(n, half_width));
  g.periodic_axes.assign(n, false);
  g.components = [n](const JetVec& x) {
    JetMat m = zero_mat(x, n);
    for (int i = 0; i < n; ++i) m[i][i] = jconst(x, 1.0);
    return m;
  };
  return g;
}

MetricField sphere2_metric() {
  MetricField g;
  g.dim = 2;
  g.label = "sphere2";
  g.domain = make_box({0.05, -3.09}, {M_PI - 0.05, 3.09});
  g.periodic_axes = {false, false};
  g.components = [](const JetVec& x) {
    JetMat m = zero_mat(x, 2);
    m[0][0] = jconst(x, 1.0);
    Jet s = sin(x[0]);
    m[1][1] = s * s;
    return m;
  };
  return g;
}

MetricField halfplane_metric() {
  MetricField g;
  g.dim = 2;
  g.label = "hyperbolic2_halfplane";
  g.domain = make_box({-2.0, 0.1}, {2.0, 3.0});
  g.periodic_axes = {false, false};
  g.components = [](const JetVec& x) {
    JetMat m = zero_mat(x, 2);
    Jet inv_y2 = 1.0 / (x[1] * x[1]);
    m[0][0] = inv_y2;
    m[1][1] = inv_y2;
    return m;
  };
  return g;
}

MetricField warped_h2_metric() {
  MetricField g;
  g.dim = 2;
  g.label = "hyperbolic2_warped";
  g.domain = make_box({-1.2, -1.5}, {1.2, 1.5});
  g.periodic_axes = {false, false};
  g.components = [](const JetVec& x) {
    JetMat m = zero_mat(x, 2);
    m[0][0] = jconst(x, 1.0);
    m[1][1] = exp(2.0 * x[0]);
    return m;
  };
  return g;
}

MetricField cylinder_metric() {
  MetricField g = euclidean_metric(2);
  g.label = "cylinder";
  g.domain = make_box({-1.5, -M_PI}, {1.5, M_PI});
  g.periodic_axes = {false, true};
  return g;
}

MetricField flat_torus_metric(int n) {
  MetricField g = euclidean_metric(n);
  g.label = "flat_torus" + std::to_string(n);
  g.domain = make_box(Point(n, -M_PI), Point(n, M_PI));
  g.periodic_axes.assign(n, true);
  return g;
}

// geodesic polar chart on the 3-sphere of sectional curvature kappa
MetricField sphere3_metric(double kappa) {
  MetricField g;
  g.dim = 3;
  g.label = "sphere3";
  const double rk = std::sqrt(kappa);
  g.domain = make_box({0.25, 0.25, -2.9},
                      {std::min(2.8, M_PI / rk - 0.25), M_PI - 0.25, 2.9});
  g.periodic_axes = {false, false, false};
  g.components = [kappa, rk](const JetVec& x) {
    Jet s = sin(rk * x[0]);
    Jet w = (s * s) / kappa;
    Jet st = sin(x[1]);
    JetMat m = zero_mat(x, 3);
    m[0][0] = jconst(x, 1.0);
    m[1][1] = w;
    m[2][2] = w * st * st;
    return m;
  };
  return g;
}

MetricField schwarzschild_metric(double m) {
  if (!(m > 0)) throw Error(ErrorCode::BadParams, "schwarzschild needs m > 0");
  MetricField g;
  g.dim = 3;
  g.label = "schwarzschild3";
  g.domain = make_box(Point(3, -10.0 * m), Point(3, 10.0 * m));
  g.domain.exclusions.push_back(
      {"r <= 0.6m", [m](const Point& p) {
         return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) <= 0.6 * m;
       }});
  g.domain.exclusions.push_back(
      {"r >= 10m", [m](const Point& p) {
         return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) >= 10.0 * m;
       }});
  g.periodic_axes = {false, false, false};
  g.components = [m](const JetVec& x) {
    Jet r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    Jet r = sqrt(r2);
    Jet w = 1.0 + (0.5 * m) / r;
    Jet w4 = (w * w) * (w * w);
    JetMat out = zero_mat(x, 3);
    for (int i = 0; i < 3; ++i) out[i][i] = w4;
    return out;
  };
  return g;
}

// harmonic functions used by the conformally flat family
Jet harmonic_u(int choice, const JetVec& x) {
  switch (choice) {
    case 0: return 0.7 * x[0];
    case 1: return x[0] * x[1];
    case 2: return x[0] * x[0] - x[1] * x[1];
    default: throw Error(ErrorCode::BadParams, "conformal_flat3 u in {0,1,2}");
  }
}

MetricField conformal_flat3_metric(int choice) {
  MetricField g;
  g.dim = 3;
  g.label = "conformal_flat3#" + std::to_string(choice);
  g.domain = make_box(Point(3, -0.8), Point(3, 0.8));
  g.periodic_axes = {false, false, false};
  g.components = [choice](const JetVec& x) {
    Jet factor = exp(-2.0 * harmonic_u(choice, x));
    JetMat m = zero_mat(x, 3);
    for (int i = 0; i < 3; ++i) m[i][i] = factor;
    return m;
  };
  return g;
}

// ---- radial Poisson profile on H^3 (Delta u = -2, geometer sign) ----
//
// u'' + 2 coth(r) u' = 2, regular at the origin (series u ~ r^2/3).
// Integrated once with a fixed-step RK4 and cached; the unit tests check the
// profile against the closed form r coth(r) - 1.
struct PoissonProfile {
  std::vector<double> r, u, du;
  double r_min = 0.0, r_max = 0.0;

  double eval_u(double rq) const { return hermite(rq, false); }
  double eval_du(double rq) const { return hermite(rq, true); }

  static double rhs(double r, double du) {
    return 2.0 - 2.0 * (std::cosh(r) / std::sinh(r)) * du;
  }

  double hermite(double rq, bool deriv) const {
    auto it = std::upper_bound(r.begin(), r.end(), rq);
    std::size_t i = it == r.begin() ? 0 : (it - r.begin()) - 1;
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double h = r[i + 1] - r[i];
    const double s = (rq - r[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    if (!deriv)
      return h00 * u[i] + h10 * h * du[i] + h01 * u[i + 1] +
             h11 * h * du[i + 1];
    const double m0 = rhs(r[i], du[i]);
    const double m1 = rhs(r[i + 1], du[i + 1]);
    return h00 * du[i] + h10 * h * m0 + h01 * du[i + 1] + h11 * h * m1;
  }
};

std::shared_ptr<const PoissonProfile> poisson_profile() {
  static std::shared_ptr<const PoissonProfile> cached = [] {
    auto prof = std::make_shared<PoissonProfile>();
    const double r0 = 1e-4, r1 = 2.1, h = 5e-4;
    prof->r_min = r0;
    prof->r_max = r1;
    double r = r0;
    double y = r0 * r0 / 3.0 - r0 * r0 * r0 * r0 / 45.0;
    double dy = 2.0 * r0 / 3.0 - 4.0 * r0 * r0 * r0 / 45.0;
    prof->r.push_back(r);
    prof->u.push_back(y);
    prof->du.push_back(dy);
    while (r < r1) {
      const double k1y = dy, k1d = PoissonProfile::rhs(r, dy);
      const double k2y = dy + 0.5 * h * k1d,
                   k2d = PoissonProfile::rhs(r + 0.5 * h, dy + 0.5 * h * k1d);
      const double k3y = dy + 0.5 * h * k2d,
                   k3d = PoissonProfile::rhs(r + 0.5 * h, dy + 0.5 * h * k2d);
      const double k4y = dy + h * k3d,
                   k4d = PoissonProfile::rhs(r + h, dy + h * k3d);
      y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
      dy += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
      r += h;
      prof->r.push_back(r);
      prof->u.push_back(y);
      prof->du.push_back(dy);
    }
    return prof;
  }();
  return cached;
}

Jet poisson_u_jet(const Jet& r) {
  auto prof = poisson_profile();
  const double rv = r.value();
  const double u = prof->eval_u(rv);
  const double du = prof->eval_du(rv);
  const double coth = std::cosh(rv) / std::sinh(rv);
  const double csch2 = 1.0 / (std::sinh(rv) * std::sinh(rv));
  const double d2 = 2.0 - 2.0 * coth * du;
  const double d3 = 2.0 * csch2 * du - 2.0 * coth * d2;
  const double d4 = -4.0 * csch2 * coth * du + 4.0 * csch2 * d2 - 2.0 * coth * d3;
  double p[5] = {u, du, d2, d3, d4};
  return Jet::compose(r, p);
}

MetricField hyperbolic3_poisson_metric() {
  MetricField g;
  g.dim = 3;
  g.label = "hyperbolic3_poisson";
  g.domain = make_box({0.15, 0.25, -2.9}, {1.8, M_PI - 0.25, 2.9});
  g.periodic_axes = {false, false, false};
  g.components = [](const JetVec& x) {
    Jet factor = exp(-2.0 * poisson_u_jet(x[0]));
    Jet sh = sinh(x[0]);
    Jet st = sin(x[1]);
    JetMat m = zero_mat(x, 3);
    m[0][0] = factor;
    m[1][1] = factor * sh * sh;
    m[2][2] = factor * sh * sh * st * st;
    return m;
  };
  return g;
}

// ---- almost-complex structures ----

std::function<Eigen::MatrixXd(const Point&)> sphere2_J() {
  return [](const Point& p) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2, 2);
    const double s = std::sin(p[0]);
    J(1, 0) = 1.0 / s;
    J(0, 1) = -s;
    return J;
  };
}

std::function<Eigen::MatrixXd(const Point&)> flat_J() {
  return [](const Point&) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2, 2);
    J(1, 0) = 1.0;
    J(0, 1) = -1.0;
    return J;
  };
}

// ---- name normalization ----

struct SpaceName {
  std::string base;
  Params params;
};

SpaceName normalize(const std::string& name, const Params& params) {
  SpaceName out{name, params};
  auto suffix_dim = [&](const std::string& prefix) -> bool {
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
      out.base = prefix;
      out.params["n"] = std::stod(name.substr(prefix.size()));
      return true;
    }
    return false;
  };
  if (suffix_dim("euclidean")) return out;
  if (name.rfind("flat_torus", 0) == 0 && name != "flat_torus")
    if (suffix_dim("flat_torus")) return out;
  return out;
}

}  // namespace

RHInstance make_space(const std::string& raw_name, const Params& raw_params) {
  // composite product(a,b)
  if (raw_name.rfind("product(", 0) == 0 && raw_name.back() == ')') {
    const std::string inner = raw_name.substr(8, raw_name.size() - 9);
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos)
      throw Error(ErrorCode::BadParams, "product(a,b) needs two factors");
    RHInstance a = make_space(inner.substr(0, split), raw_params);
    RHInstance b = make_space(inner.substr(split + 1), raw_params);
    const bool with_j = raw_params.count("with_j")
                            ? raw_params.at("with_j") != 0.0
                            : (a.J.has_value() && b.metric.dim == 2);
    return product_space(a, b, with_j);
  }

  SpaceName sn = normalize(raw_name, raw_params);
  RHInstance inst;
  inst.f = scalar_constant("one", 1.0);

  if (sn.base == "euclidean") {
    const int n = static_cast<int>(get_param(sn.params, "n", 0, true));
    inst.metric = euclidean_metric(n);
    if (n == 2) inst.J = flat_J();
  } else if (sn.base == "sphere2") {
    inst.metric = sphere2_metric();
    inst.J = sphere2_J();
  } else if (sn.base == "hyperbolic2_halfplane") {
    inst.metric = halfplane_metric();
  } else if (sn.base == "hyperbolic2_warped") {
    inst.metric = warped_h2_metric();
  } else if (sn.base == "cylinder") {
    inst.metric = cylinder_metric();
  } else if (sn.base == "flat_torus") {
    const int n = static_cast<int>(get_param(sn.params, "n", 0, true));
    inst.metric = flat_torus_metric(n);
    if (n == 2) inst.J = flat_J();
  } else if (sn.base == "interval") {
    const double lo = get_param(sn.params, "lo", -1.0);
    const double hi = get_param(sn.params, "hi", 1.0);
    if (!(lo < hi)) throw Error(ErrorCode::BadParams, "interval needs lo < hi");
    inst.metric = euclidean_metric(1);
    inst.metric.label = "interval";
    inst.metric.domain = make_box({lo}, {hi});
  } else if (sn.base == "sphere3") {
    const double kappa = get_param(sn.params, "kappa", 1.0);
    if (!(kappa > 0)) throw Error(ErrorCode::BadParams, "sphere3 needs kappa > 0");
    inst.metric = sphere3_metric(kappa);
  } else if (sn.base == "schwarzschild3") {
    inst.metric = schwarzschild_metric(get_param(sn.params, "m", 1.0));
  } else if (sn.base == "conformal_flat3") {
    inst.metric =
        conformal_flat3_metric(static_cast<int>(get_param(sn.params, "u", 1)));
  } else if (sn.base == "hyperbolic3_poisson") {
    inst.metric = hyperbolic3_poisson_metric();
  } else {
    throw Error(ErrorCode::UnknownEntry, "unknown space " + raw_name);
  }
  inst.label = inst.metric.label;
  return inst;
}

RHInstance product_space(const RHInstance& a, const RHInstance& b,
                         bool with_j) {
  RHInstance out;
  const int n1 = a.metric.dim, n2 = b.metric.dim, n = n1 + n2;
  out.metric.dim = n;
  out.metric.label = "product(" + a.metric.label + "," + b.metric.label + ")";
  Point lower = a.metric.domain.lower, upper = a.metric.domain.upper;
  lower.insert(lower.end(), b.metric.domain.lower.begin(),
               b.metric.domain.lower.end());
  upper.insert(upper.end(), b.metric.domain.upper.begin(),
               b.metric.domain.upper.end());
  out.metric.domain = make_box(lower, upper);
  for (const auto& e : a.metric.domain.exclusions)
    out.metric.domain.exclusions.push_back(
        {e.name, [e, n1](const Point& p) {
           return e.rejects(Point(p.begin(), p.begin() + n1));
         }});
  for (const auto& e : b.metric.domain.exclusions)
    out.metric.domain.exclusions.push_back(
        {e.name, [e, n1](const Point& p) {
           return e.rejects(Point(p.begin() + n1, p.end()));
         }});
  out.metric.periodic_axes = a.metric.periodic_axes;
  out.metric.periodic_axes.insert(out.metric.periodic_axes.end(),
                                  b.metric.periodic_axes.begin(),
                                  b.metric.periodic_axes.end());
  auto ca = a.metric.components;
  auto cb = b.metric.components;
  out.metric.components = [ca, cb, n1, n2, n](const JetVec& x) {
    JetMat m = zero_mat(x, n);
    JetVec xa(x.begin(), x.begin() + n1);
    JetVec xb(x.begin() + n1, x.end());
    JetMat ma = ca(xa);
    JetMat mb = cb(xb);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) m[i][j] = ma[i][j];
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) m[n1 + i][n1 + j] = mb[i][j];
    return m;
  };
  out.f = scalar_constant("one", 1.0);
  out.label = out.metric.label;
  if (with_j) {
    if (!a.J || !b.J)
      throw Error(ErrorCode::BadParams, "product J needs J on both factors");
    auto Ja = *a.J;
    auto Jb = *b.J;
    out.J = [Ja, Jb, n1, n2, n](const Point& p) {
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
      J.topLeftCorner(n1, n1) = Ja(Point(p.begin(), p.begin() + n1));
      J.bottomRightCorner(n2, n2) = Jb(Point(p.begin() + n1, p.end()));
      return J;
    };
  }
  return out;
}

ScalarField extend_to_product(const ScalarField& f_fiber, int base_dim,
                              bool fiber_second) {
  auto fn = f_fiber.eval;
  std::string label = f_fiber.label + "#extended";
  if (fiber_second)
    return scalar_from(label, [fn, base_dim](const JetVec& x) {
      return fn(JetVec(x.begin() + base_dim, x.end()));
    });
  return scalar_from(label, [fn, base_dim](const JetVec& x) {
    return fn(JetVec(x.begin(), x.begin() + base_dim));
  });
}

ScalarField make_solution(const std::string& name, const Params& params,
                          const RHInstance& space) {
  const std::string& sp = space.label;
  auto require_space = [&](const std::string& prefix) {
    if (sp.rfind(prefix, 0) != 0)
      throw Error(ErrorCode::IncompatiblePair,
                  name + " is not defined on " + sp);
  };

  if (name == "constant")
    return scalar_constant("constant", get_param(params, "c", 1.0));

  if (name == "affine") {
    const int n = space.metric.dim;
    std::vector<double> a(n, 0.0);
    for (int i = 0; i < n; ++i)
      a[i] = get_param(params, "a" + std::to_string(i), 0.0);
    const double b = get_param(params, "b", 0.0);
    for (int i = 0; i < n; ++i)
      if (a[i] != 0.0 && space.metric.periodic_axes[i])
        throw Error(ErrorCode::IncompatiblePair,
                    "affine slope along a periodic axis");
    return scalar_from("affine", [a, b](const JetVec& x) {
      Jet s = jconst(x, b);
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
      return s;
    });
  }

  if (name == "linear_form") {
    require_space("sphere2");
    const double a = get_param(params, "a", 0.0);
    const double b = get_param(params, "b", 0.0);
    const double c = get_param(params, "c", 1.0);
    return scalar_from("linear_form", [a, b, c](const JetVec& x) {
      return a * sin(x[0]) * cos(x[1]) + b * sin(x[0]) * sin(x[1]) +
             c * cos(x[0]);
    });
  }

  if (name == "sphere_z2") {
    require_space("sphere2");
    return scalar_from("z^2", [](const JetVec& x) {
      Jet z = cos(x[0]);
      return z * z;
    });
  }

  if (name == "tashiro_cosh") {
    require_space("hyperbolic2_halfplane");
    return scalar_from("tashiro_cosh", [](const JetVec& x) {
      return (x[0] * x[0] + x[1] * x[1] + 1.0) / (2.0 * x[1]);
    });
  }
  if (name == "tashiro_sinh") {
    require_space("hyperbolic2_halfplane");
    return scalar_from("tashiro_sinh",
                       [](const JetVec& x) { return x[0] / x[1]; });
  }
  if (name == "tashiro_exp") {
    require_space("hyperbolic2_halfplane");
    return scalar_from("tashiro_exp",
                       [](const JetVec& x) { return 1.0 / x[1]; });
  }

  if (name == "exp_t") {
    require_space("hyperbolic2_warped");
    return scalar_from("exp_t", [](const JetVec& x) { return exp(x[0]); });
  }

  if (name == "static_potential") {
    require_space("schwarzschild3");
    const double m = get_param(params, "m", 1.0);
    return scalar_from("static_potential", [m](const JetVec& x) {
      Jet r = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      return (1.0 - (0.5 * m) / r) / (1.0 + (0.5 * m) / r);
    });
  }

  if (name == "conformal_exp") {
    require_space("conformal_flat3");
    int choice = static_cast<int>(get_param(params, "u", -1));
    if (choice < 0) {
      // infer from the space label conformal_flat3#k
      choice = sp.back() - '0';
    }
    return scalar_from("exp(-u)", [choice](const JetVec& x) {
      return exp(-harmonic_u(choice, x));
    });
  }

  if (name == "poisson_radial") {
    require_space("hyperbolic3_poisson");
    return scalar_from("exp(-u(r))", [](const JetVec& x) {
      return exp(-poisson_u_jet(x[0]));
    });
  }

  if (name == "coordinate_square") {
    const int i = static_cast<int>(get_param(params, "i", 0));
    if (i < 0 || i >= space.metric.dim)
      throw Error(ErrorCode::BadParams, "coordinate index out of range");
    return scalar_from("x" + std::to_string(i) + "^2",
                       [i](const JetVec& x) { return x[i] * x[i]; });
  }

  if (name == "exp_scale") {
    if (space.metric.dim != 1)
      throw Error(ErrorCode::IncompatiblePair, "exp_scale needs a 1-d chart");
    const double A = get_param(params, "A", 1.0);
    const double rate = get_param(params, "rate", 1.0);
    return scalar_from("exp_scale", [A, rate](const JetVec& x) {
      return A * exp(rate * x[0]);
    });
  }

  if (name == "cosh_ax") {
    if (space.metric.dim != 1)
      throw Error(ErrorCode::IncompatiblePair, "cosh_ax needs a 1-d chart");
    const double A = get_param(params, "A", 1.0);
    const double mu1 = get_param(params, "mu1", 1.0);
    const double phi = get_param(params, "phi", 0.0);
    if (!(mu1 > 0)) throw Error(ErrorCode::BadParams, "cosh_ax needs mu1 > 0");
    const double rate = std::sqrt(mu1) / A;
    return scalar_from("cosh_ax", [A, rate, phi](const JetVec& x) {
      return A * cosh(rate * x[0] + phi);
    });
  }

  if (name == "sphere3_cosr") {
    require_space("sphere3");
    const double kappa = get_param(params, "kappa", 1.0);
    const double rk = std::sqrt(kappa);
    return scalar_from("cos(sqrt(kappa) r)",
                       [rk](const JetVec& x) { return cos(rk * x[0]); });
  }

  if (name == "extended_z") {
    require_space("product(sphere2");
    ScalarField z = scalar_from("z", [](const JetVec& x) { return cos(x[0]); });
    ScalarField out = extend_to_product(z, 2, false);
    out.label = "extended_z";
    return out;
  }

  if (name == "extended_cosh") {
    require_space("product(hyperbolic2_halfplane");
    ScalarField c = scalar_from("cosh", [](const JetVec& x) {
      return (x[0] * x[0] + x[1] * x[1] + 1.0) / (2.0 * x[1]);
    });
    ScalarField out = extend_to_product(c, 2, false);
    out.label = "extended_cosh";
    return out;
  }

  if (name == "extended_z_second") {
    // z on a second sphere factor (negative-control pairing)
    const int base_dim = space.metric.dim - 2;
    ScalarField z = scalar_from("z", [](const JetVec& x) { return cos(x[0]); });
    ScalarField out = extend_to_product(z, base_dim, true);
    out.label = "extended_z_second";
    return out;
  }

  throw Error(ErrorCode::UnknownEntry, "unknown solution " + name);
}

namespace {

CatalogEntry pair_entry(const std::string& entry_name,
                        const std::string& space, const Params& sp,
                        const std::string& solution, const Params& fp,
                        std::vector<std::string> tags,
                        std::map<std::string, std::string> expected,
                        const std::string& note) {
  CatalogEntry e;
  e.name = entry_name;
  e.params = sp;
  for (const auto& [k, v] : fp) e.params["f." + k] = v;
  e.tags = std::move(tags);
  e.expected = std::move(expected);
  e.note = note;
  e.build = [space, sp, solution, fp, entry_name]() {
    RHInstance inst = make_space(space, sp);
    inst.f = make_solution(solution, fp, inst);
    inst.label = entry_name;
    return inst;
  };
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;
  const std::map<std::string, std::string> pass_rh = {{"rh_residual", "pass"}};
  const std::map<std::string, std::string> fail_rh = {{"rh_residual", "fail"}};

  entries.push_back(pair_entry(
      "euclidean2_affine", "euclidean", {{"n", 2}}, "affine",
      {{"a0", 1.0}, {"a1", -0.5}, {"b", 0.25}}, {"constant-S", "flat"},
      {{"rh_residual", "pass"}, {"mu_constancy", "pass"}},
      "flat plane with an affine function; both sides of the equation vanish"));
  entries.push_back(pair_entry(
      "euclidean3_affine", "euclidean", {{"n", 3}}, "affine",
      {{"a0", 0.5}, {"a1", 1.0}, {"a2", -0.25}, {"b", 1.0}},
      {"constant-S", "flat"}, {{"rh_residual", "pass"}},
      "flat 3-space with an affine function"));
  entries.push_back(pair_entry(
      "sphere2_obata", "sphere2", {}, "linear_form",
      {{"a", 0.0}, {"b", 0.0}, {"c", 1.0}}, {"constant-S", "kahler"},
      {{"rh_residual", "pass"},
       {"mu_constancy", "pass"},
       {"identity_suite", "pass"}},
      "round 2-sphere with the height function, the Obata solution; mu = 2"));
  entries.push_back(pair_entry(
      "sphere2_z2", "sphere2", {}, "sphere_z2", {}, {"constant-S", "negative"},
      fail_rh, "height squared on the sphere; not a solution (control)"));
  entries.push_back(pair_entry(
      "hyperbolic2_cosh", "hyperbolic2_halfplane", {}, "tashiro_cosh", {},
      {"constant-S"}, {{"rh_residual", "pass"}, {"mu_constancy", "pass"}},
      "hyperbolic plane, cosh of the distance to i; Tashiro solution, mu = -2"));
  entries.push_back(pair_entry(
      "hyperbolic2_sinh", "hyperbolic2_halfplane", {}, "tashiro_sinh", {},
      {"constant-S"}, pass_rh,
      "hyperbolic plane, x/y; sinh-type Tashiro solution, mu = 2"));
  entries.push_back(pair_entry(
      "hyperbolic2_exp", "hyperbolic2_halfplane", {}, "tashiro_exp", {},
      {"constant-S"}, pass_rh,
      "hyperbolic plane, 1/y; exponential along horocycles, mu = 0"));
  entries.push_back(pair_entry(
      "hyperbolic2_warped_exp", "hyperbolic2_warped", {}, "exp_t", {},
      {"constant-S"}, pass_rh,
      "hyperbolic plane in exponential-warp coordinates, f = e^t; mu = 0"));
  entries.push_back(pair_entry(
      "cylinder_affine", "cylinder", {}, "affine", {{"a0", 1.0}, {"b", 0.0}},
      {"constant-S", "flat"}, pass_rh,
      "flat cylinder with an affine function along the line factor"));
  entries.push_back(pair_entry(
      "flat_torus2_constant", "flat_torus", {{"n", 2}}, "constant",
      {{"c", 2.0}}, {"constant-S", "flat", "kahler"}, pass_rh,
      "closed flat torus; constants are the only solutions"));
  entries.push_back(pair_entry(
      "s2xt2_obata", "product(sphere2,flat_torus2)", {}, "extended_z", {},
      {"constant-S", "kahler", "product"},
      {{"rh_residual", "pass"},
       {"ricci_spectrum", "pass"},
       {"codazzi_traces", "pass"},
       {"kahler", "pass"},
       {"level_set", "pass"}},
      "sphere times flat torus, height function extended trivially"));
  entries.push_back(pair_entry(
      "h2xt2_cosh", "product(hyperbolic2_halfplane,flat_torus2)", {},
      "extended_cosh", {}, {"constant-S", "product"},
      {{"rh_residual", "pass"}, {"ricci_spectrum", "pass"}},
      "hyperbolic plane times flat torus, Tashiro solution extended"));
  entries.push_back(pair_entry(
      "s2xs2_split", "product(sphere2,sphere2)", {}, "extended_z_second", {},
      {"constant-S", "negative", "product"}, fail_rh,
      "sphere times sphere; the base is not Ricci-flat, so the trivial "
      "extension fails (control)"));
  entries.push_back(pair_entry(
      "schwarzschild3_static", "schwarzschild3", {{"m", 1.0}},
      "static_potential", {{"m", 1.0}}, {"constant-S", "static"},
      {{"static_equation", "pass"}, {"rh_residual", "fail"}},
      "outer Schwarzschild slice with its static potential; scalar-flat, "
      "satisfies the + sign static equation instead"));
  entries.push_back(pair_entry(
      "conformal_flat3_linear", "conformal_flat3", {{"u", 0}}, "conformal_exp",
      {{"u", 0}}, {"conformal"},
      {{"rh_residual", "pass"}, {"conformal_check", "pass"}},
      "e^{-2u} flat metric with f = e^{-u}, u linear"));
  entries.push_back(pair_entry(
      "conformal_flat3_xy", "conformal_flat3", {{"u", 1}}, "conformal_exp",
      {{"u", 1}}, {"conformal"},
      {{"rh_residual", "pass"},
       {"conformal_check", "pass"},
       {"identity_suite", "pass"}},
      "e^{-2u} flat metric with f = e^{-u}, u = x1 x2 harmonic; nonconstant "
      "scalar curvature"));
  entries.push_back(pair_entry(
      "conformal_flat3_x2my2", "conformal_flat3", {{"u", 2}}, "conformal_exp",
      {{"u", 2}}, {"conformal"},
      {{"rh_residual", "pass"}, {"conformal_check", "pass"}},
      "e^{-2u} flat metric with f = e^{-u}, u = x1^2 - x2^2 harmonic"));
  entries.push_back(pair_entry(
      "hyperbolic3_poisson", "hyperbolic3_poisson", {}, "poisson_radial", {},
      {"conformal"}, pass_rh,
      "conformal change of hyperbolic 3-space by a radial solution of the "
      "Poisson equation Delta u = -2"));
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& list_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

std::vector<CatalogEntry> list_catalog(const std::string& tag) {
  std::vector<CatalogEntry> out;
  for (const auto& e : list_catalog())
    for (const auto& t : e.tags)
      if (t == tag) {
        out.push_back(e);
        break;
      }
  return out;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : list_catalog())
    if (e.name == name) return e;
  throw Error(ErrorCode::UnknownEntry, "no catalog entry named " + name);
}

namespace {

WarpedSpec make_warped(const std::string& label, WarpedCase tag,
                       const std::string& base, const Params& base_p,
                       const std::string& fiber, const Params& fiber_p,
                       const std::string& warp, const Params& warp_p,
                       const std::string& f1, const Params& f1_p,
                       const std::string& f2, const Params& f2_p) {
  RHInstance b = make_space(base, base_p);
  RHInstance f = make_space(fiber, fiber_p);
  WarpedSpec spec;
  spec.base = b.metric;
  spec.fiber = f.metric;
  spec.warp = make_solution(warp, warp_p, b);
  spec.f1 = make_solution(f1, f1_p, b);
  spec.f2 = make_solution(f2, f2_p, f);
  spec.case_tag = tag;
  spec.label = label;
  return spec;
}

}  // namespace

WarpedSpec warped_entry(const std::string& name) {
  // case (a) positives
  if (name == "wa_hyperbolic_b1")
    return make_warped(name, WarpedCase::A, "interval",
                       {{"lo", -1.2}, {"hi", 1.2}}, "interval",
                       {{"lo", -1.2}, {"hi", 1.2}}, "exp_scale",
                       {{"A", 1.0}, {"rate", 1.0}}, "exp_scale",
                       {{"A", 1.0}, {"rate", 1.0}}, "affine",
                       {{"a0", 0.7}, {"b", 0.1}});
  if (name == "wa_const_s2")
    return make_warped(name, WarpedCase::A, "flat_torus", {{"n", 2}},
                       "sphere2", {}, "constant", {{"c", 1.0}}, "constant",
                       {{"c", 1.0}}, "linear_form",
                       {{"a", 0.0}, {"b", 0.0}, {"c", 1.0}});
  if (name == "wa_const_h2")
    return make_warped(name, WarpedCase::A, "flat_torus", {{"n", 2}},
                       "hyperbolic2_halfplane", {}, "constant", {{"c", 2.0}},
                       "constant", {{"c", 2.0}}, "tashiro_cosh", {});
  if (name == "wa_affine_s3")
    return make_warped(name, WarpedCase::A, "interval",
                       {{"lo", -1.0}, {"hi", 1.0}}, "sphere3", {{"kappa", 1.0}},
                       "affine", {{"a0", 1.0}, {"b", 2.0}}, "affine",
                       {{"a0", 1.0}, {"b", 2.0}}, "sphere3_cosr",
                       {{"kappa", 1.0}});
  if (name == "wa_a1_cosh")
    return make_warped(name, WarpedCase::A, "interval",
                       {{"lo", -1.0}, {"hi", 1.0}}, "interval",
                       {{"lo", -1.0}, {"hi", 1.0}}, "cosh_ax",
                       {{"A", 1.0}, {"mu1", 1.0}}, "cosh_ax",
                       {{"A", 1.0}, {"mu1", 1.0}}, "exp_scale",
                       {{"A", 1.0}, {"rate", 1.0}});
  // case (a) negative: wrong fiber curvature for the given mu1
  if (name == "wa_wrong_kappa")
    return make_warped(name, WarpedCase::A, "interval",
                       {{"lo", -1.0}, {"hi", 1.0}}, "sphere3", {{"kappa", 2.0}},
                       "affine", {{"a0", 1.0}, {"b", 2.0}}, "affine",
                       {{"a0", 1.0}, {"b", 2.0}}, "sphere3_cosr",
                       {{"kappa", 2.0}});
  // case (b) positives
  if (name == "wb_flat_affine")
    return make_warped(name, WarpedCase::B, "euclidean", {{"n", 2}},
                       "flat_torus", {{"n", 2}}, "constant", {{"c", 1.0}},
                       "affine", {{"a0", 1.0}, {"a1", 0.0}, {"b", 0.2}},
                       "constant", {{"c", 1.0}});
  if (name == "wb_cone_torus")
    return make_warped(name, WarpedCase::B, "interval",
                       {{"lo", 0.3}, {"hi", 2.5}}, "flat_torus", {{"n", 2}},
                       "affine", {{"a0", 1.0}, {"b", 0.0}}, "affine",
                       {{"a0", 1.0}, {"b", 0.0}}, "constant", {{"c", 1.0}});
  if (name == "wb_polar_r3")
    return make_warped(name, WarpedCase::B, "interval",
                       {{"lo", 0.3}, {"hi", 2.5}}, "sphere2", {}, "affine",
                       {{"a0", 1.0}, {"b", 0.0}}, "constant", {{"c", 1.0}},
                       "constant", {{"c", 1.0}});
  // case (b) negative: f = |x| on flat R^3; einstein_fiber detects it
  if (name == "wb_polar_radial")
    return make_warped(name, WarpedCase::B, "interval",
                       {{"lo", 0.3}, {"hi", 2.5}}, "sphere2", {}, "affine",
                       {{"a0", 1.0}, {"b", 0.0}}, "affine",
                       {{"a0", 1.0}, {"b", 0.0}}, "constant", {{"c", 1.0}});
  throw Error(ErrorCode::UnknownEntry, "no warped entry named " + name);
}

std::vector<std::string> list_warped_entries() {
  return {"wa_hyperbolic_b1", "wa_const_s2",    "wa_const_h2",
          "wa_affine_s3",     "wa_a1_cosh",     "wa_wrong_kappa",
          "wb_flat_affine",   "wb_cone_torus",  "wb_polar_r3",
          "wb_polar_radial"};
}

}  // namespace rhlab
