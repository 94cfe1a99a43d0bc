#ifndef RHLAB_JET_HPP
#define RHLAB_JET_HPP

#include <cstddef>
#include <vector>

namespace rhlab {

//! Truncated Taylor expansion of a scalar in `dim` variables.
//!
//! Carries the value and symmetric derivative tensors d1..d3 (optionally d4,
//! used internally where a fourth metric derivative is consumed). Arithmetic
//! implements the exact chain rule at the stored order, so curvature built
//! from jets is exact to roundoff, with no finite differencing anywhere.
class Jet {
 public:
  Jet() = default;
  Jet(int dim, int order, double value);

  static Jet constant(int dim, int order, double value);
  //! Seed for the coordinate x_index: value with unit first derivative.
  static Jet variable(int dim, int order, int index, double value);

  int dim() const { return dim_; }
  int order() const { return order_; }
  double value() const { return v_; }
  double& value() { return v_; }

  double d1(int i) const { return d1_[i]; }
  double d2(int i, int j) const { return d2_[i * dim_ + j]; }
  double d3(int i, int j, int k) const {
    return d3_[(i * dim_ + j) * dim_ + k];
  }
  double d4(int i, int j, int k, int l) const {
    return d4_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  double& d1(int i) { return d1_[i]; }
  double& d2(int i, int j) { return d2_[i * dim_ + j]; }
  double& d3(int i, int j, int k) { return d3_[(i * dim_ + j) * dim_ + k]; }
  double& d4(int i, int j, int k, int l) {
    return d4_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }

  //! Jet of the partial derivative in direction a, one order lower.
  Jet derivative(int a) const;

  bool finite() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, double b);
  friend Jet operator+(double a, const Jet& b);
  friend Jet operator-(const Jet& a, double b);
  friend Jet operator-(double a, const Jet& b);
  friend Jet operator*(const Jet& a, double b);
  friend Jet operator*(double a, const Jet& b);
  friend Jet operator/(const Jet& a, double b);
  friend Jet operator/(double a, const Jet& b);

  //! Univariate composition h = phi∘f given phi and its derivatives at
  //! f.value(); derivs[k] = phi^(k), k = 0..order.
  static Jet compose(const Jet& f, const double* derivs);

  void set_d3_sym(int i, int j, int k, double v);
  void set_d4_sym(int i, int j, int k, int l, double v);

 private:
  int dim_ = 0;
  int order_ = 0;
  double v_ = 0.0;
  std::vector<double> d1_, d2_, d3_, d4_;
};

Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet pow(const Jet& x, double p);

}  // namespace rhlab

#endif
