#include "rhlab/jet.hpp"

#include <algorithm>
#include <cmath>

#include "rhlab/errors.hpp"

namespace rhlab {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::PointExcluded: return "PointExcluded";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::CriticalPoint: return "CriticalPoint";
    case ErrorCode::NonconstantScalar: return "NonconstantScalar";
    case ErrorCode::NotAlmostHermitian: return "NotAlmostHermitian";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::NonPositiveWarp: return "NonPositiveWarp";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::ZeroDivision: return "ZeroDivision";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::RadicandNegative: return "RadicandNegative";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorCode::ZeroCrossing: return "ZeroCrossing";
    case ErrorCode::ZeroSymmetricPart: return "ZeroSymmetricPart";
    case ErrorCode::DomainExhausted: return "DomainExhausted";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

Jet::Jet(int dim, int order, double value)
    : dim_(dim), order_(order), v_(value) {
  const std::size_t n = static_cast<std::size_t>(dim);
  if (order >= 1) d1_.assign(n, 0.0);
  if (order >= 2) d2_.assign(n * n, 0.0);
  if (order >= 3) d3_.assign(n * n * n, 0.0);
  if (order >= 4) d4_.assign(n * n * n * n, 0.0);
}

Jet Jet::constant(int dim, int order, double value) {
  return Jet(dim, order, value);
}

Jet Jet::variable(int dim, int order, int index, double value) {
  Jet j(dim, order, value);
  if (order >= 1) j.d1_[index] = 1.0;
  return j;
}

Jet Jet::derivative(int a) const {
  Jet r(dim_, order_ > 0 ? order_ - 1 : 0, 0.0);
  if (order_ < 1) return r;
  r.v_ = d1(a);
  const int n = dim_;
  if (order_ >= 2)
    for (int i = 0; i < n; ++i) r.d1(i) = d2(a, i);
  if (order_ >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.d2(i, j) = d3(a, i, j);
  if (order_ >= 4)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) r.d3(i, j, k) = d4(a, i, j, k);
  return r;
}

bool Jet::finite() const {
  if (!std::isfinite(v_)) return false;
  for (double x : d1_)
    if (!std::isfinite(x)) return false;
  for (double x : d2_)
    if (!std::isfinite(x)) return false;
  for (double x : d3_)
    if (!std::isfinite(x)) return false;
  for (double x : d4_)
    if (!std::isfinite(x)) return false;
  return true;
}

namespace {

// Jets entering a binary op must live in the same variable space; orders
// truncate to the lower one.
inline void binary_sizes(const Jet& a, const Jet& b, int& dim, int& order) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::BadParams, "jet dimension mismatch");
  dim = a.dim();
  order = a.order() <= b.order() ? a.order() : b.order();
}

}  // namespace

Jet Jet::operator-() const {
  Jet r = *this;
  r.v_ = -r.v_;
  for (auto& x : r.d1_) x = -x;
  for (auto& x : r.d2_) x = -x;
  for (auto& x : r.d3_) x = -x;
  for (auto& x : r.d4_) x = -x;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  int dim, order;
  binary_sizes(a, b, dim, order);
  Jet r(dim, order, a.v_ + b.v_);
  auto acc = [](std::vector<double>& dst, const std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size() && i < dst.size(); ++i) dst[i] += x[i];
  };
  acc(r.d1_, a.d1_); acc(r.d1_, b.d1_);
  acc(r.d2_, a.d2_); acc(r.d2_, b.d2_);
  acc(r.d3_, a.d3_); acc(r.d3_, b.d3_);
  acc(r.d4_, a.d4_); acc(r.d4_, b.d4_);
  return r;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet& Jet::operator+=(const Jet& o) { *this = *this + o; return *this; }
Jet& Jet::operator-=(const Jet& o) { *this = *this - o; return *this; }

Jet operator*(const Jet& a, const Jet& b) {
  int dim, order;
  binary_sizes(a, b, dim, order);
  Jet r(dim, order, a.v_ * b.v_);
  const int n = dim;
  // Entries are computed on ordered index tuples only and mirrored, so the
  // derivative tensors are symmetric bit-for-bit.
  if (order >= 1)
    for (int i = 0; i < n; ++i) r.d1(i) = a.d1(i) * b.v_ + a.v_ * b.d1(i);
  if (order >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = a.d2(i, j) * b.v_ + a.d1(i) * b.d1(j) +
                         a.d1(j) * b.d1(i) + a.v_ * b.d2(i, j);
        r.d2(i, j) = v;
        r.d2(j, i) = v;
      }
  if (order >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v =
              a.d3(i, j, k) * b.v_ + a.d2(i, j) * b.d1(k) +
              a.d2(i, k) * b.d1(j) + a.d2(j, k) * b.d1(i) +
              a.d1(i) * b.d2(j, k) + a.d1(j) * b.d2(i, k) +
              a.d1(k) * b.d2(i, j) + a.v_ * b.d3(i, j, k);
          r.set_d3_sym(i, j, k, v);
        }
  if (order >= 4)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k)
          for (int l = k; l < n; ++l) {
            const double v =
                a.d4(i, j, k, l) * b.v_ + a.v_ * b.d4(i, j, k, l) +
                a.d3(i, j, k) * b.d1(l) + a.d3(i, j, l) * b.d1(k) +
                a.d3(i, k, l) * b.d1(j) + a.d3(j, k, l) * b.d1(i) +
                a.d1(i) * b.d3(j, k, l) + a.d1(j) * b.d3(i, k, l) +
                a.d1(k) * b.d3(i, j, l) + a.d1(l) * b.d3(i, j, k) +
                a.d2(i, j) * b.d2(k, l) + a.d2(i, k) * b.d2(j, l) +
                a.d2(i, l) * b.d2(j, k) + a.d2(j, k) * b.d2(i, l) +
                a.d2(j, l) * b.d2(i, k) + a.d2(k, l) * b.d2(i, j);
            r.set_d4_sym(i, j, k, l, v);
          }
  return r;
}

void Jet::set_d3_sym(int i, int j, int k, double v) {
  int idx[3] = {i, j, k};
  std::sort(idx, idx + 3);
  do {
    d3(idx[0], idx[1], idx[2]) = v;
  } while (std::next_permutation(idx, idx + 3));
}

void Jet::set_d4_sym(int i, int j, int k, int l, double v) {
  int idx[4] = {i, j, k, l};
  std::sort(idx, idx + 4);
  do {
    d4(idx[0], idx[1], idx[2], idx[3]) = v;
  } while (std::next_permutation(idx, idx + 4));
}

Jet operator*(const Jet& a, double b) {
  Jet r = a;
  r.v_ *= b;
  for (auto& x : r.d1_) x *= b;
  for (auto& x : r.d2_) x *= b;
  for (auto& x : r.d3_) x *= b;
  for (auto& x : r.d4_) x *= b;
  return r;
}
Jet operator*(double a, const Jet& b) { return b * a; }
Jet operator+(const Jet& a, double b) { Jet r = a; r.v_ += b; return r; }
Jet operator+(double a, const Jet& b) { return b + a; }
Jet operator-(const Jet& a, double b) { return a + (-b); }
Jet operator-(double a, const Jet& b) { return (-b) + a; }
Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }

Jet Jet::compose(const Jet& f, const double* p) {
  const int n = f.dim_;
  const int order = f.order_;
  Jet h(n, order, p[0]);
  if (order >= 1)
    for (int i = 0; i < n; ++i) h.d1(i) = p[1] * f.d1(i);
  if (order >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = p[2] * f.d1(i) * f.d1(j) + p[1] * f.d2(i, j);
        h.d2(i, j) = v;
        h.d2(j, i) = v;
      }
  if (order >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v =
              p[3] * f.d1(i) * f.d1(j) * f.d1(k) +
              p[2] * (f.d2(i, j) * f.d1(k) + f.d2(i, k) * f.d1(j) +
                      f.d2(j, k) * f.d1(i)) +
              p[1] * f.d3(i, j, k);
          h.set_d3_sym(i, j, k, v);
        }
  if (order >= 4)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k)
          for (int l = k; l < n; ++l) {
            const double v =
                p[4] * f.d1(i) * f.d1(j) * f.d1(k) * f.d1(l) +
                p[3] * (f.d2(i, j) * f.d1(k) * f.d1(l) +
                        f.d2(i, k) * f.d1(j) * f.d1(l) +
                        f.d2(i, l) * f.d1(j) * f.d1(k) +
                        f.d2(j, k) * f.d1(i) * f.d1(l) +
                        f.d2(j, l) * f.d1(i) * f.d1(k) +
                        f.d2(k, l) * f.d1(i) * f.d1(j)) +
                p[2] * (f.d3(i, j, k) * f.d1(l) + f.d3(i, j, l) * f.d1(k) +
                        f.d3(i, k, l) * f.d1(j) + f.d3(j, k, l) * f.d1(i) +
                        f.d2(i, j) * f.d2(k, l) + f.d2(i, k) * f.d2(j, l) +
                        f.d2(i, l) * f.d2(j, k)) +
                p[1] * f.d4(i, j, k, l);
            h.set_d4_sym(i, j, k, l, v);
          }
  return h;
}

Jet operator/(const Jet& a, const Jet& b) {
  const double v = b.value();
  if (v == 0.0) throw Error(ErrorCode::ZeroDivision, "jet division by zero");
  const double iv = 1.0 / v;
  double p[5] = {iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv,
                 24.0 * iv * iv * iv * iv * iv};
  return a * Jet::compose(b, p);
}
Jet operator/(double a, const Jet& b) {
  return Jet::constant(b.dim(), b.order(), a) / b;
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  double p[5] = {e, e, e, e, e};
  return Jet::compose(x, p);
}

Jet log(const Jet& x) {
  const double v = x.value();
  if (v <= 0.0) throw Error(ErrorCode::NonFiniteValue, "log of nonpositive jet");
  const double iv = 1.0 / v;
  double p[5] = {std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv,
                 -6.0 * iv * iv * iv * iv};
  return Jet::compose(x, p);
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet pow(const Jet& x, double q) {
  const double v = x.value();
  if (v <= 0.0)
    throw Error(ErrorCode::NonFiniteValue, "pow of nonpositive jet base");
  double p[5];
  p[0] = std::pow(v, q);
  p[1] = q * std::pow(v, q - 1.0);
  p[2] = q * (q - 1.0) * std::pow(v, q - 2.0);
  p[3] = q * (q - 1.0) * (q - 2.0) * std::pow(v, q - 3.0);
  p[4] = q * (q - 1.0) * (q - 2.0) * (q - 3.0) * std::pow(v, q - 4.0);
  return Jet::compose(x, p);
}

Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  double p[5] = {s, c, -s, -c, s};
  return Jet::compose(x, p);
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  double p[5] = {c, -s, -c, s, c};
  return Jet::compose(x, p);
}

Jet sinh(const Jet& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  double p[5] = {s, c, s, c, s};
  return Jet::compose(x, p);
}

Jet cosh(const Jet& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  double p[5] = {c, s, c, s, c};
  return Jet::compose(x, p);
}

}  // namespace rhlab
