#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tdosc {

/// Truncated multivariate power series around a fixed expansion point, with
/// independent truncation order per variable. Extracting the coefficient of
/// h_1^{a_1}...h_v^{a_v} and scaling by the factorials yields the mixed
/// partial derivative at the expansion point.
template <class T>
class Jet {
 public:
  explicit Jet(std::vector<int> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw std::invalid_argument("Jet: need at least one variable");
    strides_.assign(orders_.size(), 1);
    for (std::size_t i = orders_.size() - 1; i-- > 0;)
      strides_[i] = strides_[i + 1] * (orders_[i + 1] + 1);
    std::size_t size = strides_[0] * (orders_[0] + 1);
    c_.assign(size, T(0));
  }

  static Jet constant(std::vector<int> orders, T value) {
    Jet j(std::move(orders));
    j.c_[0] = value;
    return j;
  }

  /// point + h_i.
  static Jet variable(std::vector<int> orders, std::size_t i, T point) {
    Jet j(std::move(orders));
    if (i >= j.orders_.size()) throw std::invalid_argument("Jet::variable: index out of range");
    j.c_[0] = point;
    if (j.orders_[i] >= 1) j.c_[j.strides_[i]] = T(1);
    return j;
  }

  const std::vector<int>& orders() const { return orders_; }
  std::size_t nvars() const { return orders_.size(); }
  T value() const { return c_[0]; }
  int total_order() const { return std::accumulate(orders_.begin(), orders_.end(), 0); }

  T coeff(const std::vector<int>& idx) const { return c_[flat(idx)]; }
  T& coeff(const std::vector<int>& idx) { return c_[flat(idx)]; }

  /// Mixed partial derivative at the expansion point.
  T derivative(const std::vector<int>& idx) const {
    T f(1);
    for (int a : idx)
      for (int k = 2; k <= a; ++k) f *= T(k);
    return coeff(idx) * f;
  }

  Jet& operator+=(const Jet& o) {
    check_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_shape(b);
    Jet out(a.orders_);
    const std::size_t v = a.nvars();
    std::vector<int> ia(v), ib(v);
    for (std::size_t fa = 0; fa < a.c_.size(); ++fa) {
      if (a.c_[fa] == T(0)) continue;
      a.decode(fa, ia);
      for (std::size_t fb = 0; fb < b.c_.size(); ++fb) {
        if (b.c_[fb] == T(0)) continue;
        b.decode(fb, ib);
        bool ok = true;
        std::size_t f = 0;
        for (std::size_t k = 0; k < v; ++k) {
          const int s = ia[k] + ib[k];
          if (s > a.orders_[k]) {
            ok = false;
            break;
          }
          f += s * a.strides_[k];
        }
        if (ok) out.c_[f] += a.c_[fa] * b.c_[fb];
      }
    }
    return out;
  }

  /// Univariate composition f(c + u) where u is this jet minus its constant
  /// term; `taylor[k]` must hold f^(k)(c)/k! for k = 0..total_order().
  Jet compose(const std::vector<T>& taylor) const {
    Jet u = *this;
    u.c_[0] = T(0);
    Jet out = Jet::constant(orders_, taylor.back());
    for (std::size_t k = taylor.size() - 1; k-- > 0;) {
      out = out * u;
      out.c_[0] += taylor[k];
    }
    return out;
  }

 private:
  std::size_t flat(const std::vector<int>& idx) const {
    if (idx.size() != orders_.size()) throw std::invalid_argument("Jet: index arity mismatch");
    std::size_t f = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] > orders_[k])
        throw std::out_of_range("Jet: exponent outside truncation order");
      f += idx[k] * strides_[k];
    }
    return f;
  }

  void decode(std::size_t f, std::vector<int>& idx) const {
    for (std::size_t k = 0; k < orders_.size(); ++k) {
      idx[k] = static_cast<int>(f / strides_[k]);
      f %= strides_[k];
    }
  }

  void check_shape(const Jet& o) const {
    if (orders_ != o.orders_) throw std::invalid_argument("Jet: shape mismatch");
  }

  std::vector<int> orders_;
  std::vector<std::size_t> strides_;
  std::vector<T> c_;
};

template <class T>
Jet<T> exp(const Jet<T>& j) {
  const int d = j.total_order();
  std::vector<T> taylor(d + 1);
  using std::exp;
  taylor[0] = exp(j.value());
  for (int k = 1; k <= d; ++k) taylor[k] = taylor[k - 1] / T(k);
  return j.compose(taylor);
}

/// j^{-1/2}; constant term must be positive.
template <class T>
Jet<T> rsqrt(const Jet<T>& j) {
  const T c = j.value();
  if (!(c > T(0))) throw std::domain_error("Jet rsqrt: constant term must be positive");
  const int d = j.total_order();
  std::vector<T> taylor(d + 1);
  using std::sqrt;
  taylor[0] = T(1) / sqrt(c);
  for (int k = 1; k <= d; ++k) taylor[k] = taylor[k - 1] * T(-(2 * k - 1)) / (T(2 * k) * c);
  return j.compose(taylor);
}

/// 1/j; constant term must be nonzero.
template <class T>
Jet<T> recip(const Jet<T>& j) {
  const T c = j.value();
  if (c == T(0)) throw std::domain_error("Jet recip: constant term must be nonzero");
  const int d = j.total_order();
  std::vector<T> taylor(d + 1);
  taylor[0] = T(1) / c;
  for (int k = 1; k <= d; ++k) taylor[k] = -taylor[k - 1] / c;
  return j.compose(taylor);
}

}  // namespace tdosc
