#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdosc {

inline constexpr int kHermiteMaxOrder = 30;

/// Dense polynomial, coefficients in ascending order.
struct PolynomialCoeffs {
  std::vector<double> c;

  int degree() const {
    int d = static_cast<int>(c.size()) - 1;
    while (d > 0 && c[d] == 0.0) --d;
    return d;
  }

  double eval(double z) const {
    double p = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) p = p * z + c[i];
    return p;
  }
};

inline double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

/// Physicists' Hermite polynomial H_n(z), three-term recurrence.
inline double hermite(int n, double z) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
  if (n > kHermiteMaxOrder)
    throw std::invalid_argument("hermite: n = " + std::to_string(n) + " exceeds supported order " +
                                std::to_string(kHermiteMaxOrder));
  double p0 = 1.0;
  if (n == 0) return p0;
  double p1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double p2 = 2.0 * z * p1 - 2.0 * k * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Laguerre polynomial L_n(x), three-term recurrence. Test cross-check for
/// fock_radial; also used by the quadrature oracle.
inline double laguerre(int n, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
  long double p0 = 1.0L;
  if (n == 0) return static_cast<double>(p0);
  long double p1 = 1.0L - x;
  for (int k = 1; k < n; ++k) {
    const long double p2 = ((2.0L * k + 1.0L - x) * p1 - k * p0) / (k + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  return static_cast<double>(p1);
}

/// Radial factor of the Fock-state Wigner function:
///   sum_{k=0}^{n} C(n,k) (-1)^k 2^{n-k}/(n-k)! eps^{n-k}
/// evaluated in Horner form. Equals (-1)^n L_n(2 eps).
inline double fock_radial(int n, double eps) {
  if (n < 0) throw std::invalid_argument("fock_radial: n must be >= 0");
  // Coefficient of eps^j is a_j = C(n,j) (-1)^{n-j} 2^j / j!; descend from
  // a_n = 2^n/n! via a_{j-1} = -a_j * j^2 / (2 (n - j + 1)).
  long double a = 1.0L;
  for (int k = 1; k <= n; ++k) a *= 2.0L / k;
  long double p = a;
  for (int j = n; j >= 1; --j) {
    a *= -static_cast<long double>(j) * j / (2.0L * (n - j + 1));
    p = p * eps + a;
  }
  return static_cast<double>(p);
}

/// Terminating hypergeometric sum 2F1(-n, -n; -n-m; 1/2).
inline double hyp2f1_nn(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("hyp2f1_nn: arguments must be >= 0");
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < n; ++k) {
    // (-n+k)^2 / ((-n-m+k)(k+1)) * 1/2, signs resolved.
    term *= -static_cast<long double>(n - k) * (n - k) /
            (2.0L * (n + m - k) * (k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

/// Gamma(m + 1/2) by recurrence from Gamma(1/2) = sqrt(pi).
inline double gamma_half(int m) {
  if (m < 0) throw std::invalid_argument("gamma_half: m must be >= 0");
  double g = std::sqrt(M_PI);
  for (int k = 1; k <= m; ++k) g *= (k - 0.5);
  return g;
}

}  // namespace tdosc
