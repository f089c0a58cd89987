#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tdosc/ermakov.hpp"
#include "tdosc/jet.hpp"
#include "tdosc/specfun.hpp"

namespace tdosc {

inline constexpr int kReducedWignerMaxLevel = 12;
inline constexpr int kPurityMaxLevel = 8;

/// Frequency and log-derivative data of the two normal modes entering the
/// reduced-state formulas.
struct TwoModeContext {
  double omega1 = 1.0, omega2 = 1.0;  // effective frequencies
  double r1 = 0.0, r2 = 0.0;          // log-derivatives bdot/b

  double coupling_term() const {  // omega1'^2 + omega2'^2 + (r1 - r2)^2
    const double d = r1 - r2;
    return omega1 * omega1 + omega2 * omega2 + d * d;
  }
};

inline TwoModeContext make_context(const ModeState& mode1, const ModeState& mode2) {
  return TwoModeContext{mode1.omega_eff, mode2.omega_eff, mode1.log_deriv, mode2.log_deriv};
}

/// Mixedness parameter z = omega1' omega2' / Omega(1,1) in (0, 1/4].
inline double mixedness_z(const TwoModeContext& ctx) {
  return ctx.omega1 * ctx.omega2 / (2.0 * ctx.omega1 * ctx.omega2 + ctx.coupling_term());
}

/// Reduced one-oscillator Wigner distribution of the two-coupled system with
/// mode levels (n, m), evaluated at (x1, p1). The mixed mu-derivatives are
/// read off a two-variable jet expanded about mu1 = mu2 = 1.
inline double reduced_wigner(const TwoModeContext& ctx, int n, int m, double x1, double p1) {
  if (n < 0 || m < 0) throw std::invalid_argument("reduced_wigner: levels must be >= 0");
  if (n > kReducedWignerMaxLevel || m > kReducedWignerMaxLevel)
    throw std::invalid_argument("reduced_wigner: level exceeds jet capability bound");
  using J = Jet<double>;
  const std::vector<int> shape{n, m};
  const J mu1 = J::variable(shape, 0, 1.0);
  const J mu2 = J::variable(shape, 1, 1.0);
  const double w1 = ctx.omega1, w2 = ctx.omega2;

  const J omega = (mu1 * mu1 + mu2 * mu2) * (w1 * w2) + (mu1 * mu2) * ctx.coupling_term();
  const double q2 = p1 + ctx.r2 * x1;  // mode-2 shifted momentum
  const double q1 = p1 + ctx.r1 * x1;
  const J theta = (mu1 * mu1 * mu2) * (w1 * (w2 * w2 * x1 * x1 + q2 * q2)) +
                  (mu1 * mu2 * mu2) * (w2 * (w1 * w1 * x1 * x1 + q1 * q1));
  const J f = rsqrt(omega) * exp(theta * recip(omega) * -2.0);

  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= m; ++l) {
      const int a = n - k, b = m - l;
      const double term = binomial(n, k) * binomial(m, l) *
                          std::pow(-1.0, k + l) / (factorial(a) * factorial(b)) *
                          std::pow(2.0, a + b) * std::pow(-1.0, a + b) * f.derivative({a, b});
      sum += term;
    }
  }
  return std::sqrt(4.0 * w1 * w2) / M_PI * sum;
}

namespace detail {

template <class T>
T purity_impl(T w1, T w2, T coupling, int n, int m) {
  using J = Jet<T>;
  const std::vector<int> shape{n, m, n, m};
  const J mu1 = J::variable(shape, 0, T(1));
  const J mu2 = J::variable(shape, 1, T(1));
  const J nu1 = J::variable(shape, 2, T(1));
  const J nu2 = J::variable(shape, 3, T(1));

  const J s1 = mu1 + nu1, s2 = mu2 + nu2;
  const J gamma = (mu1 * mu1 * (nu1 * nu1) * (s2 * s2) + mu2 * mu2 * (nu2 * nu2) * (s1 * s1)) *
                      (w1 * w2) +
                  mu1 * mu2 * (nu1 * nu2) * (s1 * s2) * coupling;
  const J g = rsqrt(gamma);

  T sum(0);
  for (int k = 0; k <= n; ++k)
    for (int kp = 0; kp <= n; ++kp)
      for (int l = 0; l <= m; ++l)
        for (int lp = 0; lp <= m; ++lp) {
          const int a = n - k, ap = n - kp, b = m - l, bp = m - lp;
          T coef = T(binomial(n, k) * binomial(n, kp) * binomial(m, l) * binomial(m, lp));
          coef *= T(std::pow(-1.0, k + kp + l + lp));
          coef /= T(factorial(a) * factorial(ap) * factorial(b) * factorial(bp));
          coef *= T(std::pow(2.0, 2 * (n + m) - (k + kp + l + lp)));
          coef *= T(std::pow(-1.0, a + ap + b + bp));
          sum += coef * g.derivative({a, b, ap, bp});
        }
  using std::sqrt;
  return T(4) * sqrt(w1 * w2) * sum;
}

}  // namespace detail

/// Purity Tr rho_A^2 of the reduced state for mode levels (n, m).
inline double purity(const TwoModeContext& ctx, int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("purity: levels must be >= 0");
  if (n > kPurityMaxLevel || m > kPurityMaxLevel)
    throw std::invalid_argument("purity: level exceeds jet capability bound");
  return detail::purity_impl<double>(ctx.omega1, ctx.omega2, ctx.coupling_term(), n, m);
}

namespace detail {

// The alternating quadruple sum cancels ~12 digits at (n,m) = (3,3); the
// ratio-polynomial path therefore runs in extended precision.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Context with omega1' = 1, r1 = r2, realizing a prescribed z: omega2' is the
// root >= 1 of z (1 + w)^2 = w.
inline BigFloat omega2_for_z(const BigFloat& z) {
  using boost::multiprecision::sqrt;
  const BigFloat disc = 1 - 4 * z;
  return ((1 - 2 * z) + sqrt(disc > 0 ? disc : BigFloat(0))) / (2 * z);
}

inline BigFloat ratio_at(const BigFloat& z, int n, int m) {
  const BigFloat w2 = omega2_for_z(z);
  const BigFloat coupling = 1 + w2 * w2;
  return purity_impl<BigFloat>(BigFloat(1), w2, coupling, n, m) /
         purity_impl<BigFloat>(BigFloat(1), w2, coupling, 0, 0);
}

inline PolynomialCoeffs ratio_poly(int n, bool diagonal) {
  if (n < 1 || n > kPurityMaxLevel)
    throw std::invalid_argument("ratio polynomial: n outside purity capability");
  const int deg = diagonal ? 2 * n : n;
  const int npts = deg + 1;
  const double a = 0.05, b = 0.25;

  std::vector<BigFloat> zs(npts), rs(npts);
  for (int i = 0; i < npts; ++i) {
    const double theta = M_PI * (2.0 * i + 1.0) / (2.0 * npts);
    zs[i] = BigFloat(0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta));
    rs[i] = ratio_at(zs[i], n, diagonal ? n : 0);
  }

  // Vandermonde solve, Gaussian elimination with partial pivoting.
  std::vector<std::vector<BigFloat>> A(npts, std::vector<BigFloat>(npts + 1));
  for (int i = 0; i < npts; ++i) {
    BigFloat pw(1);
    for (int j = 0; j < npts; ++j) {
      A[i][j] = pw;
      pw *= zs[i];
    }
    A[i][npts] = rs[i];
  }
  using boost::multiprecision::abs;
  for (int col = 0; col < npts; ++col) {
    int piv = col;
    for (int r = col + 1; r < npts; ++r)
      if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    if (A[col][col] == 0)
      throw std::runtime_error("ratio polynomial: singular interpolation system");
    for (int r = col + 1; r < npts; ++r) {
      const BigFloat f = A[r][col] / A[col][col];
      for (int j = col; j <= npts; ++j) A[r][j] -= f * A[col][j];
    }
  }
  PolynomialCoeffs poly;
  poly.c.assign(npts, 0.0);
  std::vector<BigFloat> x(npts);
  for (int r = npts - 1; r >= 0; --r) {
    BigFloat s = A[r][npts];
    for (int j = r + 1; j < npts; ++j) s -= A[r][j] * x[j];
    x[r] = s / A[r][r];
    poly.c[r] = static_cast<double>(x[r]);
  }
  return poly;
}

}  // namespace detail

/// Extended-precision purity evaluation; reference path for the ratio
/// polynomials' self-checks where the double-precision sum loses digits.
inline double purity_precise(const TwoModeContext& ctx, int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("purity_precise: levels must be >= 0");
  if (n > kPurityMaxLevel || m > kPurityMaxLevel)
    throw std::invalid_argument("purity_precise: level exceeds jet capability bound");
  return static_cast<double>(detail::purity_impl<detail::BigFloat>(
      detail::BigFloat(ctx.omega1), detail::BigFloat(ctx.omega2),
      detail::BigFloat(ctx.coupling_term()), n, m));
}

/// Ratio P^A_{n,m}/P^A_{0,0} at a prescribed mixedness z, extended precision.
inline double purity_ratio_at_z(double z, int n, int m) {
  if (!(z > 0.0) || z > 0.25)
    throw std::domain_error("purity_ratio_at_z: z must lie in (0, 1/4]");
  return static_cast<double>(detail::ratio_at(detail::BigFloat(z), n, m));
}

/// gamma_n = P^A_{n,0} / P^A_{0,0} as a degree-n polynomial in z, recovered
/// by interpolation at Chebyshev-spaced z nodes.
inline PolynomialCoeffs ratio_gamma(int n) { return detail::ratio_poly(n, false); }

/// delta_n = P^A_{n,n} / P^A_{0,0} as a degree-2n polynomial in z.
inline PolynomialCoeffs ratio_delta(int n) { return detail::ratio_poly(n, true); }

}  // namespace tdosc
