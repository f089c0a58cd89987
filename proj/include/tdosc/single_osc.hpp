#pragma once

#include <cmath>
#include <stdexcept>

#include "tdosc/ermakov.hpp"
#include "tdosc/specfun.hpp"

namespace tdosc {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Fock-state Wigner distribution of a single oscillator with effective
/// frequency omega' and log-derivative r. Negative values occur for n >= 1.
inline double wigner_single(const ModeState& state, const PhasePoint& pt) {
  const double w = state.omega_eff;
  const double shifted = pt.p + state.log_deriv * pt.x;
  const double eps = w * pt.x * pt.x + shifted * shifted / w;
  return std::exp(-eps) * fock_radial(state.n, eps) / M_PI;
}

namespace detail {

inline double even_moment_prefactor(int n, int m) {
  return std::pow(2.0, n) * factorial(m + n) / (factorial(m) * factorial(n) * std::sqrt(M_PI)) *
         gamma_half(m) * hyp2f1_nn(n, m);
}

}  // namespace detail

/// <x^{2m}> for Fock level n.
inline double even_moment_x(const ModeState& state, int m) {
  if (m < 0) throw std::invalid_argument("even_moment_x: m must be >= 0");
  return detail::even_moment_prefactor(state.n, m) / std::pow(state.omega_eff, m);
}

/// <p^{2m}> for Fock level n.
inline double even_moment_p(const ModeState& state, int m) {
  if (m < 0) throw std::invalid_argument("even_moment_p: m must be >= 0");
  const double r = state.log_deriv;
  const double g = state.omega_eff + r * r / state.omega_eff;
  return detail::even_moment_prefactor(state.n, m) * std::pow(g, m);
}

/// Odd moments vanish by the even symmetry of the Wigner function.
inline double odd_moment(const ModeState&, int) { return 0.0; }

struct SingleUncertainty {
  double var_x;
  double var_p;
  double product_sq;  // (dx dp)^2
};

inline SingleUncertainty uncertainty_single(const ModeState& state) {
  const double w = state.omega_eff;
  const double r = state.log_deriv;
  const double half = state.n + 0.5;
  SingleUncertainty u;
  u.var_x = half / w;
  u.var_p = half * (w + r * r / w);
  u.product_sq = half * half * (1.0 + r * r / (w * w));
  return u;
}

}  // namespace tdosc
