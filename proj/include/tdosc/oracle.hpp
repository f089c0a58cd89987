#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tdosc/coupled.hpp"
#include "tdosc/ermakov.hpp"
#include "tdosc/reduced.hpp"
#include "tdosc/single_osc.hpp"
#include "tdosc/specfun.hpp"

namespace tdosc {

/// Gauss-Hermite nodes/weights for the weight exp(-x^2); exact for
/// polynomials of degree <= 2*order - 1.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Symmetric tridiagonal eigensolve (QL with implicit shifts); d = diagonal,
// e = subdiagonal (e[0] unused), z = first components of the eigenvectors.
inline void tqli(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 + 1e-15 * dd) break;
      }
      if (m != l) {
        if (++iter == 50) throw std::runtime_error("gauss_hermite: eigensolve failed");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

inline QuadratureRule gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  std::vector<double> d(order, 0.0), e(order, 0.0), z(order, 0.0);
  for (int i = 1; i < order; ++i) e[i] = std::sqrt(i / 2.0);
  z[0] = 1.0;
  detail::tqli(d, e, z);
  QuadratureRule rule;
  rule.order = order;
  std::vector<int> idx(order);
  for (int i = 0; i < order; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  const double mu0 = std::sqrt(M_PI);
  for (int i : idx) {
    rule.nodes.push_back(d[i]);
    rule.weights.push_back(mu0 * z[i] * z[i]);
  }
  return rule;
}

namespace detail {

inline void require_exactness(int degree, const QuadratureRule& rule, const char* what) {
  if (degree > 2 * rule.order - 1)
    throw std::invalid_argument(std::string(what) + ": integrand degree " +
                                std::to_string(degree) + " exceeds rule exactness; need order >= " +
                                std::to_string((degree + 1) / 2 + 1));
}

// <y^a pi^b> for one mode, integrating the mode Wigner function in the
// coordinates (u, w) where its Gaussian factor is exp(-u^2 - w^2).
inline double quad2d_mode(const ModeState& s, int a, int b, const QuadratureRule& rule) {
  require_exactness(a + b + 2 * s.n, rule, "quad2d_mode");
  const double sw = std::sqrt(s.omega_eff);
  const double r = s.log_deriv;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double y = u / sw;
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double w = rule.nodes[j];
      const double pi = sw * w - r * u / sw;
      const double eps = u * u + w * w;
      inner += rule.weights[j] * std::pow(y, a) * std::pow(pi, b) * fock_radial(s.n, eps);
    }
    sum += rule.weights[i] * inner;
  }
  return sum / M_PI;
}

// Quadratic fit q(xi) = q0 + g.xi + xi^T A xi from exact evaluations.
struct Quadratic2 {
  double q0;
  std::array<double, 2> g;
  std::array<std::array<double, 2>, 2> A;
};

inline Quadratic2 fit_quadratic(const std::function<double(double, double)>& q) {
  Quadratic2 out;
  const double f00 = q(0, 0);
  const double fp0 = q(1, 0), fm0 = q(-1, 0);
  const double f0p = q(0, 1), f0m = q(0, -1);
  const double fpp = q(1, 1);
  out.q0 = f00;
  out.A[0][0] = 0.5 * (fp0 + fm0 - 2 * f00);
  out.A[1][1] = 0.5 * (f0p + f0m - 2 * f00);
  const double cross = fpp - fp0 - f0p + f00;  // 2*A01
  out.A[0][1] = out.A[1][0] = 0.5 * cross;
  out.g[0] = 0.5 * (fp0 - fm0);
  out.g[1] = 0.5 * (f0p - f0m);
  return out;
}

struct GaussMap {
  std::array<double, 2> center;
  std::array<std::array<double, 2>, 2> V;  // columns = eigenvectors
  std::array<double, 2> lambda;
  double e0;  // exponent value at the center
};

inline GaussMap gauss_map(const Quadratic2& quad) {
  // Eigen-decompose the symmetric 2x2 form.
  const double a = quad.A[0][0], b = quad.A[0][1], c = quad.A[1][1];
  const double tr = a + c, det = a * c - b * b;
  const double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
  GaussMap m;
  m.lambda = {0.5 * tr - disc, 0.5 * tr + disc};
  if (!(m.lambda[0] > 0.0))
    throw std::domain_error("oracle: Gaussian quadratic form is not positive definite");
  for (int k = 0; k < 2; ++k) {
    // Two algebraically equivalent eigenvector forms; take the better
    // conditioned one (they degenerate in opposite limits).
    double vx = b, vy = m.lambda[k] - a;
    const double wx = m.lambda[k] - c, wy = b;
    if (std::hypot(wx, wy) > std::hypot(vx, vy)) {
      vx = wx;
      vy = wy;
    }
    const double nn = std::hypot(vx, vy);
    if (nn == 0.0) {  // isotropic form
      vx = (k == 0) ? 1.0 : 0.0;
      vy = (k == 0) ? 0.0 : 1.0;
      m.V[0][k] = vx;
      m.V[1][k] = vy;
    } else {
      m.V[0][k] = vx / nn;
      m.V[1][k] = vy / nn;
    }
  }
  // Center: 2 A xi = -g.
  const double det2 = 4.0 * det;
  if (det2 == 0.0) throw std::domain_error("oracle: singular quadratic form");
  m.center[0] = (-quad.g[0] * 2 * c + quad.g[1] * 2 * b) / det2;
  m.center[1] = (quad.g[0] * 2 * b - quad.g[1] * 2 * a) / det2;
  m.e0 = quad.q0 + quad.g[0] * m.center[0] + quad.g[1] * m.center[1] +
         quad.A[0][0] * m.center[0] * m.center[0] + 2 * quad.A[0][1] * m.center[0] * m.center[1] +
         quad.A[1][1] * m.center[1] * m.center[1];
  return m;
}

}  // namespace detail

/// Tensor-quadrature moment <x_j^xexp p_j^pexp> for a product-of-modes state.
/// The physical monomial is expanded through the mode matrix; each mode's
/// factor is a 2D Gauss-Hermite integral in its own diagonal coordinates.
inline double quad_moment(const std::vector<ModeState>& modes, const Matrix& M, int j, int xexp,
                          int pexp, const QuadratureRule& rule) {
  const int N = static_cast<int>(modes.size());
  if (j < 0 || j >= N) throw std::invalid_argument("quad_moment: oscillator index out of range");
  std::map<std::tuple<int, int, int>, double> memo;
  auto mode_moment = [&](int k, int a, int b) {
    const auto key = std::make_tuple(k, a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const double v = detail::quad2d_mode(modes[k], a, b, rule);
    memo[key] = v;
    return v;
  };

  // Distribute xexp among modes (coefficients M[k][j]), then pexp, recursively.
  std::vector<int> ax(N, 0), ap(N, 0);
  std::function<double(int, int, bool)> expand = [&](int k, int rem, bool momentum) -> double {
    if (k == N - 1) {
      if (momentum) {
        ap[k] = rem;
        double prod = 1.0;
        for (int q = 0; q < N; ++q) {
          prod *= std::pow(M[q][j], ax[q] + ap[q]);
          if (prod == 0.0 && (ax[q] + ap[q]) > 0) break;
        }
        if (prod != 0.0)
          for (int q = 0; q < N; ++q) prod *= mode_moment(q, ax[q], ap[q]);
        // multinomial coefficients
        double coef = factorial(xexp) * factorial(pexp);
        for (int q = 0; q < N; ++q) coef /= factorial(ax[q]) * factorial(ap[q]);
        ap[k] = 0;
        return coef * prod;
      }
      ax[k] = rem;
      const double v = expand(0, pexp, true);
      ax[k] = 0;
      return v;
    }
    double s = 0.0;
    for (int a = 0; a <= rem; ++a) {
      if (momentum)
        ap[k] = a;
      else
        ax[k] = a;
      s += expand(k + 1, rem - a, momentum);
      if (momentum)
        ap[k] = 0;
      else
        ax[k] = 0;
    }
    return s;
  };
  return expand(0, xexp, false);
}

/// Single-mode shorthand: <y^a pi^b>.
inline double quad_moment_single(const ModeState& s, int a, int b, const QuadratureRule& rule) {
  return detail::quad2d_mode(s, a, b, rule);
}

/// Normalization integral of a product-of-modes Wigner function.
inline double quad_normalization(const std::vector<ModeState>& modes, const QuadratureRule& rule) {
  double prod = 1.0;
  for (const auto& s : modes) prod *= detail::quad2d_mode(s, 0, 0, rule);
  return prod;
}

/// 2*pi * integral of W_n^2 for one mode (equals 1 for any pure Fock state).
inline double quad_purity_single(const ModeState& s, const QuadratureRule& rule) {
  detail::require_exactness(4 * s.n, rule, "quad_purity_single");
  // Substitute u = s/sqrt(2) so the squared Gaussian matches the GH weight.
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double eps = 0.5 * (rule.nodes[i] * rule.nodes[i] + rule.nodes[j] * rule.nodes[j]);
      const double f = fock_radial(s.n, eps);
      sum += rule.weights[i] * rule.weights[j] * f * f;
    }
  return sum / M_PI;  // 2*pi * (1/pi^2) * (1/2) * sum
}

/// Partial trace of the two-coupled Wigner function over (x2, p2) at fixed
/// (x1, p1), by Gaussian-adapted quadrature in the original coordinates.
inline double quad_reduced(const ModeState& s1, const ModeState& s2, const Matrix& M2, double x1,
                           double p1, const QuadratureRule& rule) {
  const std::array<const ModeState*, 2> st{&s1, &s2};
  auto eps_mode = [&](int k, double x2, double p2) {
    const double y = M2[k][0] * x1 + M2[k][1] * x2;
    const double pi = M2[k][0] * p1 + M2[k][1] * p2;
    const double shifted = pi + st[k]->log_deriv * y;
    return st[k]->omega_eff * y * y + shifted * shifted / st[k]->omega_eff;
  };
  auto expo = [&](double x2, double p2) { return eps_mode(0, x2, p2) + eps_mode(1, x2, p2); };
  const auto map = detail::gauss_map(detail::fit_quadratic(expo));
  detail::require_exactness(2 * (s1.n + s2.n), rule, "quad_reduced");

  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = rule.nodes[i] / std::sqrt(map.lambda[0]);
      const double w = rule.nodes[j] / std::sqrt(map.lambda[1]);
      const double x2 = map.center[0] + map.V[0][0] * u + map.V[0][1] * w;
      const double p2 = map.center[1] + map.V[1][0] * u + map.V[1][1] * w;
      const double poly = fock_radial(s1.n, eps_mode(0, x2, p2)) *
                          fock_radial(s2.n, eps_mode(1, x2, p2));
      sum += rule.weights[i] * rule.weights[j] * poly;
    }
  return std::exp(-map.e0) / (M_PI * M_PI * std::sqrt(map.lambda[0] * map.lambda[1])) * sum;
}

/// Normalization integral of a reduced Wigner function over (x1, p1).
inline double quad_norm_reduced(const std::function<double(double, double)>& w_red,
                                const TwoModeContext& ctx, int n, int m,
                                const QuadratureRule& rule) {
  detail::require_exactness(2 * (n + m), rule, "quad_norm_reduced");
  const double w1 = ctx.omega1, w2 = ctx.omega2;
  const double omega11 = 2.0 * w1 * w2 + ctx.coupling_term();
  auto q = [&](double x, double p) {
    const double q2 = p + ctx.r2 * x;
    const double q1 = p + ctx.r1 * x;
    const double theta = w1 * (w2 * w2 * x * x + q2 * q2) + w2 * (w1 * w1 * x * x + q1 * q1);
    return 2.0 * theta / omega11;
  };
  const auto map = detail::gauss_map(detail::fit_quadratic(q));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = rule.nodes[i] / std::sqrt(map.lambda[0]);
      const double w = rule.nodes[j] / std::sqrt(map.lambda[1]);
      const double x = map.center[0] + map.V[0][0] * u + map.V[0][1] * w;
      const double p = map.center[1] + map.V[1][0] * u + map.V[1][1] * w;
      sum += rule.weights[i] * rule.weights[j] * w_red(x, p) * std::exp(q(x, p));
    }
  return std::exp(-map.e0) / std::sqrt(map.lambda[0] * map.lambda[1]) * sum;
}

/// Purity 2*pi * int W_red^2 dx1 dp1 of a reduced Wigner function, with
/// quadrature adapted to the Gaussian core given by the two-mode context.
inline double quad_purity_reduced(const std::function<double(double, double)>& w_red,
                                  const TwoModeContext& ctx, int n, int m,
                                  const QuadratureRule& rule) {
  detail::require_exactness(4 * (n + m), rule, "quad_purity_reduced");
  const double w1 = ctx.omega1, w2 = ctx.omega2;
  const double omega11 = 2.0 * w1 * w2 + ctx.coupling_term();
  auto q = [&](double x, double p) {  // exponent of W_red (2*Theta/Omega at ones)
    const double q2 = p + ctx.r2 * x;
    const double q1 = p + ctx.r1 * x;
    const double theta = w1 * (w2 * w2 * x * x + q2 * q2) + w2 * (w1 * w1 * x * x + q1 * q1);
    return 2.0 * theta / omega11;
  };
  auto q2fit = detail::fit_quadratic([&](double x, double p) { return 2.0 * q(x, p); });
  const auto map = detail::gauss_map(q2fit);

  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = rule.nodes[i] / std::sqrt(map.lambda[0]);
      const double w = rule.nodes[j] / std::sqrt(map.lambda[1]);
      const double x = map.center[0] + map.V[0][0] * u + map.V[0][1] * w;
      const double p = map.center[1] + map.V[1][0] * u + map.V[1][1] * w;
      const double val = w_red(x, p);
      sum += rule.weights[i] * rule.weights[j] * val * val * std::exp(2.0 * q(x, p));
    }
  return 2.0 * M_PI * std::exp(-map.e0) / std::sqrt(map.lambda[0] * map.lambda[1]) * sum;
}

}  // namespace tdosc
