#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tdosc {

/// Time-dependent scalar parameter (spring or coupling constant).
/// Evaluation is defined for all t >= 0; piecewise kinds are
/// right-continuous at their breakpoints. Natural units (hbar = 1, m = 1).
class ParamSchedule {
 public:
  static ParamSchedule constant(double value) {
    return ParamSchedule(Constant{value});
  }

  /// Step quench: initial value for t < t_q, final value for t >= t_q.
  /// For t_q == 0 the value at t = 0 exactly is the initial one; the final
  /// value applies for every t > 0.
  static ParamSchedule quench(double initial, double final_value, double t_q) {
    if (t_q < 0.0) throw std::invalid_argument("quench: t_q must be >= 0");
    return ParamSchedule(Quench{initial, final_value, t_q});
  }

  /// Piecewise-constant values; first breakpoint must sit at t = 0 and the
  /// breakpoint times must be strictly increasing.
  static ParamSchedule piecewise(std::vector<std::pair<double, double>> pts) {
    if (pts.empty()) throw std::invalid_argument("piecewise: empty breakpoint list");
    if (pts.front().first != 0.0)
      throw std::invalid_argument("piecewise: first breakpoint must be t = 0");
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i].first > pts[i - 1].first))
        throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
    }
    return ParamSchedule(Piecewise{std::move(pts)});
  }

  /// Sampled values with monotone (Fritsch-Carlson) cubic interpolation.
  /// Queries outside [t.front(), t.back()] are range errors.
  static ParamSchedule tabulated(std::vector<double> t, std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2)
      throw std::invalid_argument("tabulated: need >= 2 samples with matching sizes");
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!(t[i] > t[i - 1]))
        throw std::invalid_argument("tabulated: sample times must be strictly increasing");
    }
    Tabulated tab;
    tab.t = std::move(t);
    tab.v = std::move(v);
    tab.slope = pchip_slopes(tab.t, tab.v);
    return ParamSchedule(std::move(tab));
  }

  double operator()(double t) const {
    if (t < 0.0) throw std::domain_error("ParamSchedule: t must be >= 0");
    return std::visit([t](const auto& s) { return eval(s, t); }, impl_);
  }

  /// Times in [0, t_end) at which the value may jump. Integrators restart
  /// there so a discontinuity never straddles a step.
  std::vector<double> discontinuities(double t_end) const {
    std::vector<double> out;
    if (const auto* q = std::get_if<Quench>(&impl_)) {
      if (q->t_q < t_end && q->initial != q->final_value) out.push_back(q->t_q);
    } else if (const auto* p = std::get_if<Piecewise>(&impl_)) {
      for (const auto& [tk, vk] : p->pts)
        if (tk > 0.0 && tk < t_end) out.push_back(tk);
    }
    return out;
  }

 private:
  struct Constant {
    double value;
  };
  struct Quench {
    double initial, final_value, t_q;
  };
  struct Piecewise {
    std::vector<std::pair<double, double>> pts;
  };
  struct Tabulated {
    std::vector<double> t, v, slope;
  };

  static double eval(const Constant& s, double) { return s.value; }

  static double eval(const Quench& s, double t) {
    if (s.t_q == 0.0) return t == 0.0 ? s.initial : s.final_value;
    return t < s.t_q ? s.initial : s.final_value;
  }

  static double eval(const Piecewise& s, double t) {
    // Right-continuous: value of the last breakpoint with t_k <= t.
    auto it = std::upper_bound(
        s.pts.begin(), s.pts.end(), t,
        [](double x, const std::pair<double, double>& bp) { return x < bp.first; });
    return std::prev(it)->second;
  }

  static double eval(const Tabulated& s, double t) {
    if (t < s.t.front() || t > s.t.back())
      throw std::out_of_range("ParamSchedule: query outside tabulated range");
    auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
    std::size_t i = (it == s.t.end()) ? s.t.size() - 2 : (it - s.t.begin()) - 1;
    const double h = s.t[i + 1] - s.t[i];
    const double u = (t - s.t[i]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * s.v[i] + h10 * h * s.slope[i] + h01 * s.v[i + 1] + h11 * h * s.slope[i + 1];
  }

  // Fritsch-Carlson monotone slopes.
  static std::vector<double> pchip_slopes(const std::vector<double>& t,
                                          const std::vector<double>& v) {
    const std::size_t n = t.size();
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = t[i + 1] - t[i];
      d[i] = (v[i + 1] - v[i]) / h[i];
    }
    if (n == 2) {
      m[0] = m[1] = d[0];
      return m;
    }
    m[0] = end_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (d[i - 1] * d[i] <= 0.0) {
        m[i] = 0.0;
      } else {
        const double w1 = 2 * h[i] + h[i - 1];
        const double w2 = h[i] + 2 * h[i - 1];
        m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
    return m;
  }

  static double end_slope(double h0, double h1, double d0, double d1) {
    double m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0)
      m = 0.0;
    else if (d0 * d1 < 0.0 && std::abs(m) > 3 * std::abs(d0))
      m = 3 * d0;
    return m;
  }

  template <class S>
  explicit ParamSchedule(S s) : impl_(std::move(s)) {}

  std::variant<Constant, Quench, Piecewise, Tabulated> impl_;
};

/// One normal mode's frequency law: omega(t) = sqrt(k0(t) + c * J(t)).
/// c = 0 is the center-of-mass mode, c = N the degenerate modes of the
/// symmetric N-chain.
struct ModeFrequencySpec {
  ParamSchedule k0;
  ParamSchedule coupling;
  double multiplier = 0.0;  // c >= 0

  double omega_sq(double t) const { return k0(t) + multiplier * coupling(t); }

  double omega(double t) const {
    const double w2 = omega_sq(t);
    if (!(w2 > 0.0))
      throw std::domain_error("ModeFrequencySpec: k0 + c*J = " + std::to_string(w2) +
                              " <= 0 at t = " + std::to_string(t));
    return std::sqrt(w2);
  }

  std::vector<double> discontinuities(double t_end) const {
    std::vector<double> out = k0.discontinuities(t_end);
    if (multiplier != 0.0) {
      for (double t : coupling.discontinuities(t_end)) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

inline ModeFrequencySpec mode_frequency_spec(ParamSchedule k0, ParamSchedule coupling,
                                             double multiplier) {
  if (multiplier < 0.0)
    throw std::invalid_argument("mode_frequency_spec: multiplier must be >= 0");
  return ModeFrequencySpec{std::move(k0), std::move(coupling), multiplier};
}

inline double eval_param(const ParamSchedule& schedule, double t) { return schedule(t); }

inline double mode_frequency(const ModeFrequencySpec& spec, double t) { return spec.omega(t); }

}  // namespace tdosc
