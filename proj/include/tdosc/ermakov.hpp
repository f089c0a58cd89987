#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdosc/schedule.hpp"

namespace tdosc {

/// One normal mode at a fixed time: quantum number, effective frequency
/// omega' = omega(0)/b^2, log-derivative r = bdot/b, and the accumulated
/// phase time tau = int_0^t ds / b^2(s).
struct ModeState {
  int n = 0;
  double omega_eff = 1.0;
  double log_deriv = 0.0;
  double tau = 0.0;

  double energy(double omega0) const { return (n + 0.5) * omega0; }
};

namespace detail {

// Two-point quintic Hermite (values + first + second derivatives at both
// ends), built as a Newton form on the confluent nodes (t0,t0,t0,t1,t1,t1).
struct QuinticHermite {
  double t0 = 0.0;
  std::array<double, 6> dd{};  // divided differences

  static QuinticHermite fit(double t0, double f0, double df0, double ddf0, double t1, double f1,
                            double df1, double ddf1) {
    const double h = t1 - t0;
    QuinticHermite q;
    q.t0 = t0;
    // Divided-difference table on the confluent nodes (t0,t0,t0,t1,t1,t1).
    std::array<double, 5> d1;
    d1[0] = df0;
    d1[1] = df0;
    d1[2] = (f1 - f0) / h;
    d1[3] = df1;
    d1[4] = df1;
    // Column 2.
    std::array<double, 4> d2;
    d2[0] = 0.5 * ddf0;
    d2[1] = (d1[2] - d1[1]) / h;
    d2[2] = (d1[3] - d1[2]) / h;
    d2[3] = 0.5 * ddf1;
    // Columns 3..5: all spans cross both nodes, plain divided differences.
    std::array<double, 3> d3;
    for (int i = 0; i < 3; ++i) d3[i] = (d2[i + 1] - d2[i]) / h;
    std::array<double, 2> d4;
    for (int i = 0; i < 2; ++i) d4[i] = (d3[i + 1] - d3[i]) / h;
    const double d5 = (d4[1] - d4[0]) / h;
    q.dd = {f0, d1[0], d2[0], d3[0], d4[0], d5};
    q.h_ = h;
    return q;
  }

  // Value and derivative via Horner on the Newton form.
  std::pair<double, double> eval(double t) const {
    const double a = t - t0;       // factor for nodes at t0
    const double b = t - t0 - h_;  // factor for nodes at t1
    const std::array<double, 5> fac{a, a, a, b, b};
    double p = dd[5];
    double dp = 0.0;
    for (int k = 4; k >= 0; --k) {
      dp = dp * fac[k] + p;
      p = p * fac[k] + dd[k];
    }
    return {p, dp};
  }

 private:
  double h_ = 1.0;
};

// 7-point Gauss-Legendre on [-1, 1].
inline const std::array<double, 7>& gl7_nodes() {
  static const std::array<double, 7> x{-0.9491079123427585, -0.7415311855993945,
                                       -0.4058451513773972, 0.0,
                                       0.4058451513773972,  0.7415311855993945,
                                       0.9491079123427585};
  return x;
}
inline const std::array<double, 7>& gl7_weights() {
  static const std::array<double, 7> w{0.1294849661688697, 0.2797053914892766,
                                       0.3818300505051189, 0.4179591836734694,
                                       0.3818300505051189, 0.2797053914892766,
                                       0.1294849661688697};
  return w;
}

}  // namespace detail

/// Ermakov scale factor b(t) with bdot(t) on [0, t_end], with quintic-Hermite
/// dense output between the integrator's accepted steps.
class ScaleTrajectory {
 public:
  struct Sample {
    double t, b, bdot, bddot, tau;
  };

  double omega0() const { return omega0_; }
  double t_end() const { return samples_.back().t; }
  const std::vector<Sample>& samples() const { return samples_; }

  std::pair<double, double> eval(double t) const {
    const std::size_t i = locate(t);
    const Sample& a = samples_[i];
    const Sample& c = samples_[i + 1];
    if (t == a.t) return {a.b, a.bdot};
    if (t == c.t) return {c.b, c.bdot};
    const auto q =
        detail::QuinticHermite::fit(a.t, a.b, a.bdot, a.bddot, c.t, c.b, c.bdot, c.bddot);
    return q.eval(t);
  }

  double b(double t) const { return eval(t).first; }
  double bdot(double t) const { return eval(t).second; }

  double omega_eff(double t) const {
    const double bt = b(t);
    return omega0_ / (bt * bt);
  }

  double tau(double t) const {
    const std::size_t i = locate(t);
    const Sample& a = samples_[i];
    if (t == a.t) return a.tau;
    return a.tau + tau_increment(i, a.t, t);
  }

 private:
  friend ScaleTrajectory solve_ermakov(const ModeFrequencySpec&, double, double);

  std::size_t locate(double t) const {
    if (t < samples_.front().t || t > samples_.back().t)
      throw std::out_of_range("ScaleTrajectory: t = " + std::to_string(t) +
                              " outside [0, " + std::to_string(t_end()) + "]");
    std::size_t lo = 0, hi = samples_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (samples_[mid].t <= t)
        lo = mid;
      else
        hi = mid;
    }
    // Skip zero-length intervals at segment boundaries.
    while (lo + 2 < samples_.size() && samples_[lo + 1].t <= t) ++lo;
    return lo;
  }

  double tau_increment(std::size_t i, double from, double to) const {
    const Sample& a = samples_[i];
    const Sample& c = samples_[i + 1];
    const auto q =
        detail::QuinticHermite::fit(a.t, a.b, a.bdot, a.bddot, c.t, c.b, c.bdot, c.bddot);
    const double mid = 0.5 * (from + to), half = 0.5 * (to - from);
    double s = 0.0;
    for (int k = 0; k < 7; ++k) {
      const double bt = q.eval(mid + half * detail::gl7_nodes()[k]).first;
      s += detail::gl7_weights()[k] / (bt * bt);
    }
    return half * s;
  }

  std::vector<Sample> samples_;
  double omega0_ = 1.0;
};

/// Closed-form scale factor for the instantaneous quench omega_i -> omega_f
/// at t = 0. Returns (b, bdot).
inline std::pair<double, double> quench_scale_factor(double omega_i, double omega_f, double t) {
  if (!(omega_i > 0.0) || !(omega_f > 0.0))
    throw std::domain_error("quench_scale_factor: frequencies must be positive");
  if (t < 0.0) throw std::domain_error("quench_scale_factor: t must be >= 0");
  const double wf2 = omega_f * omega_f, wi2 = omega_i * omega_i;
  const double alpha = (wf2 - wi2) / (2.0 * wf2);
  const double beta = (wf2 + wi2) / (2.0 * wf2);
  const double b = std::sqrt(alpha * std::cos(2.0 * omega_f * t) + beta);
  const double bdot = -alpha * omega_f * std::sin(2.0 * omega_f * t) / b;
  return {b, bdot};
}

/// Adaptive Dormand-Prince 5(4) solve of  bddot + omega^2(t) b = omega^2(0)/b^3
/// with b(0) = 1, bdot(0) = 0. Integration restarts at schedule
/// discontinuities. `tolerance` is the per-step relative error target.
inline ScaleTrajectory solve_ermakov(const ModeFrequencySpec& freq, double t_end,
                                     double tolerance = 1e-10) {
  if (!(t_end > 0.0)) throw std::invalid_argument("solve_ermakov: t_end must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("solve_ermakov: tolerance must be > 0");

  const double omega0 = freq.omega(0.0);
  const double w0sq = omega0 * omega0;

  // Segment boundaries: 0, interior discontinuities, t_end.
  std::vector<double> seg{0.0};
  for (double s : freq.discontinuities(t_end))
    if (s > 0.0) seg.push_back(s);
  seg.push_back(t_end);

  ScaleTrajectory traj;
  traj.omega0_ = omega0;

  double b = 1.0, bd = 0.0, tau = 0.0;

  // Dormand-Prince 5(4) tableau.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double hmax = 0.04;  // keeps the quintic dense output below ~1e-9

  for (std::size_t si = 0; si + 1 < seg.size(); ++si) {
    const double t0 = seg[si], t1 = seg[si + 1];
    if (!(t1 > t0)) continue;
    // Within a segment omega^2 is the right-limit value; bumping past the
    // segment start handles the t_q = 0 quench convention.
    const double t0p = std::nextafter(t0, std::numeric_limits<double>::infinity());
    auto w2 = [&](double t) { return freq.omega_sq(t > t0 ? t : t0p); };
    auto rhs = [&](double t, double bb, double bbd, double& db, double& dbd) {
      if (!(bb > 0.0))
        throw std::runtime_error("solve_ermakov: b reached 0 near t = " + std::to_string(t));
      db = bbd;
      dbd = w0sq / (bb * bb * bb) - w2(t) * bb;
    };

    double t = t0;
    double k1b, k1d;
    rhs(t, b, bd, k1b, k1d);
    traj.samples_.push_back({t, b, bd, k1d, tau});

    double h = std::min(hmax, t1 - t0);
    int underflow_guard = 0;
    while (t < t1) {
      h = std::min(h, t1 - t);
      double k2b, k2d, k3b, k3d, k4b, k4d, k5b, k5d, k6b, k6d, k7b, k7d;
      rhs(t + c2 * h, b + h * a21 * k1b, bd + h * a21 * k1d, k2b, k2d);
      rhs(t + c3 * h, b + h * (a31 * k1b + a32 * k2b), bd + h * (a31 * k1d + a32 * k2d), k3b, k3d);
      rhs(t + c4 * h, b + h * (a41 * k1b + a42 * k2b + a43 * k3b),
          bd + h * (a41 * k1d + a42 * k2d + a43 * k3d), k4b, k4d);
      rhs(t + c5 * h, b + h * (a51 * k1b + a52 * k2b + a53 * k3b + a54 * k4b),
          bd + h * (a51 * k1d + a52 * k2d + a53 * k3d + a54 * k4d), k5b, k5d);
      rhs(t + h, b + h * (a61 * k1b + a62 * k2b + a63 * k3b + a64 * k4b + a65 * k5b),
          bd + h * (a61 * k1d + a62 * k2d + a63 * k3d + a64 * k4d + a65 * k5d), k6b, k6d);
      const double bn = b + h * (b1 * k1b + b3 * k3b + b4 * k4b + b5 * k5b + b6 * k6b);
      const double bdn = bd + h * (b1 * k1d + b3 * k3d + b4 * k4d + b5 * k5d + b6 * k6d);
      rhs(t + h, bn, bdn, k7b, k7d);

      const double errb =
          h * (e1 * k1b + e3 * k3b + e4 * k4b + e5 * k5b + e6 * k6b + e7 * k7b);
      const double errd =
          h * (e1 * k1d + e3 * k3d + e4 * k4d + e5 * k5d + e6 * k6d + e7 * k7d);
      const double sb = tolerance * (1.0 + std::max(std::abs(b), std::abs(bn)));
      const double sd =
          tolerance * (1.0 + std::max(std::abs(bd), std::abs(bdn)));
      const double err = std::sqrt(0.5 * ((errb / sb) * (errb / sb) + (errd / sd) * (errd / sd)));

      if (err <= 1.0) {
        if (!(bn > 0.0))
          throw std::runtime_error("solve_ermakov: b reached 0 near t = " + std::to_string(t + h));
        const double tprev = t;
        t += h;
        b = bn;
        bd = bdn;
        k1b = k7b;
        k1d = k7d;
        // tau increment on this step via GL7 on the dense polynomial.
        const auto& prev = traj.samples_.back();
        const auto q =
            detail::QuinticHermite::fit(tprev, prev.b, prev.bdot, prev.bddot, t, b, bd, k1d);
        const double mid = 0.5 * (tprev + t), half = 0.5 * (t - tprev);
        double s = 0.0;
        for (int k = 0; k < 7; ++k) {
          const double bt = q.eval(mid + half * detail::gl7_nodes()[k]).first;
          s += detail::gl7_weights()[k] / (bt * bt);
        }
        tau += half * s;
        traj.samples_.push_back({t, b, bd, k1d, tau});
        underflow_guard = 0;
      }
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      fac = std::min(5.0, std::max(0.2, fac));
      h *= fac;
      h = std::min(h, hmax);
      if (h < 1e-14 * std::max(1.0, t)) {
        if (++underflow_guard > 3)
          throw std::runtime_error("solve_ermakov: step size underflow at t = " +
                                   std::to_string(t));
      }
    }
  }
  return traj;
}

/// Mode snapshot at time t: omega' = omega(0)/b^2, r = bdot/b, tau by
/// quadrature along the dense output.
inline ModeState mode_state(const ScaleTrajectory& traj, int n, double t) {
  if (n < 0) throw std::invalid_argument("mode_state: n must be >= 0");
  const auto [b, bd] = traj.eval(t);
  ModeState st;
  st.n = n;
  st.omega_eff = traj.omega0() / (b * b);
  st.log_deriv = bd / b;
  st.tau = traj.tau(t);
  return st;
}

}  // namespace tdosc
