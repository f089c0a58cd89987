#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdosc/ermakov.hpp"
#include "tdosc/schedule.hpp"
#include "tdosc/single_osc.hpp"

namespace tdosc {

using Matrix = std::vector<std::vector<double>>;  // rows = mode vectors

struct ExcitationSpec {
  std::vector<int> n;

  explicit ExcitationSpec(std::vector<int> levels) : n(std::move(levels)) {
    for (int v : n)
      if (v < 0) throw std::invalid_argument("ExcitationSpec: quantum numbers must be >= 0");
  }
};

struct OscUncertainty {
  double var_x = 0.0;
  double var_p = 0.0;
  double dev_x = 0.0;  // variance minus the arithmetic mean of the mode variances
  double dev_p = 0.0;
};

struct UncertaintyReport {
  double t = 0.0;
  double mean_x = 0.0;  // sum-rule reference values
  double mean_p = 0.0;
  std::vector<OscUncertainty> osc;
};

/// Normal-mode rows for the symmetric N-chain: row 1 is the uniform
/// center-of-mass vector, row j = (1,...,1,-(j-1),0,...)/sqrt(j(j-1)).
inline Matrix build_normal_modes(int N) {
  if (N < 2) throw std::invalid_argument("build_normal_modes: N must be >= 2");
  Matrix M(N, std::vector<double>(N, 0.0));
  for (int i = 0; i < N; ++i) M[0][i] = 1.0 / std::sqrt(static_cast<double>(N));
  for (int j = 2; j <= N; ++j) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(j) * (j - 1));
    for (int i = 0; i < j - 1; ++i) M[j - 1][i] = norm;
    M[j - 1][j - 1] = -(j - 1) * norm;
  }
  return M;
}

/// Normal-mode structure of the three-oscillator system with distinct
/// couplings J12, J13, J23.
struct Gen3Modes {
  Matrix rows;  // (y1, y+, y-)
  double zeta = 0.0;
  double omega1 = 0.0, omega_plus = 0.0, omega_minus = 0.0;
  double lambda_plus = 0.0, lambda_minus = 0.0;  // omega^2 - k0
  // Explicit closed-form data; valid only when J13 != J23.
  bool explicit_form = false;
  double A_plus = 0.0, A_minus = 0.0;
  double u_plus = 0.0, u_minus = 0.0, v_plus = 0.0, v_minus = 0.0;
  double dJ = 0.0;  // J13 - J23
};

namespace detail {

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm3(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

}  // namespace detail

inline Gen3Modes general3_modes(double J12, double J13, double J23, double k0) {
  Gen3Modes g;
  const double zsq = J12 * J12 + J13 * J13 + J23 * J23 - (J12 * J13 + J12 * J23 + J13 * J23);
  g.zeta = zsq > 0.0 ? std::sqrt(zsq) : 0.0;
  const double scale = std::max({std::abs(J12), std::abs(J13), std::abs(J23)});
  const double zeta_min = 1e-9 * scale;
  if (!(g.zeta > zeta_min))
    throw std::domain_error(
        "general3_modes: couplings are degenerate (zeta <= zeta_min); use the symmetric solver");

  const double Jsum = J12 + J13 + J23;
  const double wp_sq = k0 + Jsum + g.zeta;
  const double wm_sq = k0 + Jsum - g.zeta;
  if (!(k0 > 0.0) || !(wm_sq > 0.0) || !(wp_sq > 0.0))
    throw std::domain_error("general3_modes: non-positive squared normal-mode frequency");
  g.omega1 = std::sqrt(k0);
  g.omega_plus = std::sqrt(wp_sq);
  g.omega_minus = std::sqrt(wm_sq);
  g.lambda_plus = Jsum + g.zeta;
  g.lambda_minus = Jsum - g.zeta;

  const double s3 = 1.0 / std::sqrt(3.0);
  g.rows.assign(3, std::vector<double>(3, 0.0));
  g.rows[0] = {s3, s3, s3};
  g.dJ = J13 - J23;
  g.u_plus = -J12 + J23 + g.zeta;
  g.u_minus = -J12 + J23 - g.zeta;
  g.v_plus = J12 - J13 + g.zeta;
  g.v_minus = J12 - J13 - g.zeta;

  // The explicit A± involve 2*zeta -+ (J13 + J23 - 2*J12), which cancels
  // catastrophically as J13 -> J23 (the product of the two factors is
  // 3*dJ^2); below |dJ| ~ 1e-3 zeta the eigenvector route is more accurate.
  if (std::abs(g.dJ) > 1e-3 * g.zeta) {
    g.explicit_form = true;
    g.A_plus = std::sqrt((2.0 * g.zeta + (J13 + J23 - 2.0 * J12)) / (6.0 * g.zeta)) / g.dJ;
    g.A_minus = std::sqrt((2.0 * g.zeta - (J13 + J23 - 2.0 * J12)) / (6.0 * g.zeta)) / g.dJ;
    g.rows[1] = {g.A_plus * g.u_minus, g.A_plus * g.v_plus, g.A_plus * g.dJ};
    g.rows[2] = {g.A_minus * g.u_plus, g.A_minus * g.v_minus, g.A_minus * g.dJ};
  } else {
    // Removable singularity at J13 = J23: build the eigenvector of the
    // coupling Laplacian for lambda_plus from the null space of (L - lambda I)
    // and complete the orthonormal frame with a cross product.
    const std::array<std::array<double, 3>, 3> L{{{J12 + J13, -J12, -J13},
                                                  {-J12, J12 + J23, -J23},
                                                  {-J13, -J23, J13 + J23}}};
    std::array<std::array<double, 3>, 3> A = L;
    for (int i = 0; i < 3; ++i) A[i][i] -= g.lambda_plus;
    std::array<double, 3> v{0, 0, 0};
    double best = -1.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const auto c = detail::cross(A[i], A[j]);
        const double nn = detail::norm3(c);
        if (nn > best) {
          best = nn;
          v = c;
        }
      }
    if (!(best > 0.0))
      throw std::domain_error("general3_modes: failed to isolate the degenerate-pair eigenvector");
    // Project out the uniform direction and normalize.
    const double dot = (v[0] + v[1] + v[2]) / 3.0;
    for (auto& x : v) x -= dot;
    const double nv = detail::norm3(v);
    v = {v[0] / nv, v[1] / nv, v[2] / nv};
    const auto w = detail::cross({s3, s3, s3}, v);
    g.rows[1] = {v[0], v[1], v[2]};
    g.rows[2] = {w[0], w[1], w[2]};
  }
  return g;
}

/// A coupled chain with solved per-mode Ermakov trajectories. Symmetric
/// systems carry two trajectories (center-of-mass and degenerate modes);
/// the general 3-system carries three.
class CoupledSystem {
 public:
  static CoupledSystem symmetric(int N, ParamSchedule k0, ParamSchedule J, double t_end,
                                 double tol = 1e-10) {
    CoupledSystem sys;
    sys.N_ = N;
    sys.modes_ = build_normal_modes(N);
    sys.traj_.push_back(solve_ermakov(mode_frequency_spec(k0, J, 0.0), t_end, tol));
    sys.traj_.push_back(
        solve_ermakov(mode_frequency_spec(k0, J, static_cast<double>(N)), t_end, tol));
    return sys;
  }

  /// General three-oscillator system; couplings are constants so the mode
  /// basis stays fixed while k0(t) may vary.
  static CoupledSystem general3(ParamSchedule k0, double J12, double J13, double J23, double t_end,
                                double tol = 1e-10) {
    CoupledSystem sys;
    sys.N_ = 3;
    sys.gen3_ = general3_modes(J12, J13, J23, k0(0.0));
    sys.is_general3_ = true;
    sys.modes_ = sys.gen3_.rows;
    sys.traj_.push_back(
        solve_ermakov(mode_frequency_spec(k0, ParamSchedule::constant(0.0), 0.0), t_end, tol));
    sys.traj_.push_back(solve_ermakov(
        mode_frequency_spec(k0, ParamSchedule::constant(sys.gen3_.lambda_plus), 1.0), t_end, tol));
    sys.traj_.push_back(solve_ermakov(
        mode_frequency_spec(k0, ParamSchedule::constant(sys.gen3_.lambda_minus), 1.0), t_end, tol));
    return sys;
  }

  int size() const { return N_; }
  bool is_general3() const { return is_general3_; }
  const Matrix& mode_matrix() const { return modes_; }
  const Gen3Modes& gen3() const { return gen3_; }

  /// Trajectory of normal mode j (0-based). Symmetric systems share one
  /// trajectory among modes 2..N.
  const ScaleTrajectory& trajectory(int mode) const {
    if (is_general3_) return traj_.at(mode);
    return traj_.at(mode == 0 ? 0 : 1);
  }

  ModeState state(int mode, int n, double t) const { return mode_state(trajectory(mode), n, t); }

  /// Per-oscillator variances for the symmetric chain, with the sum-rule
  /// deviation against the arithmetic mean of the single-mode uncertainties.
  UncertaintyReport coupled_variances(const ExcitationSpec& exc, double t) const {
    if (is_general3_)
      throw std::logic_error("coupled_variances: system is general3; use general3_variances");
    if (static_cast<int>(exc.n.size()) != N_)
      throw std::invalid_argument("coupled_variances: excitation arity mismatch");
    const int N = N_;
    const ModeState com = state(0, exc.n[0], t);
    const ModeState deg = state(1, 0, t);  // frequency data only
    const double w1 = com.omega_eff, r1 = com.log_deriv;
    const double w = deg.omega_eff, r = deg.log_deriv;
    const double g1 = w1 + r1 * r1 / w1;
    const double g = w + r * r / w;

    UncertaintyReport rep;
    rep.t = t;
    const double com_x = (2.0 * exc.n[0] + 1.0) / (2.0 * w1);
    const double com_p = (2.0 * exc.n[0] + 1.0) / 2.0 * g1;
    double mean_x = com_x, mean_p = com_p;
    for (int k = 2; k <= N; ++k) {
      mean_x += (2.0 * exc.n[k - 1] + 1.0) / (2.0 * w);
      mean_p += (2.0 * exc.n[k - 1] + 1.0) / 2.0 * g;
    }
    rep.mean_x = mean_x / N;
    rep.mean_p = mean_p / N;

    rep.osc.resize(N);
    for (int j = 1; j <= N; ++j) {
      double S = 2.0 * N * (j - 1) / static_cast<double>(j) * exc.n[j - 1];
      for (int k = j + 1; k <= N; ++k)
        S += 2.0 * N * exc.n[k - 1] / (static_cast<double>(k) * (k - 1));
      S += N - 1.0;
      OscUncertainty& u = rep.osc[j - 1];
      u.var_x = (com_x + S / (2.0 * w)) / N;
      u.var_p = (com_p + S / 2.0 * g) / N;
      u.dev_x = u.var_x - rep.mean_x;
      u.dev_p = u.var_p - rep.mean_p;
    }
    return rep;
  }

  /// Per-oscillator variances for the general 3-system (closed form when the
  /// explicit mode data is available, mode-matrix columns otherwise).
  UncertaintyReport general3_variances(const ExcitationSpec& exc, double t) const {
    if (!is_general3_)
      throw std::logic_error("general3_variances: system is symmetric; use coupled_variances");
    if (exc.n.size() != 3)
      throw std::invalid_argument("general3_variances: need three quantum numbers");
    std::array<ModeState, 3> st{state(0, exc.n[0], t), state(1, exc.n[1], t),
                                state(2, exc.n[2], t)};
    std::array<double, 3> vx, vp;  // per-mode single-oscillator variances
    for (int k = 0; k < 3; ++k) {
      const auto u = uncertainty_single(st[k]);
      vx[k] = u.var_x;
      vp[k] = u.var_p;
    }

    UncertaintyReport rep;
    rep.t = t;
    rep.mean_x = (vx[0] + vx[1] + vx[2]) / 3.0;
    rep.mean_p = (vp[0] + vp[1] + vp[2]) / 3.0;
    rep.osc.resize(3);

    std::array<std::array<double, 3>, 3> coeff;  // coeff[j][mode]
    if (gen3_.explicit_form) {
      const double Ap2 = gen3_.A_plus * gen3_.A_plus;
      const double Am2 = gen3_.A_minus * gen3_.A_minus;
      coeff[0] = {1.0 / 3.0, Ap2 * gen3_.u_minus * gen3_.u_minus, Am2 * gen3_.u_plus * gen3_.u_plus};
      coeff[1] = {1.0 / 3.0, Ap2 * gen3_.v_plus * gen3_.v_plus, Am2 * gen3_.v_minus * gen3_.v_minus};
      coeff[2] = {1.0 / 3.0, gen3_.dJ * gen3_.dJ * Ap2, gen3_.dJ * gen3_.dJ * Am2};
    } else {
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) coeff[j][k] = modes_[k][j] * modes_[k][j];
    }

    for (int j = 0; j < 3; ++j) {
      OscUncertainty& u = rep.osc[j];
      for (int k = 0; k < 3; ++k) {
        u.var_x += coeff[j][k] * vx[k];
        u.var_p += coeff[j][k] * vp[k];
      }
      u.dev_x = u.var_x - rep.mean_x;
      u.dev_p = u.var_p - rep.mean_p;
    }
    return rep;
  }

 private:
  int N_ = 0;
  bool is_general3_ = false;
  Matrix modes_;
  Gen3Modes gen3_;
  std::vector<ScaleTrajectory> traj_;
};

/// Per-oscillator deviations of the x-variance from the arithmetic mean of
/// the mode variances; all-zero iff the sum rule holds at t.
inline std::vector<double> sum_rule_deviation(const CoupledSystem& sys, const ExcitationSpec& exc,
                                              double t) {
  const UncertaintyReport rep =
      sys.is_general3() ? sys.general3_variances(exc, t) : sys.coupled_variances(exc, t);
  std::vector<double> dev;
  dev.reserve(rep.osc.size());
  for (const auto& u : rep.osc) dev.push_back(u.dev_x);
  return dev;
}

}  // namespace tdosc
