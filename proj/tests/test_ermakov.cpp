#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tdosc/ermakov.hpp"
#include "tdosc/schedule.hpp"

using namespace tdosc;

namespace {

ModeFrequencySpec quench_spec(double k0_i, double k0_f, double t_q) {
  return mode_frequency_spec(ParamSchedule::quench(k0_i, k0_f, t_q),
                             ParamSchedule::constant(0.0), 0.0);
}

ModeFrequencySpec constant_spec(double k0) {
  return mode_frequency_spec(ParamSchedule::constant(k0), ParamSchedule::constant(0.0), 0.0);
}

}  // namespace

TEST_CASE("constant frequency gives b = 1, bdot = 0") {
  const auto traj = solve_ermakov(constant_spec(2.0), 10.0);
  for (int i = 0; i <= 100; ++i) {
    const double t = 10.0 * i / 100.0;
    const auto [b, bd] = traj.eval(t);
    CHECK(b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(bd) < 1e-12);
  }
}

TEST_CASE("initial conditions are stored exactly") {
  const auto traj = solve_ermakov(quench_spec(1.0, 4.0, 0.0), 5.0);
  CHECK(traj.samples().front().t == 0.0);
  CHECK(traj.samples().front().b == 1.0);
  CHECK(traj.samples().front().bdot == 0.0);
  CHECK(traj.omega0() == 1.0);
}

TEST_CASE("quench solve matches the closed form on [0, 10]") {
  // omega: 1 -> 2 at t = 0.
  const auto traj = solve_ermakov(quench_spec(1.0, 4.0, 0.0), 10.0);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 10.0 * i / 1000.0;
    const auto [b, bd] = traj.eval(t);
    const auto [br, bdr] = quench_scale_factor(1.0, 2.0, t);
    worst = std::max({worst, std::abs(b - br), std::abs(bd - bdr)});
  }
  CHECK(worst <= 1e-8);
  CHECK(traj.b(M_PI / 4.0) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("post-quench invariant drift stays below 1e-8") {
  const auto traj = solve_ermakov(quench_spec(1.0, 4.0, 0.0), 10.0);
  const double wi2 = 1.0, wf2 = 4.0;
  const double ref = 0.0 + wf2 * 1.0 + wi2 / 1.0;  // value at t = 0+
  for (const auto& s : traj.samples()) {
    const double inv = s.bdot * s.bdot + wf2 * s.b * s.b + wi2 / (s.b * s.b);
    CHECK(std::abs(inv - ref) / ref <= 1e-8);
    CHECK(s.b > 0.0);
  }
}

TEST_CASE("quench_scale_factor closed form") {
  CHECK(quench_scale_factor(1.0, 2.0, M_PI / 4.0).first == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(quench_scale_factor(1.0, 2.0, 0.0).first == 1.0);
  CHECK(quench_scale_factor(1.0, 2.0, 0.0).second == 0.0);
  const auto [b, bd] = quench_scale_factor(3.0, 3.0, 1.7);
  CHECK(b == 1.0);
  CHECK(bd == 0.0);
  CHECK_THROWS_AS(quench_scale_factor(-1.0, 2.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(quench_scale_factor(1.0, 2.0, -0.1), std::domain_error);
}

TEST_CASE("mode_state snapshots") {
  SUBCASE("static omega = 1") {
    const auto traj = solve_ermakov(constant_spec(1.0), 5.0);
    const auto st = mode_state(traj, 0, 3.2);
    CHECK(st.omega_eff == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(st.log_deriv) < 1e-12);
    CHECK(st.tau == doctest::Approx(3.2).epsilon(1e-10));
    CHECK(st.energy(1.0) == doctest::Approx(0.5));
  }
  SUBCASE("static omega = sqrt(3), tau = t") {
    const auto traj = solve_ermakov(constant_spec(3.0), 5.0);
    CHECK(mode_state(traj, 1, 2.0).tau == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("quench 1 -> 2 at t = pi/4") {
    const auto traj = solve_ermakov(quench_spec(1.0, 4.0, 0.0), 5.0);
    const auto st = mode_state(traj, 2, M_PI / 4.0);
    CHECK(st.n == 2);
    CHECK(st.omega_eff == doctest::Approx(4.0).epsilon(1e-7));
    const auto [b, bd] = quench_scale_factor(1.0, 2.0, M_PI / 4.0);
    CHECK(st.log_deriv == doctest::Approx(bd / b).epsilon(1e-7));
  }
}

TEST_CASE("queries outside the trajectory domain throw") {
  const auto traj = solve_ermakov(constant_spec(1.0), 2.0);
  CHECK_THROWS_AS(traj.b(2.5), std::out_of_range);
  CHECK_THROWS_AS(traj.b(-0.1), std::out_of_range);
  CHECK_THROWS_AS(mode_state(traj, -1, 1.0), std::invalid_argument);
}

TEST_CASE("delayed quench keeps (b, bdot) continuous across t_q") {
  const auto traj = solve_ermakov(quench_spec(1.0, 4.0, 2.0), 8.0);
  const double eps = 1e-7;
  CHECK(traj.b(2.0 - eps) == doctest::Approx(traj.b(2.0 + eps)).epsilon(1e-5));
  CHECK(traj.bdot(2.0 - eps) == doctest::Approx(traj.bdot(2.0 + eps)).epsilon(1e-4));
  // Before the quench nothing happens.
  CHECK(traj.b(1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // After it, the shifted closed form applies (initial data at t_q is (1, 0)).
  const auto [br, bdr] = quench_scale_factor(1.0, 2.0, 3.0 - 2.0);
  CHECK(traj.b(3.0) == doctest::Approx(br).epsilon(1e-8));
  CHECK(traj.bdot(3.0) == doctest::Approx(bdr).epsilon(1e-8));
}

TEST_CASE("tabulated schedule self-convergence") {
  std::vector<double> ts, vs;
  for (int i = 0; i <= 40; ++i) {
    const double t = 6.0 * i / 40.0;
    ts.push_back(t);
    vs.push_back(1.0 + 0.3 * std::sin(t) + 0.1 * t);
  }
  const auto spec =
      mode_frequency_spec(ParamSchedule::tabulated(ts, vs), ParamSchedule::constant(0.0), 0.0);
  const auto coarse = solve_ermakov(spec, 6.0, 1e-8);
  const auto fine = solve_ermakov(spec, 6.0, 1e-12);
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 6.0 * i / 200.0;
    worst = std::max(worst, std::abs(coarse.b(t) - fine.b(t)));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("tau is monotone non-decreasing") {
  const auto traj = solve_ermakov(quench_spec(1.0, 4.0, 0.0), 6.0);
  double prev = -1.0;
  for (int i = 0; i <= 300; ++i) {
    const double tau = traj.tau(6.0 * i / 300.0);
    CHECK(tau >= prev);
    prev = tau;
  }
}

TEST_CASE("solver argument validation") {
  CHECK_THROWS_AS(solve_ermakov(constant_spec(1.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_ermakov(constant_spec(1.0), 1.0, -1e-10), std::invalid_argument);
}
