#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tdosc/oracle.hpp"
#include "tdosc/reduced.hpp"

using namespace tdosc;

namespace {

const TwoModeContext kStatic{1.0, std::sqrt(3.0), 0.0, 0.0};  // static k0 = J = 1

double w00_closed(const TwoModeContext& ctx, double x, double p) {
  const double w1 = ctx.omega1, w2 = ctx.omega2;
  const double omega11 = 2.0 * w1 * w2 + ctx.coupling_term();
  const double q1 = p + ctx.r1 * x, q2 = p + ctx.r2 * x;
  const double theta = w1 * (w2 * w2 * x * x + q2 * q2) + w2 * (w1 * w1 * x * x + q1 * q1);
  return std::sqrt(4.0 * w1 * w2 / omega11) / M_PI * std::exp(-2.0 * theta / omega11);
}

}  // namespace

TEST_CASE("mixedness parameter") {
  CHECK(mixedness_z({1.3, 1.3, 0.7, 0.7}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mixedness_z(kStatic) ==
        doctest::Approx(std::sqrt(3.0) / (4.0 + 2.0 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(mixedness_z({1.0, 1.0, 0.0, 1e4}) < 1e-7);
}

TEST_CASE("ground-state reduced Wigner function matches its closed form") {
  CHECK(reduced_wigner(kStatic, 0, 0, 0.0, 0.0) ==
        doctest::Approx(std::sqrt(4.0 * std::sqrt(3.0) / (4.0 + 2.0 * std::sqrt(3.0))) / M_PI)
            .epsilon(1e-13));
  const TwoModeContext moving{0.8, 1.9, 0.4, -0.3};
  for (const auto& ctx : {kStatic, moving})
    for (double x : {-1.5, -0.5, 0.0, 0.8, 1.4})
      for (double p : {-1.2, -0.3, 0.0, 0.6, 1.5})
        CHECK(reduced_wigner(ctx, 0, 0, x, p) ==
              doctest::Approx(w00_closed(ctx, x, p)).epsilon(1e-12));
}

TEST_CASE("reduced Wigner functions are normalized") {
  const auto rule = gauss_hermite(40);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      auto w = [&](double x, double p) { return reduced_wigner(kStatic, n, m, x, p); };
      CHECK(std::abs(quad_norm_reduced(w, kStatic, n, m, rule) - 1.0) <= 1e-6);
    }
}

TEST_CASE("reduced Wigner matches the partial-trace quadrature") {
  const auto rule = gauss_hermite(40);
  const double s2 = 1.0 / std::sqrt(2.0);
  const Matrix M2{{s2, s2}, {s2, -s2}};
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m) {
      const ModeState s1{n, kStatic.omega1, kStatic.r1, 0.0};
      const ModeState s2m{m, kStatic.omega2, kStatic.r2, 0.0};
      for (double x : {-0.9, 0.0, 0.7})
        for (double p : {-0.5, 0.0, 1.1}) {
          const double jet = reduced_wigner(kStatic, n, m, x, p);
          const double quad = quad_reduced(s1, s2m, M2, x, p, rule);
          CHECK(jet == doctest::Approx(quad).epsilon(1e-5).scale(1e-3));
        }
    }
}

TEST_CASE("purity closed forms") {
  SUBCASE("ground state equals 2 sqrt(z)") {
    for (double w2 : {1.0, 1.7, 4.0, 9.0})
      for (double r2 : {0.0, 0.8, 2.5}) {
        const TwoModeContext ctx{1.0, w2, 0.0, r2};
        CHECK(purity(ctx, 0, 0) ==
              doctest::Approx(2.0 * std::sqrt(mixedness_z(ctx))).epsilon(1e-12));
      }
  }
  SUBCASE("pure-state context gives 1") {
    CHECK(purity({2.2, 2.2, -0.4, -0.4}, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("first excited ratio is gamma1 = (3 - 4z)/4") {
    const double z = mixedness_z(kStatic);
    CHECK(purity(kStatic, 1, 0) / purity(kStatic, 0, 0) ==
          doctest::Approx(0.25 * (3.0 - 4.0 * z)).epsilon(1e-11));
  }
}

TEST_CASE("purity bounds and swap symmetry") {
  const TwoModeContext ctx{1.2, 2.1, 0.5, -0.6};
  const TwoModeContext swapped{2.1, 1.2, -0.6, 0.5};
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      const double p = purity(ctx, n, m);
      CHECK(p > 0.0);
      CHECK(p <= 1.0 + 1e-12);
      // High levels cancel too many digits in double; the symmetry is checked
      // on the extended-precision path there.
      if (n + m <= 2)
        CHECK(p == doctest::Approx(purity(swapped, m, n)).epsilon(1e-12));
      CHECK(purity_precise(ctx, n, m) ==
            doctest::Approx(purity_precise(swapped, m, n)).epsilon(1e-12));
    }
}

TEST_CASE("ratios depend only on z") {
  // Two contexts engineered to share z: (1, w, D=0) and a rescaled pair with
  // nonzero D chosen to give the same Omega(1,1) ratio.
  const TwoModeContext a{1.0, 2.0, 0.0, 0.0};
  const double za = mixedness_z(a);
  // For ctx (w1, w2, D): z = w1 w2 / (2 w1 w2 + w1^2 + w2^2 + D).
  // Pick w1 = w2 = 1 and solve for D.
  const double D = 1.0 / za - 4.0;
  const TwoModeContext b{1.0, 1.0, 0.0, std::sqrt(D)};
  CHECK(mixedness_z(b) == doctest::Approx(za).epsilon(1e-14));
  for (int n = 1; n <= 3; ++n) {
    const double ra = purity_precise(a, n, 0) / purity_precise(a, 0, 0);
    const double rb = purity_precise(b, n, 0) / purity_precise(b, 0, 0);
    CHECK(ra == doctest::Approx(rb).epsilon(1e-10));
    const double da = purity_precise(a, n, n) / purity_precise(a, 0, 0);
    const double db = purity_precise(b, n, n) / purity_precise(b, 0, 0);
    CHECK(da == doctest::Approx(db).epsilon(1e-10));
  }
}

TEST_CASE("purity ratio polynomial coefficients") {
  SUBCASE("gamma rows") {
    const auto g1 = ratio_gamma(1);
    CHECK(g1.c[0] == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(g1.c[1] == doctest::Approx(-1.0).epsilon(1e-10));
    const auto g2 = ratio_gamma(2);
    CHECK(g2.c[0] == doctest::Approx(41.0 / 64.0).epsilon(1e-10));
    CHECK(g2.c[1] == doctest::Approx(-104.0 / 64.0).epsilon(1e-10));
    CHECK(g2.c[2] == doctest::Approx(144.0 / 64.0).epsilon(1e-10));
    const auto g3 = ratio_gamma(3);
    CHECK(g3.c[0] == doctest::Approx(147.0 / 256.0).epsilon(1e-10));
    CHECK(g3.c[3] == doctest::Approx(-1600.0 / 256.0).epsilon(1e-10));
  }
  SUBCASE("delta rows") {
    const auto d1 = ratio_delta(1);
    CHECK(d1.c[0] == doctest::Approx(9.0 / 16.0).epsilon(1e-10));
    CHECK(d1.c[1] == doctest::Approx(-40.0 / 16.0).epsilon(1e-10));
    CHECK(d1.c[2] == doctest::Approx(144.0 / 16.0).epsilon(1e-10));
    const auto d2 = ratio_delta(2);
    const double ref[] = {1681.0 / 4096, -19344.0 / 4096, 256608.0 / 4096, -1440000.0 / 4096,
                          2822400.0 / 4096};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(d2.c[k] - ref[k]) <= 1e-8);
  }
  SUBCASE("delta3 self-check against direct evaluation") {
    const auto d3 = ratio_delta(3);
    CHECK(d3.degree() == 6);
    for (double z : {0.07, 0.16, 0.24}) {
      const double direct = purity_ratio_at_z(z, 3, 3);
      CHECK(d3.eval(z) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("ratio monotonicity on a z grid") {
  std::vector<PolynomialCoeffs> gammas, deltas;
  for (int n = 1; n <= 3; ++n) {
    gammas.push_back(ratio_gamma(n));
    deltas.push_back(ratio_delta(n));
  }
  for (int i = 1; i <= 24; ++i) {
    const double z = 0.25 * i / 24.0;
    CHECK(gammas[0].eval(z) >= gammas[1].eval(z) - 1e-12);
    CHECK(gammas[1].eval(z) >= gammas[2].eval(z) - 1e-12);
    for (int n = 0; n < 3; ++n) CHECK(deltas[n].eval(z) <= gammas[n].eval(z) + 1e-12);
  }
}

TEST_CASE("extended-precision purity agrees with the double path") {
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      CHECK(purity_precise(kStatic, n, m) ==
            doctest::Approx(purity(kStatic, n, m)).epsilon(1e-6));
}

TEST_CASE("capability bounds and argument validation") {
  CHECK_THROWS_AS(reduced_wigner(kStatic, -1, 0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reduced_wigner(kStatic, kReducedWignerMaxLevel + 1, 0, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(purity(kStatic, kPurityMaxLevel + 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(purity(kStatic, 0, -2), std::invalid_argument);
  CHECK_THROWS_AS(ratio_gamma(0), std::invalid_argument);
  CHECK_THROWS_AS(purity_ratio_at_z(0.0, 1, 0), std::domain_error);
  CHECK_THROWS_AS(purity_ratio_at_z(0.3, 1, 0), std::domain_error);
}
