#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf/phase.hpp"

#include <cmath>
#include <random>

using namespace hopf;

TEST_CASE("vector field at reference points") {
  SolitonParams n1{1};

  SUBCASE("equilibrium point is a zero") {
    const auto F = vector_field(n1, {std::sqrt(0.5), 0.0});
    CHECK(std::fabs(F[0]) < 1e-15);
    CHECK(std::fabs(F[1]) < 1e-15);
  }

  SUBCASE("hand substitution at (0.5, 0)") {
    const auto F = vector_field(n1, {0.5, 0.0});
    CHECK(F[0] == 0.0);
    CHECK(F[1] == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("on the invariant circle the field is tangent: (v, -u)") {
    const double u = std::cos(0.3), v = -std::sin(0.3);
    // nudge just outside so 1-u^2-v^2 clamps to exactly 0
    const double scale = 1.0 + 1e-15;
    const auto F = vector_field(n1, {u * scale, v * scale});
    CHECK(F[0] == doctest::Approx(-std::sin(0.3)).epsilon(1e-12));
    CHECK(F[1] == doctest::Approx(-std::cos(0.3)).epsilon(1e-12));
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(vector_field(n1, {-0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(vector_field(n1, {0.9, 0.9}), DomainError);
  }
}

TEST_CASE("g_of and zeta") {
  SolitonParams n1{1};
  CHECK(g_of({1.0, 0.0}) == 0.0);
  CHECK(g_of({0.6, 0.3}) == doctest::Approx(0.7416198487095663).epsilon(1e-12));
  SolitonParams n2{2};
  // g at the equilibrium u-coordinate: sqrt(1/2n)
  for (int n = 1; n <= 5; ++n) {
    SolitonParams par{n};
    const auto eq = equilibrium(par);
    CHECK(g_of({eq.point.u, 0.0}) ==
          doctest::Approx(std::sqrt(1.0 / (2.0 * n))).epsilon(1e-12));
  }
  CHECK(zeta(n1, {1.0, 0.0}) == 0.0);
  CHECK(zeta(n1, {0.6, 0.3}) == doctest::Approx(0.4449719092257398).epsilon(1e-12));
  CHECK(zeta(n2, {0.5, 0.0}) == doctest::Approx(0.10825317547305483).epsilon(1e-12));

  bool below = false;
  g_of({0.9, 0.9}, &below);
  CHECK(below);
  g_of({0.6, 0.3}, &below);
  CHECK(!below);
}

TEST_CASE("equilibrium and linearization") {
  SUBCASE("n=1 closed forms") {
    const auto eq = equilibrium(SolitonParams{1});
    CHECK(eq.point.u == doctest::Approx(0.7071067811865476).epsilon(1e-14));
    CHECK(eq.point.v == 0.0);
    CHECK(eq.alpha == doctest::Approx(-0.35355339).epsilon(1e-8));
    // (-1 + i sqrt(31)) / (2 sqrt(2))
    CHECK(eq.beta == doctest::Approx(std::sqrt(31.0) / (2.0 * std::sqrt(2.0)))
                         .epsilon(1e-14));
    CHECK(eq.beta == doctest::Approx(1.9685019685).epsilon(1e-10));
    CHECK(eq.jacobian[0][0] == 0.0);
    CHECK(eq.jacobian[0][1] == 1.0);
    CHECK(eq.jacobian[1][0] == -4.0);
    CHECK(eq.jacobian[1][1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  }

  SUBCASE("n=2 point") {
    const auto eq = equilibrium(SolitonParams{2});
    CHECK(eq.point.u == doctest::Approx(0.8660254037844386).epsilon(1e-14));
  }

  SUBCASE("closed form for n = 1..10, stable spiral") {
    for (int n = 1; n <= 10; ++n) {
      const auto eq = equilibrium(SolitonParams{n});
      const double a = -1.0 / (2.0 * std::sqrt(2.0 * n));
      const double b = std::sqrt(32.0 * n * n - 1.0) / (2.0 * std::sqrt(2.0 * n));
      CHECK(std::fabs(eq.alpha - a) < 1e-12);
      CHECK(std::fabs(eq.beta - b) < 1e-12);
      CHECK(eq.alpha < 0.0);
      CHECK(eq.beta > 0.0);
      // eigenvalues solve the characteristic polynomial of the jacobian
      const std::complex<double> s = eq.eigenvalue_plus;
      const std::complex<double> res =
          s * s - (eq.jacobian[0][0] + eq.jacobian[1][1]) * s +
          (eq.jacobian[0][0] * eq.jacobian[1][1] - eq.jacobian[0][1] * eq.jacobian[1][0]);
      CHECK(std::abs(res) < 1e-10);
      // vector field vanishes there
      const auto F = vector_field(SolitonParams{n}, eq.point);
      CHECK(std::fabs(F[0]) < 1e-14);
      CHECK(std::fabs(F[1]) < 1e-13);
    }
  }

  SUBCASE("only zero of the field on a dense grid") {
    for (int n : {1, 2, 3}) {
      SolitonParams par{n};
      const auto eq = equilibrium(par);
      for (int i = 1; i < 200; ++i)
        for (int j = -140; j < 140; ++j) {
          const PhasePoint p{i / 200.0, j / 140.0};
          if (p.u * p.u + p.v * p.v >= 1.0) continue;
          if (std::hypot(p.u - eq.point.u, p.v - eq.point.v) < 1e-3) continue;
          const auto F = vector_field(par, p);
          CHECK(std::hypot(F[0], F[1]) > 1e-6);
        }
    }
  }
}

TEST_CASE("clifford radii") {
  const auto r1 = clifford_radii(SolitonParams{1});
  CHECK(r1[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(r1[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  const auto r2 = clifford_radii(SolitonParams{2});
  CHECK(r2[0] == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(r2[1] == doctest::Approx(0.5).epsilon(1e-15));
  for (int n = 1; n <= 10; ++n) {
    CHECK(clifford_radii(SolitonParams{n})[0] ==
          doctest::Approx(equilibrium(SolitonParams{n}).point.u).epsilon(1e-15));
    const auto r = clifford_radii(SolitonParams{n});
    CHECK(r[0] * r[0] + r[1] * r[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("polar angle rate") {
  SolitonParams n1{1};
  const auto eq = equilibrium(n1);

  SUBCASE("on the v-axis through the equilibrium the rate is -1") {
    for (double r : {0.05, 0.1, 0.2}) {
      CHECK(polar_angle_rate(n1, {eq.point.u, r}) == doctest::Approx(-1.0).epsilon(1e-12));
    }
  }

  SUBCASE("chain-rule consistency with the vector field") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uu(0.1, 0.95), vv(-0.7, 0.7);
    int done = 0;
    while (done < 200) {
      PhasePoint p{uu(rng), vv(rng)};
      if (p.u * p.u + p.v * p.v > 0.98) continue;
      const double du = p.u - eq.point.u;
      const double r2 = du * du + p.v * p.v;
      if (r2 < 1e-4) continue;
      const auto F = vector_field(n1, p);
      const double expected = (du * F[1] - p.v * F[0]) / r2;
      CHECK(polar_angle_rate(n1, p) == doctest::Approx(expected).epsilon(1e-10));
      ++done;
    }
  }

  SUBCASE("degenerate at the equilibrium") {
    CHECK_THROWS_AS(polar_angle_rate(n1, eq.point), DomainError);
  }
}

TEST_CASE("monotone quantity: closed-form derivative equals u^(2n-1) v^2") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uu(0.05, 0.98), vv(-0.9, 0.9);
  for (int n : {1, 2, 3}) {
    SolitonParams par{n};
    int done = 0;
    while (done < 300) {
      PhasePoint p{uu(rng), vv(rng)};
      if (p.u * p.u + p.v * p.v > 0.97) continue;
      const double lhs = zeta_flow_derivative(par, p);
      const double rhs = ipow(p.u, 2 * n - 1) * p.v * p.v;
      CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
      ++done;
    }
  }
}

TEST_CASE("unit circle is invariant: 2uP + 2vQ = 0 on it") {
  for (int n : {1, 2, 3}) {
    SolitonParams par{n};
    for (int k = 1; k < 60; ++k) {
      const double phi = k * 0.025;
      if (std::cos(phi) <= 0.01) continue;
      // representable points on/just outside the circle clamp g to 0
      const double scale = 1.0 + 1e-15;
      PhasePoint p{std::cos(phi) * scale, -std::sin(phi) * scale};
      const auto F = vector_field(par, p);
      CHECK(std::fabs(2 * p.u * F[0] + 2 * p.v * F[1]) < 1e-12);
    }
  }
}
