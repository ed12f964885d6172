#include <doctest.h>

#include <cmath>

#include "fgstates/gram.hpp"
#include "fgstates/states.hpp"

using namespace fgstates;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("pointwise values of the five families") {
  const ReducedWord w = ReducedWord::parse(2, "-1 -1 2 2 2 -1");  // |s|=6, gamma=1

  const StateSpec phi = StateSpec::phi_a(2, 0.5);  // b = -0.5 derived
  CHECK(evaluate(phi, w).real() == doctest::Approx(-0.03125).epsilon(1e-14));
  CHECK(evaluate(phi, ReducedWord::parse(2, "1")) == Complex(0.5, 0.0));
  CHECK(evaluate(phi, ReducedWord::parse(2, "-1 2")) == Complex(-0.5, 0.0));
  CHECK(evaluate(phi, ReducedWord::identity(2)) == Complex(1.0, 0.0));

  const StateSpec twisted = StateSpec::phi_a(2, 0.5, kPi / 3);
  const Complex got = evaluate(twisted, ReducedWord::parse(2, "1"));
  CHECK(std::abs(got - 0.5 * std::polar(1.0, kPi / 3)) < 1e-15);
  // tau = 0 kills the twist on the running example
  CHECK(evaluate(twisted, w) == evaluate(phi, w));

  const StateSpec psi = StateSpec::psi_ab(2, 0.5, 0.3);
  CHECK(evaluate(psi, ReducedWord::parse(2, "-1 2")) == Complex(0.3, 0.0));
  CHECK(evaluate(psi, ReducedWord::parse(2, "1 2")) == Complex(0.25, 0.0));
  CHECK(evaluate(psi, w).real() == doctest::Approx(0.01875).epsilon(1e-14));

  const StateSpec u1 = StateSpec::u1_length(2, 0.7);
  CHECK(evaluate(u1, w).real() == doctest::Approx(0.343).epsilon(1e-14));
  CHECK(evaluate(u1, ReducedWord::parse(2, "2 2")) == Complex(1.0, 0.0));

  const StateSpec chi = StateSpec::chi_z(2, Complex(0.0, 1.0));
  CHECK(evaluate(chi, generator_power(2, 1, 3)) == Complex(0.0, -1.0));
  CHECK(evaluate(chi, generator_power(2, 1, -1)) == Complex(0.0, -1.0));
  CHECK(evaluate(chi, ReducedWord::parse(2, "1 2")) == Complex(0.0, 0.0));
  CHECK(evaluate(chi, ReducedWord::identity(2)) == Complex(1.0, 0.0));

  const StateSpec eig = StateSpec::sqrt_n_eigen(2);
  CHECK(evaluate(eig, ReducedWord::parse(2, "1 -2")).real() ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(evaluate(eig, ReducedWord::parse(2, "-1 2")) == Complex(0.0, 0.0));
}

TEST_CASE("zero base convention") {
  const StateSpec psi = StateSpec::psi_ab(2, 0.0, 0.5);
  CHECK(evaluate(psi, ReducedWord::identity(2)) == Complex(1.0, 0.0));
  CHECK(evaluate(psi, ReducedWord::parse(2, "-1 2")) == Complex(0.5, 0.0));
  CHECK(evaluate(psi, ReducedWord::parse(2, "1")) == Complex(0.0, 0.0));

  const StateSpec u1 = StateSpec::u1_length(2, 0.0);
  CHECK(evaluate(u1, ReducedWord::parse(2, "2 2")) == Complex(1.0, 0.0));
  CHECK(evaluate(u1, ReducedWord::parse(2, "1")) == Complex(0.0, 0.0));
}

TEST_CASE("spec construction guards") {
  CHECK_THROWS_AS(StateSpec::chi_z(2, Complex(0.0, 2.0)), ZeroNotOnCircle);
  CHECK_THROWS_AS(evaluate(StateSpec::phi_a(2, 0.5), ReducedWord::identity(3)), RankMismatch);
  CHECK_THROWS_AS(StateSpec::u1_length(2, 0.5).effective_b(), Error);
  CHECK_THROWS_AS(eigen_relation_residual(StateSpec::psi_ab(2, 0.5, 0.2), 3), Error);
}

TEST_CASE("evaluation is hermitian") {
  const std::vector<StateSpec> specs = {
      StateSpec::phi_a(2, 0.6, kPi / 3), StateSpec::psi_ab(2, 0.5, -0.3),
      StateSpec::u1_length(2, -0.5),     StateSpec::chi_z(2, Complex(0.0, 1.0)),
      StateSpec::sqrt_n_eigen(2)};
  for (const StateSpec& spec : specs) {
    for_each_ball_word(2, 5, [&](const ReducedWord& s) {
      CHECK(std::abs(evaluate(spec, s.inverse()) - std::conj(evaluate(spec, s))) < 1e-15);
    });
  }
}

TEST_CASE("sqrt-n eigenstate coincides with the a = 1/sqrt(n) member") {
  for (int n : {2, 3}) {
    const StateSpec eig = StateSpec::sqrt_n_eigen(n);
    const StateSpec phi = StateSpec::phi_a(n, 1.0 / std::sqrt(double(n)));
    for_each_ball_word(n, n == 2 ? 6 : 4, [&](const ReducedWord& s) {
      CHECK(std::abs(evaluate(eig, s) - evaluate(phi, s)) <= 1e-12);
    });
  }
}

TEST_CASE("generator-sum eigen relation") {
  for (int n : {2, 3}) {
    for (double a : {0.0, 0.25, 1.0 / std::sqrt(double(n)), 1.0}) {
      for (double theta : {0.0, kPi / 3}) {
        CHECK(eigen_relation_residual(StateSpec::phi_a(n, a, theta), 4) <= 1e-13);
      }
    }
  }
}

TEST_CASE("kernel residual of the shifted generator sum") {
  // y = na - X annihilates the derived family and measures the gap elsewhere.
  for (int n : {2, 3}) {
    for (double a : {0.25, 0.5, 0.8}) {
      const AlgebraElement y =
          AlgebraElement::delta(ReducedWord::identity(n), Complex(n * a, 0.0)) -
          AlgebraElement::generator_sum(n);
      CHECK(std::abs(left_kernel_residual(StateSpec::phi_a(n, a), y)) <= 1e-12);

      for (double b : {-0.4, 0.0, 0.25}) {
        const double expected = -double(n * n) * a * a + n + n * (n - 1) * b;
        CHECK(left_kernel_residual(StateSpec::psi_ab(n, a, b), y) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  // rank 2 closed form: -4a^2 + 2 + 2b
  const AlgebraElement y2 = AlgebraElement::delta(ReducedWord::identity(2), Complex(1.0, 0.0)) -
                            AlgebraElement::generator_sum(2);
  CHECK(left_kernel_residual(StateSpec::psi_ab(2, 0.5, 0.25), y2) ==
        doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("classification of the pinned examples") {
  const Classification c1 = classify(StateSpec::psi_ab(2, 0.5, 0.25));
  CHECK(c1.positive_definite);
  CHECK(c1.reduced);
  CHECK(c1.ell2);
  CHECK(!c1.pure_family_member);

  const Classification c2 = classify(StateSpec::psi_ab(2, 0.8, -0.2));
  CHECK(!c2.positive_definite);
  CHECK(!c2.reduced);
  CHECK(!c2.ell2);

  const Classification c3 = classify(StateSpec::psi_ab(2, 1.0 / std::sqrt(2.0), 0.0));
  CHECK(c3.positive_definite);
  CHECK(c3.reduced);
  CHECK(!c3.ell2);
  CHECK(c3.pure_family_member);

  const Classification c4 = classify(StateSpec::psi_ab(2, 0.0, 1.0));
  CHECK(c4.positive_definite);
  CHECK(c4.reduced);
  CHECK(!c4.ell2);

  const Classification c5 = classify(StateSpec::psi_ab(2, 1.0, 1.0));
  CHECK(c5.positive_definite);
  CHECK(!c5.reduced);
  CHECK(c5.pure_family_member);

  CHECK(classify(StateSpec::phi_a(2, 0.5)).pure_family_member);
  CHECK(classify(StateSpec::sqrt_n_eigen(3)).pure_family_member);
}

TEST_CASE("classification agrees with the radius-3 Gram oracle") {
  const auto words = ball(2, 3);
  for (double a = -0.95; a < 1.0; a += 0.2) {
    for (double b = -0.95; b < 1.0; b += 0.2) {
      const StateSpec spec = StateSpec::psi_ab(2, a, b);
      const bool claimed = classify(spec).positive_definite;
      const bool observed = psd_check(build_gram(spec, words), 1e-9).is_psd;
      CHECK(claimed == observed);
    }
  }
}

TEST_CASE("ell2 flag matches the spectral radius of the recursion") {
  // On the b-axis the square-summable region is exactly max|lambda| < 1, so
  // the flag is checked against the radius both ways, plus a k-th-root decay
  // witness on the sphere mass for the points claimed square-summable.
  for (double a : {0.0, 0.3, 0.55}) {
    for (double b = -0.9; b < 1.0; b += 0.15) {
      const StateSpec spec = StateSpec::psi_ab(2, a, b);
      const GrowthSeries gs = growth_series_closed_form(spec, 40);
      const double r = std::max(std::abs(gs.lambda_plus), std::abs(gs.lambda_minus));
      if (classify(spec).ell2) {
        CHECK(r < 1.0 - 1e-12);
        const double tail = std::max({gs.C[39], gs.C[40], 1e-300});
        CHECK(std::pow(tail, 1.0 / 40.0) < 0.99);
      } else {
        CHECK(r >= 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("growth series closed form matches enumeration") {
  struct Case {
    int n;
    double a, b;
  };
  const Case cases[] = {{2, 0.5, 0.25}, {2, 0.5, 0.0},  {2, 0.0, -0.5}, {2, 0.5, -0.5},
                        {2, 0.3, -0.2}, {3, 0.0, -0.5}, {3, 0.5, 0.3},  {3, 0.6, 0.0}};
  for (const Case& c : cases) {
    const StateSpec spec = StateSpec::psi_ab(c.n, c.a, c.b);
    const int K = c.n == 2 ? 8 : 6;
    const GrowthSeries closed = growth_series_closed_form(spec, K);
    const GrowthSeries brute = growth_series_brute(spec, K);
    REQUIRE(closed.C.size() == brute.C.size());
    for (int k = 0; k <= K; ++k) {
      CHECK(std::abs(closed.A[k] - brute.A[k]) <= 1e-9 * std::max(1.0, std::abs(brute.A[k])));
      CHECK(std::abs(closed.B[k] - brute.B[k]) <= 1e-9 * std::max(1.0, std::abs(brute.B[k])));
      CHECK(std::abs(closed.C[k] - brute.C[k]) <= 1e-9 * std::max(1.0, std::abs(brute.C[k])));
    }
  }

  const GrowthSeries pinned = growth_series_closed_form(StateSpec::psi_ab(2, 0.5, 0.25), 3);
  CHECK(pinned.lambda_plus == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pinned.lambda_minus == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pinned.C[0] == 1.0);
  CHECK(pinned.A[2] == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(pinned.B[2] == doctest::Approx(0.375).epsilon(1e-13));

  const GrowthSeries flat = growth_series_closed_form(StateSpec::psi_ab(2, 0.5, 0.0), 3);
  CHECK(flat.B[3] == doctest::Approx(0.25).epsilon(1e-13));

  CHECK_THROWS_AS(growth_series_brute(StateSpec::psi_ab(2, 0.5, 0.25), 20), SphereTooLarge);
  CHECK_THROWS_AS(growth_series_closed_form(StateSpec::psi_ab(2, 0.5, 0.25), 0), Error);
}

TEST_CASE("derived-parameter series follow the same closed form") {
  const StateSpec phi = StateSpec::phi_a(2, 0.6);
  const GrowthSeries closed = growth_series_closed_form(phi, 6);
  const GrowthSeries brute = growth_series_brute(phi, 6);
  for (int k = 0; k <= 6; ++k) {
    CHECK(std::abs(closed.C[k] - brute.C[k]) <= 1e-9 * std::max(1.0, std::abs(brute.C[k])));
  }
}

TEST_CASE("polynomial kernel mixtures") {
  const std::vector<Complex> sq = {Complex(-1, 0), Complex(0, 0), Complex(1, 0)};  // t^2 - 1
  const std::vector<std::pair<Complex, double>> half = {{Complex(1, 0), 0.5},
                                                        {Complex(-1, 0), 0.5}};
  const PolyKernelReport rep = poly_kernel_decomposition(2, sq, half);
  CHECK(std::abs(rep.residual) <= 1e-12);
  CHECK(rep.imag_residual <= 1e-15);
  CHECK(rep.max_table_err <= 1e-14);
  REQUIRE(rep.table.size() == 21);
  CHECK(rep.table[10].k == 0);
  CHECK(rep.table[10].psi == Complex(1.0, 0.0));   // even exponent
  CHECK(rep.table[11].psi == Complex(0.0, 0.0));   // odd exponent
  CHECK(rep.table[12].psi == Complex(1.0, 0.0));

  const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
  const std::vector<Complex> cubic = {Complex(-1, 0), Complex(0, 0), Complex(0, 0),
                                      Complex(1, 0)};  // t^3 - 1
  const std::vector<std::pair<Complex, double>> thirds = {
      {Complex(1, 0), 1.0 / 3}, {omega, 1.0 / 3}, {std::conj(omega), 1.0 / 3}};
  const PolyKernelReport rep3 = poly_kernel_decomposition(2, cubic, thirds);
  CHECK(std::abs(rep3.residual) <= 1e-12);
  CHECK(std::abs(rep3.table[13].psi - Complex(1.0, 0.0)) <= 1e-14);  // k = 3
  CHECK(std::abs(rep3.table[14].psi) <= 1e-14);                      // k = 4

  CHECK_THROWS_AS(poly_kernel_decomposition(2, sq, {{Complex(2, 0), 1.0}}), ZeroNotOnCircle);
  CHECK_THROWS_AS(poly_kernel_decomposition(2, sq, {{Complex(0, 1), 1.0}}), NotAPolynomialZero);
  CHECK_THROWS_AS(poly_kernel_decomposition(
                      2, sq, {{Complex(1, 0), 0.6}, {Complex(-1, 0), 0.6}}),
                  WeightsNotConvex);
  CHECK_THROWS_AS(poly_kernel_decomposition(
                      2, sq, {{Complex(1, 0), 1.5}, {Complex(-1, 0), -0.5}}),
                  WeightsNotConvex);
}
