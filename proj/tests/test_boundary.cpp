#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "fgstates/boundary.hpp"

using namespace fgstates;

namespace {

ReducedWord random_reduced(int rank, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> code_d(0, 2 * rank - 1);
  std::vector<Letter> ls;
  while (int(ls.size()) < len) {
    const Letter cand = Letter::from_code(code_d(rng));
    if (!ls.empty() && cand == ls.back().inverse()) continue;
    ls.push_back(cand);
  }
  return ReducedWord::from_letters(rank, ls);
}

}  // namespace

TEST_CASE("alpha parameters at the pinned point") {
  const AlphaParams p = alphas_from_lambda(2, 1.0);
  CHECK(p.alpha_plus == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(p.alpha_minus == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(p.alpha_0 == 0.25);
  CHECK(p.alpha_1 == 0.5);
}

TEST_CASE("alpha normalizations across the parameter interval") {
  for (int n : {2, 3}) {
    for (double lambda : {0.3, 0.5, 1.0, 1.3}) {
      if (lambda >= std::sqrt(double(n))) continue;
      const AlphaParams p = alphas_from_lambda(n, lambda);
      CHECK(std::abs(n * (p.alpha_plus + p.alpha_minus) - 1.0) < 1e-14);
      CHECK(std::abs(n * p.alpha_0 + (n - 1) * p.alpha_1 - 1.0) < 1e-14);
      CHECK(p.alpha_plus > 0);
      CHECK(p.alpha_minus > 0);
    }
  }
  CHECK_THROWS_AS(alphas_from_lambda(2, 0.0), LambdaOutOfRange);
  CHECK_THROWS_AS(alphas_from_lambda(2, std::sqrt(2.0)), LambdaOutOfRange);
  CHECK_THROWS_AS(alphas_from_lambda(2, -1.0), LambdaOutOfRange);
  CHECK_THROWS_AS(alphas_from_lambda(3, 1.8), LambdaOutOfRange);
}

TEST_CASE("cylinder masses multiply along the word") {
  const CylinderMeasure mu(2, alphas_from_lambda(2, 1.0));
  CHECK(mu.cylinder_mass(ReducedWord::identity(2)) == 1.0);
  CHECK(mu.cylinder_mass(ReducedWord::parse(2, "1")) == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(mu.cylinder_mass(ReducedWord::parse(2, "-1")) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(mu.cylinder_mass(ReducedWord::parse(2, "1 2")) ==
        doctest::Approx(1.0 / 24).epsilon(1e-15));
  CHECK(mu.cylinder_mass(ReducedWord::parse(2, "1 -2")) ==
        doctest::Approx(1.0 / 12).epsilon(1e-15));

  CHECK_THROWS_AS(mu.cylinder_mass(ReducedWord::identity(3)), RankMismatch);
  CHECK_THROWS_AS(CylinderMeasure(2, AlphaParams{0.3, 0.3, 0.25, 0.5}), Error);
}

TEST_CASE("cylinder measure is additive and normalized") {
  for (double lambda : {0.5, 1.0, 1.3}) {
    const CylinderMeasure mu(2, alphas_from_lambda(2, lambda));
    for_each_ball_word(2, 5, [&](const ReducedWord& s) {
      double children = 0;
      for (int code = 0; code < 4; ++code) {
        const Letter x = Letter::from_code(code);
        if (!s.is_identity() && x == s.letters().back().inverse()) continue;
        children += mu.cylinder_mass(s.appended(x));
      }
      CHECK(std::abs(children - mu.cylinder_mass(s)) < 1e-12);
    });
    for (int d = 1; d <= 6; ++d) {
      double total = 0;
      for_each_sphere_word(2, d, SphereConstraint::all(),
                           [&](const ReducedWord& s) { total += mu.cylinder_mass(s); });
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("translate derivative equals the cylinder quotient everywhere") {
  const CylinderMeasure mu(2, alphas_from_lambda(2, 1.2));
  for (int j : {1, 2}) {
    const ReducedWord gj = ReducedWord::generator(2, j);
    for (int len = 1; len <= 4; ++len) {
      for_each_sphere_word(2, len, SphereConstraint::all(), [&](const ReducedWord& w) {
        if (w == gj) return;  // quotient degenerates to the whole boundary
        const double expected = mu.cylinder_mass(gj.inverse() * w) / mu.cylinder_mass(w);
        CHECK(rn_derivative(mu, j, w) == doctest::Approx(expected).epsilon(1e-12));
      });
    }
  }
}

TEST_CASE("translate derivative branch table at lambda = 1") {
  const CylinderMeasure mu(2, alphas_from_lambda(2, 1.0));
  CHECK(rn_derivative(mu, 1, ReducedWord::parse(2, "2")) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rn_derivative(mu, 1, ReducedWord::parse(2, "-1")) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rn_derivative(mu, 1, ReducedWord::parse(2, "-2")) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rn_derivative(mu, 1, ReducedWord::parse(2, "1 2")) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(rn_derivative(mu, 1, ReducedWord::parse(2, "1 -2")) ==
        doctest::Approx(4.0).epsilon(1e-14));

  CHECK_THROWS_AS(rn_derivative(mu, 1, ReducedWord::identity(2)), PrefixTooShort);
  CHECK_THROWS_AS(rn_derivative(mu, 1, ReducedWord::parse(2, "1")), PrefixTooShort);
  CHECK_THROWS_AS(rn_derivative(mu, 3, ReducedWord::parse(2, "2")), InvalidGenerator);
  CHECK_THROWS_AS(rn_derivative(mu, 1, ReducedWord::parse(3, "2")), RankMismatch);
}

TEST_CASE("cocycle branch values and their square law") {
  const Cocycle c(2, 1.0);
  CHECK(c.p_value(1, ReducedWord::parse(2, "2")) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(c.p_value(1, ReducedWord::parse(2, "-1")) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.p_value(1, ReducedWord::parse(2, "1")) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(c.p_value(1, ReducedWord::identity(2)), PrefixTooShort);
  CHECK_THROWS_AS(Cocycle(2, -0.3), LambdaOutOfRange);

  for (double lambda : {0.5, 1.0, 1.2}) {
    const Cocycle cc(2, lambda);
    const CylinderMeasure mu(2, alphas_from_lambda(2, lambda));
    const ReducedWord g1 = ReducedWord::generator(2, 1);
    for (int j : {1, 2}) {
      const ReducedWord gj = ReducedWord::generator(2, j);
      for (int len = 1; len <= 3; ++len) {
        for_each_sphere_word(2, len, SphereConstraint::all(), [&](const ReducedWord& w) {
          if (w == gj) return;
          const double p = cc.p_value(j, w);
          CHECK(p * p == doctest::Approx(rn_derivative(mu, j, w)).epsilon(1e-12));
        });
      }
    }
    // the p_j sum to lambda on every branch
    for_each_sphere_word(2, 1, SphereConstraint::all(), [&](const ReducedWord& w) {
      const double sum = cc.p_value(1, w) + cc.p_value(2, w);
      CHECK(sum == doctest::Approx(lambda).epsilon(1e-13));
    });
  }
}

TEST_CASE("cocycle chain rule under the shift") {
  std::mt19937_64 rng(5u);
  std::uniform_int_distribution<int> len_d(0, 3);
  const Cocycle c(2, 1.2);
  for (int trial = 0; trial < 100; ++trial) {
    const ReducedWord s = random_reduced(2, len_d(rng), rng);
    const ReducedWord t = random_reduced(2, len_d(rng), rng);
    const ReducedWord w = random_reduced(2, 8, rng);
    const double lhs = c.cocycle_value(s * t, w);
    const double rhs = c.cocycle_value(s, w) * c.cocycle_value(t, s.inverse() * w);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
  CHECK(c.cocycle_value(ReducedWord::identity(2), ReducedWord::identity(2)) == 1.0);
  CHECK_THROWS_AS(c.cocycle_value(ReducedWord::parse(2, "1 2"), ReducedWord::parse(2, "1")),
                  PrefixTooShort);
}

TEST_CASE("boundary realization reproduces the gamma-free family") {
  for (double lambda : {0.5, 1.0, 1.3}) {
    const Cocycle c(2, lambda);
    const StateSpec spec = StateSpec::phi_a(2, lambda / 2.0);
    for_each_ball_word(2, 3, [&](const ReducedWord& s) {
      CHECK(std::abs(boundary_state(c, s) - evaluate(spec, s).real()) < 1e-11);
    });
    CHECK(boundary_state(c, ReducedWord::generator(2, 1)) ==
          doctest::Approx(lambda / 2).epsilon(1e-13));
  }
  const Cocycle c3(3, 1.5);
  const StateSpec spec3 = StateSpec::phi_a(3, 0.5);
  for_each_ball_word(3, 2, [&](const ReducedWord& s) {
    CHECK(std::abs(boundary_state(c3, s) - evaluate(spec3, s).real()) < 1e-11);
  });
}

TEST_CASE("boundary integral is independent of the partition depth") {
  const Cocycle c(2, 1.1);
  for_each_ball_word(2, 2, [&](const ReducedWord& s) {
    const double base = boundary_state(c, s);
    CHECK(std::abs(boundary_state_at_depth(c, s, s.length() + 2) - base) < 1e-13);
    CHECK(std::abs(boundary_state_at_depth(c, s, s.length() + 3) - base) < 1e-13);
  });
  CHECK_THROWS_AS(boundary_state_at_depth(c, ReducedWord::generator(2, 1), 1), Error);
  CHECK_THROWS_AS(boundary_state(c, generator_power(2, 1, 15)), TooDeep);
}

TEST_CASE("depth-limited weight tables") {
  const CylinderMeasure mu(2, alphas_from_lambda(2, 1.0));
  const DepthWeights table = DepthWeights::from_measure(mu, 3);
  CHECK(table.depth() == 3);
  CHECK(table.mass(ReducedWord::identity(2)) == 1.0);
  CHECK(table.mass(ReducedWord::parse(2, "1 2")) == mu.cylinder_mass(ReducedWord::parse(2, "1 2")));
  CHECK(!table.mass(generator_power(2, 1, 4)).has_value());

  std::map<ReducedWord, double> uniform;
  for_each_sphere_word(2, 3, SphereConstraint::all(),
                       [&](const ReducedWord& s) { uniform.emplace(s, 1.0); });
  REQUIRE(uniform.size() == 36);
  const DepthWeights tree = DepthWeights::from_leaf_weights(2, uniform);
  CHECK(*tree.mass(ReducedWord::parse(2, "1 2 1")) == doctest::Approx(1.0 / 36).epsilon(1e-14));
  CHECK(*tree.mass(ReducedWord::parse(2, "1 2")) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(*tree.mass(ReducedWord::parse(2, "1")) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(*tree.mass(ReducedWord::identity(2)) == doctest::Approx(1.0).epsilon(1e-14));

  std::map<ReducedWord, double> partial = uniform;
  partial.erase(partial.begin());
  CHECK_THROWS_AS(DepthWeights::from_leaf_weights(2, partial), Error);

  std::map<ReducedWord, double> negative = uniform;
  negative.begin()->second = -1.0;
  CHECK_THROWS_AS(DepthWeights::from_leaf_weights(2, negative), Error);
}

TEST_CASE("translate experiment on the exact lambda measures") {
  for (double lambda : {0.7, 1.0, 1.2}) {
    const CylinderMeasure mu(2, alphas_from_lambda(2, lambda));
    const ExperimentResult res = measure_experiment(mu, 4);
    CHECK(res.cylinders_checked == 108);
    CHECK(res.cylinders_skipped == 0);
    CHECK(res.ess_sup_diff == doctest::Approx(lambda).epsilon(1e-13));
    CHECK(res.ess_inf_sum == doctest::Approx(lambda).epsilon(1e-13));
    REQUIRE(res.sup_witness.has_value());
    REQUIRE(res.inf_witness.has_value());
    CHECK(res.sup_witness->letters().front().sign > 0);
    CHECK(res.inf_witness->letters().front().sign < 0);

    const DepthWeights table = DepthWeights::from_measure(mu, 3);
    const ExperimentResult res2 = measure_experiment(table, 2);
    CHECK(res2.cylinders_checked == 12);
    CHECK(res2.ess_sup_diff == doctest::Approx(lambda).epsilon(1e-13));
    CHECK(res2.ess_inf_sum == doctest::Approx(lambda).epsilon(1e-13));
  }
}

TEST_CASE("uniform leaf weights are the lambda = 2/sqrt(3) member") {
  std::map<ReducedWord, double> uniform;
  for_each_sphere_word(2, 3, SphereConstraint::all(),
                       [&](const ReducedWord& s) { uniform.emplace(s, 0.125); });
  const DepthWeights tree = DepthWeights::from_leaf_weights(2, uniform);
  const ExperimentResult res = measure_experiment(tree, 2);
  const double lambda = 2.0 / std::sqrt(3.0);
  CHECK(res.ess_sup_diff == doctest::Approx(lambda).epsilon(1e-13));
  CHECK(res.ess_inf_sum == doctest::Approx(lambda).epsilon(1e-13));
}

TEST_CASE("perturbed weight experiments are reproducible and bounded") {
  std::mt19937_64 rng(42u);
  const DepthWeights w1 = perturbed_lambda_weights(2, 1.0, 3, 0.05, rng);
  const ExperimentResult r1 = measure_experiment(w1, 2);
  CHECK(r1.cylinders_checked == 12);
  CHECK(r1.cylinders_skipped == 0);
  CHECK(r1.ess_sup_diff > 0.8);
  CHECK(r1.ess_sup_diff < 1.25);
  CHECK(r1.ess_inf_sum > 0.8);
  CHECK(r1.ess_inf_sum < 1.25);

  std::mt19937_64 rng2(42u);
  const DepthWeights w2 = perturbed_lambda_weights(2, 1.0, 3, 0.05, rng2);
  const ExperimentResult r2 = measure_experiment(w2, 2);
  CHECK(r1.ess_sup_diff == r2.ess_sup_diff);
  CHECK(r1.ess_inf_sum == r2.ess_inf_sum);

  CHECK_THROWS_AS(perturbed_lambda_weights(2, 1.0, 3, 1.0, rng), Error);
  CHECK_THROWS_AS(perturbed_lambda_weights(2, 1.0, 3, -0.1, rng), Error);
}

TEST_CASE("experiment guards") {
  const CylinderMeasure mu(2, alphas_from_lambda(2, 1.0));
  CHECK_THROWS_AS(measure_experiment(mu, 1), Error);
  const CylinderMeasure mu3(3, alphas_from_lambda(3, 1.0));
  CHECK_THROWS_AS(measure_experiment(mu3, 3), Error);

  // at the table's own depth every quotient needs one level more
  const DepthWeights table = DepthWeights::from_measure(mu, 2);
  CHECK_THROWS_AS(measure_experiment(table, 2), Error);
  CHECK_THROWS_AS(measure_experiment(table, 3), Error);
}
