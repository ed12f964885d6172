#include <doctest.h>

#include <random>

#include "fgstates/algebra.hpp"

using namespace fgstates;

namespace {

ReducedWord random_word(std::mt19937_64& rng, int rank, int maxlen) {
  const int len = int(rng() % (maxlen + 1));
  std::vector<Letter> ls;
  while (int(ls.size()) < len) {
    Letter x = Letter::from_code(int(rng() % (2 * rank)));
    if (!ls.empty() && x == ls.back().inverse()) continue;
    ls.push_back(x);
  }
  return ReducedWord::from_reduced(rank, std::move(ls));
}

// Small Gaussian-integer coefficients keep every product in the tests exact.
AlgebraElement random_element(std::mt19937_64& rng, int rank, int terms, int maxlen) {
  AlgebraElement x(rank);
  for (int i = 0; i < terms; ++i) {
    const double re = double(int(rng() % 7)) - 3.0;
    const double im = double(int(rng() % 7)) - 3.0;
    x.add(random_word(rng, rank, maxlen), Complex(re, im));
  }
  return x;
}

L2Vector random_vector(std::mt19937_64& rng, int rank, int terms, int maxlen) {
  L2Vector v(rank);
  for (int i = 0; i < terms; ++i) {
    const double re = double(int(rng() % 7)) - 3.0;
    const double im = double(int(rng() % 7)) - 3.0;
    v.add(random_word(rng, rank, maxlen), Complex(re, im));
  }
  return v;
}

}  // namespace

TEST_CASE("generator sum convolution identities") {
  const AlgebraElement X = AlgebraElement::generator_sum(2);
  const AlgebraElement XstarX = X.adjoint() * X;

  CHECK(XstarX.support_size() == 3);
  CHECK(XstarX.coeff(ReducedWord::identity(2)) == Complex(2.0, 0.0));
  CHECK(XstarX.coeff(ReducedWord::parse(2, "-1 2")) == Complex(1.0, 0.0));
  CHECK(XstarX.coeff(ReducedWord::parse(2, "-2 1")) == Complex(1.0, 0.0));

  const AlgebraElement XXstar = X * X.adjoint();
  CHECK(XXstar.coeff(ReducedWord::identity(2)) == Complex(2.0, 0.0));
  CHECK(XXstar.coeff(ReducedWord::parse(2, "1 -2")) == Complex(1.0, 0.0));
}

TEST_CASE("ring laws on random elements") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = rep % 2 ? 2 : 3;
    const AlgebraElement x = random_element(rng, n, 4, 8);
    const AlgebraElement y = random_element(rng, n, 4, 8);
    const AlgebraElement z = random_element(rng, n, 3, 8);
    CHECK(((x * y) * z).terms() == (x * (y * z)).terms());
    CHECK((x * (y + z)).terms() == (x * y + x * z).terms());
    CHECK((x * y).adjoint().terms() == (y.adjoint() * x.adjoint()).terms());
    CHECK(x.adjoint().adjoint().terms() == x.terms());

    const AlgebraElement e = AlgebraElement::unit(n);
    CHECK((x * e).terms() == x.terms());
    CHECK((e * x).terms() == x.terms());
  }
}

TEST_CASE("left action is a module action with the right adjoint") {
  std::mt19937_64 rng(102);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = rep % 2 ? 2 : 3;
    const AlgebraElement x = random_element(rng, n, 4, 6);
    const AlgebraElement y = random_element(rng, n, 3, 6);
    const L2Vector v = random_vector(rng, n, 4, 6);
    const L2Vector w = random_vector(rng, n, 4, 6);

    CHECK(act(x * y, v).entries() == act(x, act(y, v)).entries());
    CHECK(inner(act(x, v), w) == inner(v, act(x.adjoint(), w)));
  }
}

TEST_CASE("delta action shifts basis vectors") {
  const ReducedWord s = ReducedWord::parse(2, "1 -2");
  const ReducedWord t = ReducedWord::parse(2, "2 2");
  const L2Vector moved = act(AlgebraElement::delta(s), L2Vector::basis(t));
  CHECK(moved.support_size() == 1);
  CHECK(moved.entry(s * t) == Complex(1.0, 0.0));
  CHECK(norm_sq(moved) == 1.0);
}

TEST_CASE("positive powers of the generator sum spread with norm n^k") {
  for (int n : {2, 3}) {
    const AlgebraElement X = AlgebraElement::generator_sum(n);
    L2Vector v = L2Vector::basis(ReducedWord::identity(n));
    double expected = 1.0;
    for (int k = 1; k <= 6; ++k) {
      v = act(X, v);
      expected *= n;
      CHECK(norm_sq(v) == expected);
      CHECK(v.support_size() == std::size_t(ipow(double(n), k)));
    }
  }
}

TEST_CASE("half-space split") {
  CHECK(in_half_space(HalfSpace::Sminus, ReducedWord::identity(2)));
  CHECK(!in_half_space(HalfSpace::Splus, ReducedWord::identity(2)));
  CHECK(in_half_space(HalfSpace::Splus, ReducedWord::parse(2, "1 -2")));
  CHECK(in_half_space(HalfSpace::Sminus, ReducedWord::parse(2, "-2 1 1")));

  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 100; ++rep) {
    const L2Vector v = random_vector(rng, 2, 5, 6);
    const L2Vector p = project(HalfSpace::Splus, v);
    const L2Vector q = project(HalfSpace::Sminus, v);
    CHECK((p + q).entries() == v.entries());
    CHECK(project(HalfSpace::Splus, q).support_size() == 0);
    CHECK(project(HalfSpace::Splus, p).entries() == p.entries());
  }

  const L2Vector pid = project(HalfSpace::Splus, L2Vector::basis(ReducedWord::identity(2)));
  CHECK(pid.support_size() == 0);
}

TEST_CASE("operator identities hold on the small balls") {
  for (int n : {2, 3}) {
    const ObsReport rep = verify_obs_identities(n, 3);
    CHECK(rep.violations.empty());
    std::int64_t expected = 0;
    for (int k = 0; k <= 3; ++k) expected += std::int64_t(sphere_cardinality(n, k));
    CHECK(rep.checked == expected);
  }
}

TEST_CASE("window averages along the u_1 line") {
  CHECK(chi_limit_average(2, ReducedWord::identity(2), 5) == Complex(1.0, 0.0));
  CHECK(chi_limit_average(2, ReducedWord::parse(2, "1"), 5) == Complex(0.8, 0.0));
  CHECK(chi_limit_average(2, ReducedWord::parse(2, "-1"), 5) == Complex(0.8, 0.0));
  CHECK(chi_limit_average(2, ReducedWord::parse(2, "1 1"), 5) == Complex(0.6, 0.0));
  CHECK(chi_limit_average(2, generator_power(2, 1, 6), 5) == Complex(0.0, 0.0));
  CHECK(chi_limit_average(2, ReducedWord::parse(2, "2"), 5) == Complex(0.0, 0.0));
  CHECK(chi_limit_average(2, ReducedWord::parse(2, "1 2 -1"), 5) == Complex(0.0, 0.0));
}

TEST_CASE("text form round trip") {
  std::mt19937_64 rng(104);
  for (int rep = 0; rep < 50; ++rep) {
    const AlgebraElement x = random_element(rng, 3, 5, 8);
    const AlgebraElement y = AlgebraElement::from_text(3, x.to_text());
    CHECK(y.terms() == x.terms());
  }
  CHECK_THROWS_AS(AlgebraElement::from_text(2, "1 0 missing separator"), Error);
  CHECK_THROWS_AS(AlgebraElement::from_text(2, "1 : 1"), Error);

  const AlgebraElement z = AlgebraElement::from_text(2, "0.5 -1 : 1 2\n2 0 : e\n");
  CHECK(z.coeff(ReducedWord::identity(2)) == Complex(2.0, 0.0));
  CHECK(z.coeff(ReducedWord::parse(2, "1 2")) == Complex(0.5, -1.0));
}

TEST_CASE("tiny coefficients are pruned") {
  AlgebraElement x(2);
  x.add(ReducedWord::identity(2), Complex(1e-20, 0.0));
  CHECK(x.is_zero());

  std::mt19937_64 rng(105);
  const AlgebraElement y = random_element(rng, 2, 6, 6);
  CHECK((y - y).is_zero());
}
