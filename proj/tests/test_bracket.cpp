#include <doctest.h>

#include <random>

#include "redform/basis.hpp"
#include "redform/bracket.hpp"
#include "redform/classical.hpp"
#include "redform/errors.hpp"

using namespace redform;

namespace {

LaurentSeries random_poly(std::mt19937& rng, std::int64_t prec) {
  std::uniform_int_distribution<int> nterms(1, 5), expd(-3, 6), numd(-7, 7), dend(1, 3);
  std::vector<LaurentSeries::Term> t;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) t.emplace_back(expd(rng), Rational(numd(rng), dend(rng)));
  return LaurentSeries(std::move(t), prec);
}

}  // namespace

TEST_CASE("generalized binomials") {
  CHECK(binomial_generalized(Rational(10), 0) == Rational(1));
  CHECK(binomial_generalized(Rational(10), 2) == Rational(45));
  CHECK(binomial_generalized(Rational(1, 2), 1) == Rational(1, 2));
  CHECK(binomial_generalized(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binomial_generalized(Rational(13, 2), 2) == Rational(143, 8));
  CHECK(binomial_generalized(Rational(3), 5) == Rational(0));
}

TEST_CASE("bracket order zero is the product") {
  std::mt19937 rng(99);
  for (int i = 0; i < 20; ++i) {
    LaurentSeries f = random_poly(rng, 12), g = random_poly(rng, 12);
    LaurentSeries b = rc_bracket(f, Rational(1, 2), g, Rational(10), 0);
    CHECK(equal_below(b, mul(f, g), std::min(b.precision(), mul(f, g).precision())));
  }
}

TEST_CASE("first bracket at equal weights is antisymmetric: [f,f]_1 = 0") {
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    LaurentSeries f = random_poly(rng, 12);
    CHECK(rc_bracket(f, Rational(7, 2), f, Rational(7, 2), 1).is_zero());
  }
}

TEST_CASE("bracket symmetry [f,g]_n = (-1)^n [g,f]_n") {
  std::mt19937 rng(42);
  for (int i = 0; i < 25; ++i) {
    LaurentSeries f = random_poly(rng, 14), g = random_poly(rng, 14);
    for (unsigned n = 0; n <= 4; ++n) {
      LaurentSeries a = rc_bracket(f, Rational(1, 2), g, Rational(4), n);
      LaurentSeries b = rc_bracket(g, Rational(4), f, Rational(1, 2), n);
      if (n % 2 == 1) b = b.negated();
      CHECK(equal_below(a, b, std::min(a.precision(), b.precision())));
    }
  }
}

TEST_CASE("bracket weight preconditions") {
  LaurentSeries f = theta(8);
  CHECK_THROWS_AS(rc_bracket(f, Rational(1, 3), f, Rational(4), 1), Error);
}

TEST_CASE("first bracket of the level-28 pool: valuation and support") {
  // [theta, E_10(28 tau)]_1 / Delta(28 tau): D kills theta's constant term, so
  // the bracket has valuation 1 and the quotient valuation 1 - 28 = -27 --
  // exactly the deepest pole the finite checklist needs.
  const std::int64_t prec = 40;
  LaurentSeries th = theta(prec + 56);
  LaurentSeries e10 = dilate(eisenstein(10, 4), 28).truncated(prec + 56);
  LaurentSeries num = rc_bracket(th, Rational(1, 2), e10, Rational(10), 1);
  CHECK(num.valuation() == 1);
  LaurentSeries rc1 = divide(num, dilate(delta(4), 28).truncated(prec + 56));
  CHECK(rc1.valuation() == -27);
  SpaceParams p = SpaceParams::plus(7, 1);
  CHECK(check_epsilon(rc1.truncated(prec), p).pass);
}

TEST_CASE("support preservation across the level-28 pool") {
  SpaceParams p = SpaceParams::plus(7, 1);
  for (const LaurentSeries& f : spanning_pool(p, -28, 60)) {
    CHECK(check_epsilon(f, p).pass);
  }
}
