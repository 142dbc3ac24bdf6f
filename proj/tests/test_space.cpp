#include <doctest.h>

#include <set>

#include "redform/classical.hpp"
#include "redform/errors.hpp"
#include "redform/space.hpp"

using namespace redform;

TEST_CASE("legendre symbol vs brute force") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    std::set<std::int64_t> residues;
    for (std::int64_t x = 1; x < p; ++x) residues.insert(x * x % p);
    for (std::int64_t a = -30; a <= 30; ++a) {
      const std::int64_t r = ((a % p) + p) % p;
      const int expect = r == 0 ? 0 : (residues.count(r) ? 1 : -1);
      CHECK(legendre(a, p) == expect);
    }
  }
}

TEST_CASE("plus-family parameters") {
  SpaceParams p71 = SpaceParams::plus(7, 1);
  CHECK(p71.lambda == 0);
  CHECK(p71.eps2 == 1);
  REQUIRE(p71.eps_p.size() == 1);
  CHECK(p71.eps_p[0] == std::pair<std::int64_t, int>{7, 1});
  CHECK(p71.plus_family);

  SpaceParams p13 = SpaceParams::plus(1, 3);
  CHECK(p13.lambda == 1);
  CHECK(p13.eps2 == -1);
  CHECK(p13.plus_family);

  SpaceParams p73 = SpaceParams::plus(7, 3);
  CHECK(p73.eps_p[0].second == -1);  // (-1/7) = -1
  CHECK_FALSE(p73.plus_family);

  SpaceParams p53 = SpaceParams::plus(5, 3);
  CHECK(p53.eps_p[0].second == 1);  // (-1/5) = +1
  CHECK(p53.plus_family);

  CHECK_THROWS_AS(SpaceParams::plus(2, 1), Error);
  CHECK_THROWS_AS(SpaceParams::plus(9, 1), Error);
  CHECK_THROWS_AS(SpaceParams::plus(7, 2), Error);
}

TEST_CASE("dual parameters") {
  SpaceParams p71 = SpaceParams::plus(7, 1);
  SpaceParams d = p71.dual();
  CHECK(d.k == 3);
  CHECK(d.eps2 == -1);
  CHECK(d.eps_p[0].second == -1);
  // dual = the plus-family space at weight numerator 4-k
  SpaceParams ref = SpaceParams::plus(7, 3);
  CHECK(d.eps2 == ref.eps2);
  CHECK(d.eps_p == ref.eps_p);

  SpaceParams dd = d.dual();
  CHECK(dd.k == 1);
  CHECK(dd.eps2 == p71.eps2);
  CHECK(dd.eps_p == p71.eps_p);
}

TEST_CASE("plus_support at (7,1)") {
  SpaceParams p = SpaceParams::plus(7, 1);
  std::set<std::int64_t> squares;
  for (std::int64_t x = 0; x < 28; ++x) squares.insert(x * x % 28);
  CHECK(squares == std::set<std::int64_t>{0, 1, 4, 8, 9, 16, 21, 25});
  CHECK(plus_support(0, p));
  CHECK(plus_support(8, p));
  CHECK_FALSE(plus_support(2, p));
  for (std::int64_t n = -100; n <= 100; ++n) {
    CHECK(plus_support(n, p) == (squares.count(((n % 28) + 28) % 28) != 0));
    CHECK(plus_support(n, p) == plus_support(n + 28, p));
  }
}

TEST_CASE("epsilon_support equals the square-class law") {
  for (auto [N, k] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {7, 1}, {1, 1}, {1, 3}, {5, 3}, {3, 3}, {7, 3}, {15, 1}, {1, 5}}) {
    SpaceParams p = SpaceParams::plus(N, k);
    for (std::int64_t n = -10 * 4 * N; n <= 10 * 4 * N; ++n) {
      CAPTURE(N);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(epsilon_support(n, p) == plus_support(n, p));
    }
  }
}

TEST_CASE("epsilon_support basics") {
  SpaceParams p = SpaceParams::plus(7, 1);
  CHECK_FALSE(epsilon_support(2, p));
  CHECK_FALSE(epsilon_support(-2, p));
  CHECK(epsilon_support(0, p));
  SpaceParams q = SpaceParams::plus(1, 3);
  CHECK_FALSE(epsilon_support(2, q));
  CHECK(epsilon_support(0, q));
  CHECK(epsilon_support(-1, q));
  CHECK(epsilon_support(-4, q));
  CHECK_FALSE(epsilon_support(-3, q));
}

TEST_CASE("check_epsilon") {
  SpaceParams p = SpaceParams::plus(7, 1);
  CHECK(check_epsilon(theta(60), p).pass);
  VerificationReport rep = check_epsilon(LaurentSeries::monomial(2, Rational(1), 10), p);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(rep.witnesses[0].n == 2);
}

TEST_CASE("s(m)") {
  SpaceParams p = SpaceParams::plus(7, 1);
  CHECK(s_of_m(-3, p) == Rational(1));
  CHECK(s_of_m(0, p) == Rational(2));
  CHECK(s_of_m(-7, p) == Rational(2));
  SpaceParams p15 = SpaceParams::plus(15, 1);
  CHECK(s_of_m(0, p15) == Rational(4));
  CHECK(s_of_m(-5, p15) == Rational(2));
  CHECK(s_of_m(-45, p15) == Rational(4));
  SpaceParams p1 = SpaceParams::plus(1, 3);
  CHECK(s_of_m(0, p1) == Rational(1));
}

TEST_CASE("index of Gamma_0(M)") {
  CHECK(index_gamma0(1) == 1);
  CHECK(index_gamma0(4) == 6);
  CHECK(index_gamma0(28) == 48);
  CHECK(index_gamma0(60) == 144);
  CHECK_THROWS_AS(index_gamma0(0), Error);
}

TEST_CASE("sturm data") {
  SpaceParams p71 = SpaceParams::plus(7, 1);
  SturmData s = sturm_data(LaurentSeries::monomial(-27, Rational(1), 40), p71);
  CHECK(s.k_prime == 1);
  CHECK(s.index == 48);
  CHECK(s.bound == Rational(25));

  SturmData s28 = sturm_data(LaurentSeries::monomial(-28, Rational(1), 40), p71);
  CHECK(s28.k_prime == 1);

  SturmData s29 = sturm_data(LaurentSeries::monomial(-29, Rational(1), 40), p71);
  CHECK(s29.k_prime == 2);

  SpaceParams p13 = SpaceParams::plus(1, 3);
  SturmData s3 = sturm_data(LaurentSeries::monomial(-3, Rational(1), 40), p13);
  CHECK(s3.k_prime == 1);
  CHECK(s3.bound == Rational(9, 2));

  CHECK_THROWS_AS(sturm_data(theta(10), p71), NotWeaklyHolomorphicHypothesis);
}

TEST_CASE("sturm bound is monotone in pole depth") {
  SpaceParams p = SpaceParams::plus(7, 1);
  Rational prev_gap;
  bool first = true;
  for (std::int64_t depth = 1; depth <= 120; ++depth) {
    SturmData s = sturm_data(LaurentSeries::monomial(-depth, Rational(1), 10), p);
    const Rational gap = s.bound - Rational(Int(-depth));
    if (!first) CHECK(gap >= prev_gap);
    prev_gap = gap;
    first = false;
  }
}

TEST_CASE("certify_integrality") {
  SpaceParams p71 = SpaceParams::plus(7, 1);
  // theta: holomorphic route, bound (1/12)*48 = 4
  CHECK(certify_integrality(theta(10), p71).pass);
  VerificationReport rep = certify_integrality(theta(10).scaled(Rational(1, 2)), p71);
  CHECK_FALSE(rep.pass);
  REQUIRE(!rep.witnesses.empty());
  CHECK(rep.witnesses[0].n == 0);
  CHECK(rep.witnesses[0].value == Rational(1, 2));
  CHECK_THROWS_AS(certify_integrality(theta(4), p71), InsufficientPrecision);
  CHECK_THROWS_AS(certify_integrality(LaurentSeries::monomial(-27, Rational(1), 20), p71),
                  InsufficientPrecision);
}

TEST_CASE("integrality checklist") {
  SpaceParams p71 = SpaceParams::plus(7, 1);
  CHECK(integrality_checklist(-1, p71) ==
        std::vector<std::int64_t>{0, -3, -7, -12, -19, -20, -24, -27});
  SpaceParams p13 = SpaceParams::plus(1, 3);
  // range m >= -3: the only supported negative exponent is -1
  CHECK(integrality_checklist(-1, p13) == std::vector<std::int64_t>{-1});
  // the real checklist for (1,3) uses m_eps = 0
  CHECK(integrality_checklist(0, p13) == std::vector<std::int64_t>{-1, -4});
  // empty when the range excludes every exponent (k = 3: no m = 0 either)
  SpaceParams p73 = SpaceParams::plus(7, 3);
  CHECK(integrality_checklist(-29, p73).empty());
}

TEST_CASE("S_{3/2} vanishing level list") {
  CHECK(s32_plus_cusp_space_vanishes(1));
  CHECK(s32_plus_cusp_space_vanishes(7));
  CHECK(s32_plus_cusp_space_vanishes(35));
  CHECK(s32_plus_cusp_space_vanishes(39));
  CHECK(s32_plus_cusp_space_vanishes(119));
  CHECK_FALSE(s32_plus_cusp_space_vanishes(37));
  CHECK_FALSE(s32_plus_cusp_space_vanishes(123));
  CHECK_FALSE(s32_plus_cusp_space_vanishes(9));
}
