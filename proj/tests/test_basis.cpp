#include <doctest.h>

#include <future>
#include <map>
#include <random>

#include "redform/basis.hpp"
#include "redform/classical.hpp"
#include "redform/errors.hpp"

using namespace redform;

namespace {

// Golden level-28 weight-1/2 data: every classical displayed coefficient
// through q^16.
const std::map<std::int64_t, std::map<std::int64_t, long>> kGolden71 = {
    {0, {{0, 1}, {1, 2}, {4, 2}, {8, 0}, {9, 2}, {16, 2}}},
    {-3, {{0, 0}, {1, -3}, {4, -2}, {8, 6}, {9, 5}, {16, -10}}},
    {-7, {{0, 0}, {1, -10}, {4, 4}, {8, 28}, {9, -24}, {16, 60}}},
    {-12, {{0, 0}, {1, -10}, {4, -25}, {8, -6}, {9, 46}, {16, 152}}},
    {-19, {{0, 0}, {1, -1}, {4, -50}, {8, -50}, {9, -153}, {16, 798}}},
    {-20, {{0, 0}, {1, -22}, {4, 26}, {8, -180}, {9, -78}, {16, -338}}},
    {-24, {{0, 0}, {1, -2}, {4, -28}, {8, 225}, {9, -450}, {16, -2976}}},
    {-27, {{0, 0}, {1, 12}, {4, 52}, {8, -468}, {9, 156}, {16, -1300}}},
};

}  // namespace

TEST_CASE("the eight golden expansions at (7,1)") {
  BasisBuilder b(SpaceParams::plus(7, 1));
  b.build(-28, 60);
  for (const auto& [m, coeffs] : kGolden71) {
    ReducedForm rf = b.form(m, 40);
    CAPTURE(m);
    CHECK(rf.series->valuation() == m);
    CHECK(rf.series->coefficient(m) == Rational(1));
    for (const auto& [e, v] : coeffs) {
      CAPTURE(e);
      CHECK(rf.series->coefficient(e) == Rational(v));
    }
    CHECK(rf.s == s_of_m(m, b.params()));
  }
}

TEST_CASE("reduced property: zero at every other pivot") {
  BasisBuilder b(SpaceParams::plus(7, 1));
  b.build(-28, 60);
  const auto pivots = b.pool_pivots();
  for (std::int64_t m : pivots) {
    ReducedForm rf = b.form(m, 50);
    for (std::int64_t mp : pivots) {
      if (mp <= m || mp >= 50) continue;
      CAPTURE(m);
      CAPTURE(mp);
      CHECK(rf.series->coefficient(mp) == Rational(0));
    }
  }
}

TEST_CASE("existence audit") {
  BasisBuilder b71(SpaceParams::plus(7, 1));
  b71.build(-28, 50);
  CHECK(b71.snapshot().existence_gaps.empty());

  BasisBuilder b13(SpaceParams::plus(1, 3));
  b13.build(-8, 50);
  // k = 3: there is no f_0 (the holomorphic plus space vanishes); the only
  // gap in range is m = 0.
  CHECK(b13.snapshot().existence_gaps == std::vector<std::int64_t>{0});
}

TEST_CASE("the weight-3/2 seed matches the hand-derived g_1 expansion") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  ReducedForm g1 = b.form(-1, 12);
  CHECK(g1.series->coefficient(-1) == Rational(1));
  CHECK(g1.series->coefficient(0) == Rational(-2));
  CHECK(g1.series->coefficient(3) == Rational(248));
  CHECK(g1.series->coefficient(4) == Rational(-492));
  CHECK(g1.series->coefficient(7) == Rational(4119));
  CHECK(g1.series->coefficient(8) == Rational(-7256));
  CHECK(g1.series->coefficient(1) == Rational(0));
  CHECK(g1.series->coefficient(2) == Rational(0));
  CHECK(g1.s == Rational(1));
}

TEST_CASE("weight-1/2 basis at level 4 starts with theta and f_3") {
  BasisBuilder b(SpaceParams::plus(1, 1));
  ReducedForm f0 = b.form(0, 20);
  CHECK(equal_below(*f0.series, theta(20), 20));
  ReducedForm f3 = b.form(-3, 6);
  CHECK(f3.series->coefficient(-3) == Rational(1));
  CHECK(f3.series->coefficient(0) == Rational(0));
  CHECK(f3.series->coefficient(1) == Rational(-248));
  ReducedForm f4 = b.form(-4, 6);
  CHECK(f4.series->coefficient(1) == Rational(492));
}

TEST_CASE("Borcherds-Zagier duality cross-checks the two level-4 bases") {
  // B(D, d) = -A(d, D): the weight-3/2 coefficients against the
  // theta-seeded weight-1/2 basis, including a deep j-extension column.
  BasisBuilder b13(SpaceParams::plus(1, 3));
  BasisBuilder b11(SpaceParams::plus(1, 1));
  const std::int64_t window = 40;
  for (std::int64_t D : {1, 4, 5, 8, 9, 25}) {
    ReducedForm g = b13.form(-D, window);
    for (std::int64_t d = 3; d <= 32; ++d) {
      if (!epsilon_support(-d, b11.params())) continue;  // f_d exists iff -d supported
      ReducedForm f = b11.form(-d, D + 2);
      CAPTURE(D);
      CAPTURE(d);
      CHECK(g.series->coefficient(d) == -(f.series->coefficient(D)));
    }
  }
}

TEST_CASE("m_epsilon") {
  CHECK(compute_m_epsilon(SpaceParams::plus(7, 1), 64) == -1);
  CHECK(compute_m_epsilon(SpaceParams::plus(1, 3), 64) == 0);
  CHECK(compute_m_epsilon(SpaceParams::plus(1, 1), 64) == -1);
  CHECK(compute_m_epsilon(SpaceParams::plus(5, 3), 64) == 0);
  CHECK(compute_m_epsilon(SpaceParams::plus(7, 5), 64) == std::nullopt);
  CHECK_THROWS_AS(compute_m_epsilon(SpaceParams::plus(37, 1), 64), HypothesisUnverified);
}

TEST_CASE("integrality certificates") {
  BasisBuilder b71(SpaceParams::plus(7, 1));
  IntegralityCertificate cert = basis_certificate(b71);
  CHECK(cert.m_eps == -1);
  CHECK(cert.checklist == std::vector<std::int64_t>{0, -3, -7, -12, -19, -20, -24, -27});
  CHECK(cert.pass);
  CHECK(cert.per_form.size() == 8);

  BasisBuilder b13(SpaceParams::plus(1, 3));
  IntegralityCertificate c13 = basis_certificate(b13);
  CHECK(c13.m_eps == 0);
  CHECK(c13.checklist == std::vector<std::int64_t>{-1, -4});
  CHECK(c13.pass);
}

TEST_CASE("echelon is insensitive to pool scaling, duplication, and order") {
  SpaceParams p = SpaceParams::plus(7, 1);
  std::vector<LaurentSeries> pool = spanning_pool(p, -28, 60);
  ReducedBasis base = echelon_reduce(pool, p, 60);

  std::vector<LaurentSeries> perturbed = pool;
  std::mt19937 rng(2718);
  std::uniform_int_distribution<long> numd(1, 9), dend(1, 9);
  std::uniform_int_distribution<int> sign(0, 1);
  for (auto& f : perturbed) {
    Rational c(numd(rng) * (sign(rng) ? 1 : -1), dend(rng));
    f = f.scaled(c);
  }
  perturbed.push_back(pool[0]);
  perturbed.push_back(add(pool[1], pool[2].scaled(Rational(5, 3))));
  std::reverse(perturbed.begin(), perturbed.end());
  ReducedBasis alt = echelon_reduce(perturbed, p, 60);

  REQUIRE(base.forms.size() == alt.forms.size());
  for (const auto& [m, rf] : base.forms) {
    REQUIRE(alt.forms.count(m) == 1);
    CHECK(equal_below(*rf.series, *alt.forms.at(m).series, 60));
  }
}

TEST_CASE("duplicate pool entries produce no spurious pivots") {
  SpaceParams p = SpaceParams::plus(7, 1);
  std::vector<LaurentSeries> pool = spanning_pool(p, -28, 50);
  const std::size_t base_rank = echelon_reduce(pool, p, 50).forms.size();
  std::vector<LaurentSeries> doubled = pool;
  doubled.insert(doubled.end(), pool.begin(), pool.end());
  CHECK(echelon_reduce(doubled, p, 50).forms.size() == base_rank);
}

TEST_CASE("single-element pool is normalized") {
  SpaceParams p = SpaceParams::plus(7, 1);
  std::vector<LaurentSeries> pool{theta(30).scaled(Rational(7, 3))};
  ReducedBasis basis = echelon_reduce(pool, p, 30);
  REQUIRE(basis.forms.size() == 1);
  CHECK(equal_below(*basis.forms.at(0).series, theta(30), 30));
}

TEST_CASE("deep j-extension at (7,1): m = -31, -56, -59") {
  BasisBuilder b(SpaceParams::plus(7, 1));
  for (std::int64_t m : {-31, -56, -59}) {
    ReducedForm rf = b.form(m, 55);
    CAPTURE(m);
    CHECK(rf.series->valuation() == m);
    CHECK(rf.series->coefficient(m) == Rational(1));
    CHECK(rf.series->all_integer());
    CHECK(check_epsilon(*rf.series, b.params()).pass);
    for (std::int64_t piv : b.pool_pivots()) {
      if (piv > m && piv < 55) CHECK(rf.series->coefficient(piv) == Rational(0));
    }
  }
}

TEST_CASE("pool and ladder routes produce the same reduced form") {
  // F_{-59} at (7,1): once via an echelon whose pool reaches it, once via the
  // j(28 tau) recurrence from a shallower pool.
  BasisBuilder via_pool(SpaceParams::plus(7, 1));
  via_pool.build(-60, 40);
  BasisBuilder via_ladder(SpaceParams::plus(7, 1));
  ReducedForm a = via_pool.form(-59, 40);
  ReducedForm b = via_ladder.form(-59, 40);
  CHECK(equal_below(*a.series, *b.series, 40));
}

TEST_CASE("form lookup errors") {
  BasisBuilder b71(SpaceParams::plus(7, 1));
  CHECK_THROWS_AS(b71.form(-1, 20), UnsupportedExponent);
  CHECK_THROWS_AS(b71.form(-2, 20), UnsupportedExponent);
  CHECK_THROWS_AS(b71.form(1, 20), NonexistentForm);
  BasisBuilder b13(SpaceParams::plus(1, 3));
  CHECK_THROWS_AS(b13.form(0, 20), NonexistentForm);
  CHECK_THROWS_AS(b13.form(-3, 20), UnsupportedExponent);
}

TEST_CASE("integrality certificates are preserved by the downstream operations") {
  // passing forms stay passing under Z-linear combination and multiplication
  // by dilated Delta powers
  BasisBuilder b(SpaceParams::plus(7, 1));
  const SpaceParams& p = b.params();
  ReducedForm f3 = b.form(-3, 60);
  ReducedForm f7 = b.form(-7, 60);
  REQUIRE(certify_integrality(*f3.series, p).pass);
  REQUIRE(certify_integrality(*f7.series, p).pass);
  LaurentSeries sum = axpy(*f3.series, Rational(5), *f7.series);
  CHECK(certify_integrality(sum, p).pass);
  LaurentSeries lifted = mul(*f3.series, dilate(delta(3), 28));
  CHECK(certify_integrality(lifted, p).pass);
}

TEST_CASE("levels outside the tabulated list degrade gracefully at k = 1") {
  // the pool still spans and theta still pivots at 0, but the deep
  // j-extension refuses (the existence criterion is unresolved there)
  BasisBuilder b(SpaceParams::plus(37, 1));
  ReducedForm f0 = b.form(0, 30);
  CHECK(equal_below(*f0.series, theta(30), 30));
  CHECK_THROWS_AS(b.form(-4 * 37 * 5, 20), HypothesisUnverified);
}

TEST_CASE("pool generation is refused outside the validated family") {
  CHECK_THROWS_AS(spanning_pool(SpaceParams::plus(7, 3), -28, 40), PoolDeficient);
  CHECK_THROWS_AS(spanning_pool(SpaceParams::plus(5, 3), -20, 40), PoolDeficient);
  CHECK_THROWS_AS(spanning_pool(SpaceParams::plus(1, 3), 5, 40), Error);
}

TEST_CASE("memo tables and pure constructors are safe under concurrent use") {
  std::vector<std::future<bool>> futs;
  for (int worker = 0; worker < 8; ++worker) {
    futs.push_back(std::async(std::launch::async, [worker]() {
      SpaceParams p = SpaceParams::plus(7, 1);
      bool ok = bernoulli(20 + 2 * (worker % 3)) == bernoulli(20 + 2 * (worker % 3));
      ok = ok && plus_support(8 + worker, p) == epsilon_support(8 + worker, p);
      LaurentSeries d = delta(60 + worker);
      LaurentSeries e = eisenstein(4, 60 + worker);
      ok = ok && equal_below(sub(pow(e, 3), pow(eisenstein(6, 60 + worker), 2)),
                             d.scaled(Rational(1728)), 60);
      BasisBuilder b(SpaceParams::plus(1, 3));
      ok = ok && b.form(-1, 40 + worker).series->coefficient(3) == Rational(248);
      return ok;
    }));
  }
  for (auto& f : futs) CHECK(f.get());
}
