#include <doctest.h>

#include "redform/errors.hpp"
#include "redform/theorems.hpp"

using namespace redform;

namespace {

std::size_t count_status(const std::vector<CaseReport>& reps, CaseReport::Status s) {
  std::size_t n = 0;
  for (const auto& r : reps) n += r.status == s;
  return n;
}

void check_all_pass(const std::vector<CaseReport>& reps, std::size_t min_passes) {
  CHECK(count_status(reps, CaseReport::Status::Fail) == 0);
  CHECK(count_status(reps, CaseReport::Status::Pass) >= min_passes);
}

}  // namespace

TEST_CASE("cusp space vanishing gate") {
  CHECK(cusp_space_is_zero(SpaceParams::plus(1, 3)));
  CHECK(cusp_space_is_zero(SpaceParams::plus(7, 3)));
  CHECK_FALSE(cusp_space_is_zero(SpaceParams::plus(123, 3)));
}

TEST_CASE("the identity framework refuses k = 1") {
  BasisBuilder b(SpaceParams::plus(7, 1));
  CHECK_THROWS_AS(TheoremVerifier(b, 4000, 4000), HypothesisViolated);
}

TEST_CASE("case hypothesis validation") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 4000, 2000);
  CHECK_THROWS_AS(v.verify_prop44(-9, 1, 3, 1, 10), HypothesisViolated);  // ell^2 | m
  CHECK_THROWS_AS(v.verify_prop44(-1, 1, 4, 1, 10), BadPrime);
  CHECK_THROWS_AS(v.verify_prop44(-1, 1, 2, 1, 10), BadPrime);
  CHECK_THROWS_AS(v.verify_prop44(-3, 1, 5, 1, 10), HypothesisViolated);  // -3 unsupported
  CHECK_THROWS_AS(v.verify_prop44(-1, 2, 5, 1, 10), BadPrime);            // gcd(t,4N) != 1
}

TEST_CASE("projection identity at (1,3): small windows") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 6000, 2000);
  // n = 0 degenerates to G_0 = F_m^{(t)}
  CHECK(v.verify_prop44(-1, 1, 5, 0, 40).status == CaseReport::Status::Pass);
  CHECK(v.verify_prop44(-1, 1, 5, 1, 50).status == CaseReport::Status::Pass);
  CHECK(v.verify_prop44(-1, 1, 3, 2, 30).status == CaseReport::Status::Pass);
  CHECK(v.verify_prop44(-4, 1, 3, 1, 40).status == CaseReport::Status::Pass);
  CHECK(v.verify_prop44(-1, 3, 3, 1, 25).status == CaseReport::Status::Pass);
}

TEST_CASE("the three-term recursion is asserted during G construction") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 8000, 2000);
  // n = 3 forces two recursion layers through the assertion
  CHECK(v.build_G(-1, 1, 3, 3, 8).precision() >= 8);
}

TEST_CASE("G-coefficients match the deep forms: C_n(d) = ell^{(k-2)n} B_t(ell^{2n} m, d)") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 8000, 2000);
  check_all_pass(v.verify_eq4(-1, 1, 5, 1, 30), 10);
  check_all_pass(v.verify_eq4(-1, 1, 3, 2, 20), 8);
}

TEST_CASE("C-coefficient identities") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 8000, 2000);
  check_all_pass(v.verify_clause(Which::Lem45i, -1, 1, 3, 1, 20), 8);
  check_all_pass(v.verify_clause(Which::Lem45ii, -1, 1, 3, 1, 30), 3);
  // supported d <= 20 prime to 3: {4,7,8,11,16,19,20}
  check_all_pass(v.verify_clause(Which::Lem45iii, -1, 1, 3, 1, 20), 7);
  check_all_pass(v.verify_clause(Which::Lem45i, -1, 1, 5, 2, 6), 1);
}

TEST_CASE("coefficient identity clauses at (1,3)") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 9000, 2000);
  // clause (ii) includes the d = 3 case (ell = 5 does not divide 3)
  auto reps = v.verify_clause(Which::Thm14ii, -1, 1, 5, 1, 12);
  check_all_pass(reps, 5);
  bool saw_d3 = false;
  for (const auto& r : reps) {
    if (r.c.d == 3) {
      saw_d3 = true;
      CHECK(r.status == CaseReport::Status::Pass);
    }
  }
  CHECK(saw_d3);
  // 5 || d, d supported, d <= 30: exactly {15, 20}
  check_all_pass(v.verify_clause(Which::Thm14iii, -1, 1, 5, 1, 30), 2);
  check_all_pass(v.verify_clause(Which::Thm14i, -1, 1, 3, 1, 10), 4);
  // d = 0 column of clause (i)
  auto zero = v.verify_clause(Which::Thm14i, -1, 1, 7, 1, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].status == CaseReport::Status::Pass);
}

TEST_CASE("power congruences at (1,3)") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 12600, 2000);
  // (a): ell = 5, (-d/5) = (-m/5) = 1: exact equality + divisibility by 5^n
  auto a1 = v.verify_clause(Which::Cor15a, -1, 1, 5, 1, 20);
  check_all_pass(a1, 3);
  for (const auto& r : a1) {
    if (r.status == CaseReport::Status::Pass) CHECK(*r.modulus == 5);
  }
  auto a2 = v.verify_clause(Which::Cor15a, -1, 1, 5, 2, 4);
  check_all_pass(a2, 1);
  for (const auto& r : a2) {
    if (r.status == CaseReport::Status::Pass) CHECK(*r.modulus == 25);
  }
  // (b): odd-power congruence
  check_all_pass(v.verify_clause(Which::Cor15b, -1, 1, 5, 1, 20), 3);
  // degenerate modulus ell^0 = 1 never occurs for k = 3, n >= 1 (k-2 = 1);
  // check the n = 1, ell = 3 variant instead
  check_all_pass(v.verify_clause(Which::Cor15b, -1, 1, 3, 1, 20), 3);
}

TEST_CASE("congruence checks demand the hypotheses") {
  BasisBuilder b(SpaceParams::plus(123, 3));
  TheoremVerifier v(b, 2000, 500);
  CHECK_THROWS_AS(v.verify_prop44(-1, 1, 5, 1, 10), HypothesisUnverified);
  CHECK_THROWS_AS(v.verify_clause(Which::Cor15a, -1, 1, 5, 1, 10), HypothesisUnverified);
}

TEST_CASE("sweep ordering and aggregation") {
  BasisBuilder b(SpaceParams::plus(1, 3));
  TheoremVerifier v(b, 4000, 2000);
  SweepSpec spec;
  spec.clauses = {Which::Thm14iii, Which::Cor15b};
  spec.ms = {-1};
  spec.ts = {1};
  spec.ells = {3, 5};
  spec.n_max = 1;
  spec.d_window = 12;
  auto reps = run_sweep(v, spec);
  CHECK(count_status(reps, CaseReport::Status::Fail) == 0);
  CHECK(count_status(reps, CaseReport::Status::Pass) > 0);
  // deterministic order: clauses in spec order, then ell ascending
  REQUIRE(!reps.empty());
  CHECK(reps.front().c.which == Which::Thm14iii);
  CHECK(reps.back().c.which == Which::Cor15b);
}

TEST_CASE("which names round-trip") {
  for (Which w : {Which::Prop44, Which::Thm14i, Which::Thm14ii, Which::Thm14iii,
                  Which::Cor15a, Which::Cor15b, Which::Lem45i, Which::Lem45ii,
                  Which::Lem45iii, Which::Eq4}) {
    CHECK(which_from_name(which_name(w)) == w);
  }
  CHECK(which_from_name("nope") == std::nullopt);
}
