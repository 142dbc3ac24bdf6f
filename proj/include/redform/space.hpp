#ifndef REDFORM_SPACE_HPP
#define REDFORM_SPACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "redform/laurent.hpp"

namespace redform {

// Legendre symbol (a/p) for an odd prime p.
int legendre(std::int64_t a, std::int64_t p);

// Parameters of the space M^{!eps}_{k/2}(N, 1): odd square-free level N, odd
// weight numerator k, lambda = (k-1)/2, and the sign vector (eps_2, eps_p).
//
// For the plus family the signs are derived from the square-class law
// "(-1)^lambda n is a square mod 4N": eps_2 = (-1)^lambda and
// eps_p = ((-1)/p)^lambda, the unique vector whose coefficient
// characterization (a(n) = 0 iff n = 2, -eps_2 mod 4 or (n/p) = -eps_p)
// matches that law.
struct SpaceParams {
  std::int64_t N = 1;
  std::int64_t k = 1;
  std::int64_t lambda = 0;
  int eps2 = +1;
  std::vector<std::pair<std::int64_t, int>> eps_p;  // (p, sign) for p | N
  bool plus_family = true;

  static SpaceParams plus(std::int64_t N, std::int64_t k);
  // Explicit sign vector (sieve-only use; the pool recipe requires plus).
  static SpaceParams with_signs(std::int64_t N, std::int64_t k, int eps2,
                                std::vector<std::pair<std::int64_t, int>> eps_p);

  // Parameters of the dual space M^{eps*}_{2-k/2}(N,1): eps*_p = chi_p(-1) eps_p,
  // which for the plus family is the plus space at weight numerator 4-k.
  SpaceParams dual() const;

  std::string label() const;
};

// Square-class support: (-1)^lambda * n is a square modulo 4N.
bool plus_support(std::int64_t n, const SpaceParams& params);

// Coefficient form of the epsilon-condition: false iff n = 2 or -eps_2
// (mod 4), or (n/p) = -eps_p for some p | N.
bool epsilon_support(std::int64_t n, const SpaceParams& params);

// Structured pass/fail evidence.
struct Witness {
  std::int64_t n;
  Rational value;
};
struct VerificationReport {
  std::string check;
  bool pass = true;
  std::vector<Witness> witnesses;
  std::string detail;
};

// Lists every stored exponent violating epsilon_support; pass iff none.
VerificationReport check_epsilon(const LaurentSeries& f, const SpaceParams& params);

// Scaling constant s(m) = prod_{p | gcd(N,m)} (1 + p/|D_p|); |D_p| = p here,
// so each factor is 2. gcd(N, 0) = N.
Rational s_of_m(std::int64_t m, const SpaceParams& params);

// [SL_2(Z) : Gamma_0(M)] = M prod_{p | M} (1 + 1/p).
std::int64_t index_gamma0(std::int64_t M);

// Sturm data for the integrality criterion: k' minimal with
// k' >= |ord_inf|/4N and k + 12k' > 0, and the exact rational bound
// ord_inf + ((k + 12k')/12) [SL_2(Z) : Gamma_0(4N)].
struct SturmData {
  std::int64_t ord_inf = 0;
  std::int64_t k_prime = 0;
  std::int64_t index = 0;
  Rational bound;
};

// Requires a pole (some nonzero coefficient at a negative exponent);
// otherwise throws NotWeaklyHolomorphicHypothesis — holomorphic inputs go
// through the theta^k route in certify_integrality instead.
SturmData sturm_data(const LaurentSeries& f, const SpaceParams& params);

// Integrality certificate. Weakly holomorphic forms use the k'-twist bound;
// holomorphic forms use the bound (k/12)[SL_2(Z):Gamma_0(4N)]. Pass means
// every coefficient at exponents <= bound is an integer, which under the
// space-membership hypotheses certifies integrality of all coefficients.
// Throws InsufficientPrecision when f.precision <= bound.
VerificationReport certify_integrality(const LaurentSeries& f, const SpaceParams& params);

// The finite checklist of principal exponents whose certificates extend
// integrality to every reduced form: supported m with -4N - m_eps <= m < 0,
// plus m = 0 when f_0 exists (derived from k mod 4).
std::vector<std::int64_t> integrality_checklist(std::int64_t m_eps, const SpaceParams& params);

// Levels with S^{+...+}_{3/2}(N,1) = 0: odd square-free N < 37 together with
// {39,41,47,51,55,59,69,71,87,95,105,119}.
bool s32_plus_cusp_space_vanishes(std::int64_t N);

}  // namespace redform

#endif
