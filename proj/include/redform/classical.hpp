#ifndef REDFORM_CLASSICAL_HPP
#define REDFORM_CLASSICAL_HPP

#include <cstdint>
#include <variant>

#include "redform/laurent.hpp"

namespace redform {

// Exact Bernoulli number B_k (B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...).
// Memoized; safe for concurrent callers.
Rational bernoulli(unsigned k);

// sigma_r(n) = sum of d^r over divisors d of n.
Int sigma(unsigned r, std::int64_t n);

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n,
// k even and >= 4.
LaurentSeries eisenstein(unsigned k, std::int64_t prec);

// Delta = q prod (1-q^n)^24, computed from the eta product (the E4/E6
// identity is kept as a test oracle, not the production path).
LaurentSeries delta(std::int64_t prec);

// theta = sum_{n in Z} q^{n^2} = 1 + 2q + 2q^4 + 2q^9 + ...
LaurentSeries theta(std::int64_t prec);

// theta twisted by (-1)^n: 1 - 2q + 2q^4 - 2q^9 + ...  (eta(tau)^2/eta(2tau);
// the half-integral seed used at weight 3/2).
LaurentSeries theta_alt(std::int64_t prec);

// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ...
LaurentSeries j_function(std::int64_t prec);

// prod_{n>=1} (1 - q^n)^e via the sparse eta / eta^3 expansions.
LaurentSeries euler_pow(unsigned e, std::int64_t prec);

// eta(M tau)^e as a q-series: q^{Me/24} prod (1 - q^{Mn})^e; requires 24 | Me.
LaurentSeries eta_pow_dilated(unsigned e, std::int64_t M, std::int64_t prec);

// Tagged classical generator id.
struct FormId {
  struct Theta {};
  struct Eisenstein {
    unsigned k;
  };
  struct Delta {};
  struct JFunction {};
  std::variant<Theta, Eisenstein, Delta, JFunction> tag;
};

LaurentSeries classical_form(const FormId& id, std::int64_t prec);

}  // namespace redform

#endif
