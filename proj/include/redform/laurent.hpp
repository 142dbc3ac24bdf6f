#ifndef REDFORM_LAURENT_HPP
#define REDFORM_LAURENT_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "redform/rational.hpp"

namespace redform {

// Truncated Laurent q-expansion over Q.
//
// Invariants: terms are sorted by exponent, no zero coefficients stored,
// every stored exponent < precision. `precision` is an *exclusive* bound:
// coefficients at exponents >= precision are unknown, not zero. Exactly
// known polynomials carry the INF sentinel.
//
// Series are immutable values; all operations are pure functions, so series
// can be shared and combined freely across threads.
class LaurentSeries {
 public:
  using Term = std::pair<std::int64_t, Rational>;
  static constexpr std::int64_t kInfPrec = INT64_MAX / 4;

  LaurentSeries() : precision_(kInfPrec) {}
  explicit LaurentSeries(std::int64_t precision) : precision_(precision) {}
  LaurentSeries(std::vector<Term> terms, std::int64_t precision);

  static LaurentSeries zero(std::int64_t precision = kInfPrec) { return LaurentSeries(precision); }
  static LaurentSeries constant(const Rational& c, std::int64_t precision = kInfPrec);
  static LaurentSeries monomial(std::int64_t exp, const Rational& c,
                                std::int64_t precision = kInfPrec);
  static LaurentSeries one() { return constant(Rational(1)); }

  const std::vector<Term>& terms() const { return terms_; }
  std::int64_t precision() const { return precision_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Minimum stored exponent; only meaningful for nonzero series.
  std::int64_t valuation() const;
  // Lower bound for the valuation of any series this truncation represents:
  // valuation() when nonzero, otherwise precision (an all-unknown zero is
  // O(q^precision)).
  std::int64_t valuation_lower_bound() const {
    return terms_.empty() ? precision_ : terms_.front().first;
  }
  std::int64_t max_exponent() const;

  // Stored value or exact zero; throws PrecisionExceeded for n >= precision.
  Rational coefficient(std::int64_t n) const;

  bool all_integer() const;

  LaurentSeries truncated(std::int64_t new_precision) const;
  LaurentSeries negated() const;
  LaurentSeries scaled(const Rational& c) const;
  // Principal part: the portion at negative exponents.
  LaurentSeries principal_part() const;

  std::string str(std::size_t max_terms = 12) const;

 private:
  void normalize();

  std::vector<Term> terms_;
  std::int64_t precision_;
};

LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries sub(const LaurentSeries& f, const LaurentSeries& g);
// f + c*g in one merge pass.
LaurentSeries axpy(const LaurentSeries& f, const Rational& c, const LaurentSeries& g);
LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g);

// Multiplicative inverse by long division against the leading term.
// The result has valuation -val(f) and precision f.precision - 2*val(f);
// exactly-known inputs (INF precision) need an explicit `bound` unless they
// are monomials. Throws ZeroSeries on the zero series.
LaurentSeries invert(const LaurentSeries& f,
                     std::optional<std::int64_t> bound = std::nullopt);

// g / f fused (single long-division pass, cheaper than mul(g, invert(f))).
LaurentSeries divide(const LaurentSeries& g, const LaurentSeries& f,
                     std::optional<std::int64_t> bound = std::nullopt);

LaurentSeries pow(const LaurentSeries& f, unsigned long e);

// D = q d/dq: coefficient at n becomes n*a(n); precision unchanged.
LaurentSeries theta_derivative(const LaurentSeries& f);
LaurentSeries theta_derivative(const LaurentSeries& f, unsigned order);

// Exponent substitution q -> q^M (f(M*tau) on q-expansions).
LaurentSeries dilate(const LaurentSeries& f, std::int64_t M);

// True iff the two series agree at every exponent < bound. Both precisions
// must reach `bound`.
bool equal_below(const LaurentSeries& f, const LaurentSeries& g, std::int64_t bound);
// First exponent < bound where they differ, if any.
std::optional<std::int64_t> first_mismatch_below(const LaurentSeries& f, const LaurentSeries& g,
                                                 std::int64_t bound);

}  // namespace redform

#endif
