#include "redform/bracket.hpp"

#include "redform/errors.hpp"

namespace redform {

Rational binomial_generalized(const Rational& x, unsigned s) {
  Rational num(1);
  for (unsigned i = 0; i < s; ++i) num *= x - Rational(Int(i));
  Int fact = 1;
  for (unsigned i = 2; i <= s; ++i) fact *= i;
  return num / Rational(fact);
}

LaurentSeries rc_bracket(const LaurentSeries& f, const Rational& wf, const LaurentSeries& g,
                         const Rational& wg, unsigned n) {
  auto weight_ok = [](const Rational& w) { return w.den() == 1 || w.den() == 2; };
  if (!weight_ok(wf) || !weight_ok(wg))
    throw Error("rc_bracket: weights must have denominator 1 or 2");

  // Cache the iterated derivatives once; each bracket term reuses them.
  std::vector<LaurentSeries> df{f}, dg{g};
  for (unsigned r = 1; r <= n; ++r) {
    df.push_back(theta_derivative(df.back()));
    dg.push_back(theta_derivative(dg.back()));
  }

  LaurentSeries acc;
  bool first = true;
  for (unsigned r = 0; r <= n; ++r) {
    Rational c = binomial_generalized(wf + Rational(Int(n)) - Rational(1), n - r) *
                 binomial_generalized(wg + Rational(Int(n)) - Rational(1), r);
    if (r % 2 == 1) c = -c;
    if (c.is_zero()) continue;
    LaurentSeries term = mul(df[r], dg[n - r]).scaled(c);
    acc = first ? term : add(acc, term);
    first = false;
  }
  if (first) {
    // All binomials vanished (cannot happen for admissible weights, but keep
    // the precision bookkeeping sound).
    return mul(f, g).scaled(Rational(0));
  }
  return acc;
}

}  // namespace redform
