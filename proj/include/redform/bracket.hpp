#ifndef REDFORM_BRACKET_HPP
#define REDFORM_BRACKET_HPP

#include "redform/laurent.hpp"

namespace redform {

// Generalized binomial C(x, s) = x(x-1)...(x-s+1)/s! over Q (exact for
// half-integral x).
Rational binomial_generalized(const Rational& x, unsigned s);

// n-th Rankin-Cohen bracket in the normalization with [f,g]_0 = f*g:
//
//   [f,g]_n = sum_{r=0}^{n} (-1)^r C(wf+n-1, n-r) C(wg+n-1, r) D^r f D^{n-r} g,
//
// D = q d/dq. Inputs of weights wf, wg produce weight wf + wg + 2n. Weights
// must have denominator 1 or 2.
LaurentSeries rc_bracket(const LaurentSeries& f, const Rational& wf, const LaurentSeries& g,
                         const Rational& wg, unsigned n);

}  // namespace redform

#endif
