#include "redform/hecke.hpp"

#include <map>
#include <numeric>

#include "redform/errors.hpp"

namespace redform {

HeckeDescriptor HeckeDescriptor::make(std::int64_t t, const SpaceParams& params) {
  if (t < 1) throw Error("HeckeDescriptor: t must be positive");
  if (std::gcd(t, 4 * params.N) != 1)
    throw BadPrime("HeckeDescriptor: gcd(t, 4N) must be 1, got t=" + std::to_string(t));
  HeckeDescriptor d;
  d.t = t;
  std::int64_t rest = t;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    d.factorization.emplace_back(p, e);
  }
  if (rest > 1) d.factorization.emplace_back(rest, 1);
  return d;
}

LaurentSeries apply_T_ell2(const LaurentSeries& f, std::int64_t ell,
                           const SpaceParams& params) {
  if ((4 * params.N) % ell == 0)
    throw BadPrime("apply_T_ell2: ell divides 4N (ell=" + std::to_string(ell) + ")");
  const std::int64_t ell2 = ell * ell;
  const std::int64_t out_prec =
      f.precision() >= LaurentSeries::kInfPrec
          ? LaurentSeries::kInfPrec
          : (f.precision() >= 0 ? (f.precision() + ell2 - 1) / ell2
                                : -((-f.precision()) / ell2));
  const bool lam_odd = ((params.lambda % 2) + 2) % 2 == 1;
  const Rational mid_factor = rational_prime_power(ell, params.lambda - 1);
  const Rational deep_factor = rational_prime_power(ell, 2 * params.lambda - 1);

  // Scatter each input term into its three destinations.
  std::map<std::int64_t, Rational> acc;
  auto put = [&](std::int64_t e, const Rational& v) {
    if (e >= out_prec || v.is_zero()) return;
    auto [it, inserted] = acc.emplace(e, v);
    if (!inserted) it->second += v;
  };
  for (const auto& [e, a] : f.terms()) {
    if (e % ell2 == 0) put(e / ell2, a);  // a(ell^2 n) contribution at n = e/ell^2
    const int chi = legendre(lam_odd ? -e : e, ell);
    if (chi != 0) put(e, mid_factor * Rational(chi) * a);
    put(e * ell2, deep_factor * a);  // a(n/ell^2) contribution at n = ell^2 e
  }

  std::vector<LaurentSeries::Term> out;
  out.reserve(acc.size());
  for (auto& [e, v] : acc) {
    if (!v.is_zero()) out.emplace_back(e, std::move(v));
  }
  LaurentSeries result(std::move(out), out_prec);
  // The coefficient formula preserves the support sieve; anything else is an
  // implementation bug.
  for (const auto& [e, v] : result.terms()) {
    (void)v;
    if (!epsilon_support(e, params))
      throw Error("apply_T_ell2: output escaped the epsilon-support sieve at exponent " +
                  std::to_string(e));
  }
  return result;
}

LaurentSeries apply_T_ell2n(const LaurentSeries& f, std::int64_t ell, unsigned n,
                            const SpaceParams& params) {
  if (n == 0) return f;
  const Rational ellk2 = rational_prime_power(ell, params.k - 2);
  LaurentSeries prev2 = f;                               // f | T(ell^0)
  LaurentSeries prev1 = apply_T_ell2(f, ell, params);    // f | T(ell^2)
  for (unsigned j = 2; j <= n; ++j) {
    LaurentSeries next = axpy(apply_T_ell2(prev1, ell, params), -ellk2, prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  if (!f.is_zero() && f.valuation() < 0) {
    // The image has a pole of order ell^{2n} |val(f)|; if the surviving
    // window does not even reach it, the budget was hopeless.
    std::int64_t deep = f.valuation();
    for (unsigned j = 0; j < n; ++j) deep *= ell * ell;
    if (prev1.precision() <= deep)
      throw InsufficientPrecision("apply_T_ell2n: precision budget exhausted before ell^{2n}");
  }
  return prev1;
}

LaurentSeries apply_T_t2(const LaurentSeries& f, const HeckeDescriptor& desc,
                         const SpaceParams& params) {
  LaurentSeries g = f;
  for (const auto& [p, e] : desc.factorization) g = apply_T_ell2n(g, p, e, params);
  return g;
}

}  // namespace redform
