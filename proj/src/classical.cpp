#include "redform/classical.hpp"

#include <mutex>
#include <vector>

#include "redform/errors.hpp"

namespace redform {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

Rational bernoulli(unsigned k) {
  static std::mutex mu;
  static std::vector<Rational> table = {Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  // Pascal recurrence: sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
  while (table.size() <= k) {
    const unsigned n = static_cast<unsigned>(table.size());
    Rational acc;
    Int binom = 1;  // C(n+1, j), updated incrementally
    for (unsigned j = 0; j < n; ++j) {
      acc += Rational(binom) * table[j];
      binom = binom * Int(n + 1 - j) / Int(j + 1);
    }
    table.push_back(-acc / Rational(Int(n + 1)));
  }
  return table[k];
}

Int sigma(unsigned r, std::int64_t n) {
  if (n < 1) throw Error("sigma: n must be positive");
  Int total = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    total += int_pow(Int(d), r);
    const std::int64_t e = n / d;
    if (e != d) total += int_pow(Int(e), r);
  }
  return total;
}

LaurentSeries eisenstein(unsigned k, std::int64_t prec) {
  if (k < 4 || k % 2 != 0) throw Error("eisenstein: weight must be even and >= 4");
  if (prec < 1) throw Error("eisenstein: prec must be >= 1");
  const Rational c = Rational(Int(-2 * static_cast<long>(k))) / bernoulli(k);
  // Divisor-power sieve for sum_n sigma_{k-1}(n) q^n.
  std::vector<Int> sig(static_cast<std::size_t>(prec), Int(0));
  for (std::int64_t d = 1; d < prec; ++d) {
    const Int dp = int_pow(Int(d), k - 1);
    for (std::int64_t n = d; n < prec; n += d) sig[static_cast<std::size_t>(n)] += dp;
  }
  std::vector<LaurentSeries::Term> terms;
  terms.reserve(static_cast<std::size_t>(prec));
  terms.emplace_back(0, Rational(1));
  for (std::int64_t n = 1; n < prec; ++n) terms.emplace_back(n, c * Rational(sig[n]));
  return LaurentSeries(std::move(terms), prec);
}

LaurentSeries euler_pow(unsigned e, std::int64_t prec) {
  if (prec < 1) throw Error("euler_pow: prec must be >= 1");
  // Sparse building blocks: Euler's pentagonal series for eta and Jacobi's
  // identity for eta^3, then binary powering.
  auto euler1 = [&]() {
    std::vector<LaurentSeries::Term> t;
    t.emplace_back(0, Rational(1));
    for (std::int64_t m = 1;; ++m) {
      const std::int64_t g1 = m * (3 * m - 1) / 2;
      const std::int64_t g2 = m * (3 * m + 1) / 2;
      if (g1 >= prec && g2 >= prec) break;
      const Rational s(m % 2 == 1 ? -1 : 1);
      if (g1 < prec) t.emplace_back(g1, s);
      if (g2 < prec) t.emplace_back(g2, s);
    }
    return LaurentSeries(std::move(t), prec);
  };
  auto euler3 = [&]() {
    std::vector<LaurentSeries::Term> t;
    for (std::int64_t m = 0;; ++m) {
      const std::int64_t g = m * (m + 1) / 2;
      if (g >= prec) break;
      t.emplace_back(g, Rational(m % 2 == 1 ? -(2 * m + 1) : 2 * m + 1));
    }
    return LaurentSeries(std::move(t), prec);
  };
  const unsigned a = e / 3, b = e % 3;
  LaurentSeries result = LaurentSeries::one().truncated(prec);
  if (a > 0) result = pow(euler3(), a).truncated(prec);
  if (b > 0) result = mul(result, pow(euler1(), b)).truncated(prec);
  return result;
}

LaurentSeries delta(std::int64_t prec) {
  if (prec < 2) throw Error("delta: prec must be >= 2");
  LaurentSeries e24 = euler_pow(24, prec - 1);
  return mul(LaurentSeries::monomial(1, Rational(1)), e24).truncated(prec);
}

LaurentSeries theta(std::int64_t prec) {
  if (prec < 1) throw Error("theta: prec must be >= 1");
  std::vector<LaurentSeries::Term> t;
  t.emplace_back(0, Rational(1));
  for (std::int64_t n = 1; n * n < prec; ++n) t.emplace_back(n * n, Rational(2));
  return LaurentSeries(std::move(t), prec);
}

LaurentSeries theta_alt(std::int64_t prec) {
  if (prec < 1) throw Error("theta_alt: prec must be >= 1");
  std::vector<LaurentSeries::Term> t;
  t.emplace_back(0, Rational(1));
  for (std::int64_t n = 1; n * n < prec; ++n)
    t.emplace_back(n * n, Rational(n % 2 == 1 ? -2 : 2));
  return LaurentSeries(std::move(t), prec);
}

LaurentSeries j_function(std::int64_t prec) {
  if (prec < 0) throw Error("j_function: prec must be >= 0");
  const std::int64_t work = prec + 2;
  LaurentSeries e4 = eisenstein(4, work);
  return divide(pow(e4, 3).truncated(work), delta(work), prec);
}

LaurentSeries eta_pow_dilated(unsigned e, std::int64_t M, std::int64_t prec) {
  const std::int64_t me = M * static_cast<std::int64_t>(e);
  if (me % 24 != 0)
    throw Error("eta_pow_dilated: 24 must divide M*e for an integral q-expansion");
  const std::int64_t shift = me / 24;
  const std::int64_t base_prec = ceil_div(prec - shift, M) + 1;
  LaurentSeries base = dilate(euler_pow(e, base_prec), M);
  return mul(LaurentSeries::monomial(shift, Rational(1)), base).truncated(prec);
}

LaurentSeries classical_form(const FormId& id, std::int64_t prec) {
  return std::visit(
      [&](const auto& tag) -> LaurentSeries {
        using T = std::decay_t<decltype(tag)>;
        if constexpr (std::is_same_v<T, FormId::Theta>) return theta(prec);
        if constexpr (std::is_same_v<T, FormId::Eisenstein>) return eisenstein(tag.k, prec);
        if constexpr (std::is_same_v<T, FormId::Delta>) return delta(prec);
        if constexpr (std::is_same_v<T, FormId::JFunction>) return j_function(prec);
      },
      id.tag);
}

}  // namespace redform
