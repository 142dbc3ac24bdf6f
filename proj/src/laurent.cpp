#include "redform/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "redform/errors.hpp"

namespace redform {

namespace {

constexpr std::int64_t kInf = LaurentSeries::kInfPrec;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kInf || b >= kInf) return kInf;
  std::int64_t s = a + b;
  return s >= kInf ? kInf : s;
}

std::int64_t sat_mul(std::int64_t a, std::int64_t m) {
  if (a >= kInf) return kInf;
  if (a != 0 && m > kInf / (a > 0 ? a : -a)) return kInf;
  std::int64_t p = a * m;
  return p >= kInf ? kInf : p;
}

}  // namespace

LaurentSeries::LaurentSeries(std::vector<Term> terms, std::int64_t precision)
    : terms_(std::move(terms)), precision_(precision) {
  normalize();
}

void LaurentSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (t.first >= precision_ || t.second.is_zero()) continue;
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.second.is_zero(); }),
            out.end());
  terms_ = std::move(out);
}

LaurentSeries LaurentSeries::constant(const Rational& c, std::int64_t precision) {
  return monomial(0, c, precision);
}

LaurentSeries LaurentSeries::monomial(std::int64_t exp, const Rational& c,
                                      std::int64_t precision) {
  std::vector<Term> t;
  if (!c.is_zero() && exp < precision) t.emplace_back(exp, c);
  return LaurentSeries(std::move(t), precision);
}

std::int64_t LaurentSeries::valuation() const {
  if (terms_.empty()) throw ZeroSeries("valuation of zero series");
  return terms_.front().first;
}

std::int64_t LaurentSeries::max_exponent() const {
  if (terms_.empty()) throw ZeroSeries("max_exponent of zero series");
  return terms_.back().first;
}

Rational LaurentSeries::coefficient(std::int64_t n) const {
  if (n >= precision_)
    throw PrecisionExceeded("coefficient at exponent " + std::to_string(n) +
                            " >= precision " + std::to_string(precision_));
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                             [](const Term& t, std::int64_t e) { return t.first < e; });
  if (it != terms_.end() && it->first == n) return it->second;
  return Rational();
}

bool LaurentSeries::all_integer() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second.is_integer(); });
}

LaurentSeries LaurentSeries::truncated(std::int64_t new_precision) const {
  if (new_precision >= precision_) {
    LaurentSeries r = *this;
    return r;
  }
  LaurentSeries r(new_precision);
  for (const auto& t : terms_) {
    if (t.first >= new_precision) break;
    r.terms_.push_back(t);
  }
  return r;
}

LaurentSeries LaurentSeries::negated() const {
  LaurentSeries r(precision_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, -t.second);
  return r;
}

LaurentSeries LaurentSeries::scaled(const Rational& c) const {
  if (c.is_zero()) return LaurentSeries(precision_);
  LaurentSeries r(precision_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, c * t.second);
  return r;
}

LaurentSeries LaurentSeries::principal_part() const {
  LaurentSeries r(precision_);
  for (const auto& t : terms_) {
    if (t.first >= 0) break;
    r.terms_.push_back(t);
  }
  return r;
}

std::string LaurentSeries::str(std::size_t max_terms) const {
  std::ostringstream os;
  if (terms_.empty()) {
    os << "0";
  } else {
    std::size_t shown = 0;
    for (const auto& t : terms_) {
      if (shown == max_terms) {
        os << " + ...";
        break;
      }
      const Rational& c = t.second;
      if (shown == 0) {
        os << c.str();
      } else {
        os << (c.sign() < 0 ? " - " : " + ") << (c.sign() < 0 ? (-c).str() : c.str());
      }
      if (t.first != 0) os << "*q^" << t.first;
      ++shown;
    }
  }
  if (precision_ < kInf) os << " + O(q^" << precision_ << ")";
  return os.str();
}

LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g) {
  return axpy(f, Rational(1), g);
}

LaurentSeries sub(const LaurentSeries& f, const LaurentSeries& g) {
  return axpy(f, Rational(-1), g);
}

LaurentSeries axpy(const LaurentSeries& f, const Rational& c, const LaurentSeries& g) {
  std::int64_t prec = std::min(f.precision(), g.precision());
  std::vector<LaurentSeries::Term> out;
  out.reserve(f.term_count() + g.term_count());
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  const auto fe = f.terms().end();
  const auto ge = g.terms().end();
  while (it != fe || jt != ge) {
    if (jt == ge || (it != fe && it->first < jt->first)) {
      if (it->first >= prec) break;
      out.push_back(*it++);
    } else if (it == fe || jt->first < it->first) {
      if (jt->first >= prec) break;
      out.emplace_back(jt->first, c * jt->second);
      ++jt;
    } else {
      if (it->first >= prec) break;
      Rational v = it->second + c * jt->second;
      if (!v.is_zero()) out.emplace_back(it->first, std::move(v));
      ++it;
      ++jt;
    }
  }
  return LaurentSeries(std::move(out), prec);
}

LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g) {
  std::int64_t prec = std::min(sat_add(f.precision(), g.valuation_lower_bound()),
                               sat_add(g.precision(), f.valuation_lower_bound()));
  if (f.is_zero() || g.is_zero()) return LaurentSeries(prec);

  const std::int64_t lo = f.valuation() + g.valuation();
  std::int64_t hi = prec;
  const std::int64_t poly_hi = sat_add(sat_add(f.max_exponent(), g.max_exponent()), 1);
  if (poly_hi < hi) hi = poly_hi;
  const std::size_t width = static_cast<std::size_t>(hi - lo);

  // Convolution into a dense window [lo, hi). Integer-only inputs run on
  // mpz accumulators (mpz_addmul); the general path uses mpq.
  std::vector<LaurentSeries::Term> out;
  if (f.all_integer() && g.all_integer()) {
    std::vector<mpz_class> acc(width);
    mpz_class tmp;
    for (const auto& [i, a] : f.terms()) {
      const mpz_class an = a.num();
      for (const auto& [j, b] : g.terms()) {
        const std::int64_t e = i + j;
        if (e >= hi) break;
        mpz_addmul(acc[static_cast<std::size_t>(e - lo)].get_mpz_t(), an.get_mpz_t(),
                   b.num().get_mpz_t());
      }
    }
    for (std::size_t idx = 0; idx < width; ++idx) {
      if (sgn(acc[idx]) != 0)
        out.emplace_back(lo + static_cast<std::int64_t>(idx), Rational(Int(acc[idx])));
    }
  } else {
    std::vector<mpq_class> acc(width);
    mpq_class tmp;
    for (const auto& [i, a] : f.terms()) {
      for (const auto& [j, b] : g.terms()) {
        const std::int64_t e = i + j;
        if (e >= hi) break;
        mpq_mul(tmp.get_mpq_t(), a.raw().get_mpq_t(), b.raw().get_mpq_t());
        acc[static_cast<std::size_t>(e - lo)] += tmp;
      }
    }
    for (std::size_t idx = 0; idx < width; ++idx) {
      if (sgn(acc[idx]) != 0)
        out.emplace_back(lo + static_cast<std::int64_t>(idx),
                         Rational(acc[idx].get_num(), acc[idx].get_den()));
    }
  }
  return LaurentSeries(std::move(out), prec);
}

namespace {

// Shared long-division core: computes g / f on the exponent window
// [val(g)-val(f), out_prec) by eliminating the residual's lowest term
// against f's leading coefficient.
LaurentSeries long_divide(const LaurentSeries& g, const LaurentSeries& f,
                          std::int64_t out_prec) {
  const std::int64_t vf = f.valuation();
  const Rational lead = f.terms().front().second;
  if (g.is_zero()) return LaurentSeries(out_prec);
  const std::int64_t q_lo = g.valuation() - vf;
  if (out_prec <= q_lo) return LaurentSeries(out_prec);
  const std::size_t width = static_cast<std::size_t>(out_prec - q_lo);

  // Residual R holds coefficients of g - f * (quotient so far) on the window
  // [q_lo + vf, out_prec + vf), indexed relative to q_lo + vf.
  std::vector<mpq_class> R(width);
  for (const auto& [e, c] : g.terms()) {
    const std::int64_t idx = e - (q_lo + vf);
    if (idx < 0) continue;  // cannot happen: q_lo + vf = val(g)
    if (idx >= static_cast<std::int64_t>(width)) break;
    R[static_cast<std::size_t>(idx)] = c.raw();
  }

  std::vector<LaurentSeries::Term> out;
  mpq_class tmp, qc;
  for (std::size_t idx = 0; idx < width; ++idx) {
    if (sgn(R[idx]) == 0) continue;
    mpq_div(qc.get_mpq_t(), R[idx].get_mpq_t(), lead.raw().get_mpq_t());
    out.emplace_back(q_lo + static_cast<std::int64_t>(idx),
                     Rational(qc.get_num(), qc.get_den()));
    // R -= qc * f shifted by the quotient exponent.
    for (const auto& [e, c] : f.terms()) {
      const std::size_t j = idx + static_cast<std::size_t>(e - vf);
      if (j >= width) break;
      mpq_mul(tmp.get_mpq_t(), qc.get_mpq_t(), c.raw().get_mpq_t());
      R[j] -= tmp;
    }
  }
  return LaurentSeries(std::move(out), out_prec);
}

}  // namespace

LaurentSeries invert(const LaurentSeries& f, std::optional<std::int64_t> bound) {
  if (f.is_zero()) throw ZeroSeries();
  const std::int64_t v = f.valuation();
  if (f.term_count() == 1) {
    std::int64_t prec = f.precision() >= kInf ? kInf : f.precision() - 2 * v;
    if (bound && *bound < prec) prec = *bound;
    return LaurentSeries::monomial(-v, Rational(1) / f.terms().front().second, prec);
  }
  // Sound bound from the truncation: the inverse is determined below
  // f.precision - 2 val(f). An explicit bound may only tighten it.
  std::int64_t prec = f.precision() >= kInf ? kInf : f.precision() - 2 * v;
  if (bound && *bound < prec) prec = *bound;
  if (prec >= kInf)
    throw Error("invert: exact polynomial input needs an explicit precision bound");
  return long_divide(LaurentSeries::one(), f, prec);
}

LaurentSeries divide(const LaurentSeries& g, const LaurentSeries& f,
                     std::optional<std::int64_t> bound) {
  if (f.is_zero()) throw ZeroSeries("division by zero series");
  const std::int64_t vf = f.valuation();
  std::int64_t prec = std::min(sat_add(g.precision(), -vf),
                               sat_add(f.precision(), g.valuation_lower_bound() - 2 * vf));
  if (bound && *bound < prec) prec = *bound;
  if (prec >= kInf) {
    if (f.term_count() == 1) return mul(g, invert(f));
    throw Error("divide: exact polynomial inputs need an explicit precision bound");
  }
  return long_divide(g, f, prec);
}

LaurentSeries pow(const LaurentSeries& f, unsigned long e) {
  LaurentSeries result = LaurentSeries::one();
  LaurentSeries base = f;
  while (e > 0) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1UL;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

LaurentSeries theta_derivative(const LaurentSeries& f) {
  std::vector<LaurentSeries::Term> out;
  out.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) {
    if (e == 0) continue;
    out.emplace_back(e, c * Rational(Int(e)));
  }
  return LaurentSeries(std::move(out), f.precision());
}

LaurentSeries theta_derivative(const LaurentSeries& f, unsigned order) {
  if (order == 0) return f;
  std::vector<LaurentSeries::Term> out;
  out.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) {
    if (e == 0) continue;
    out.emplace_back(e, c * Rational(Int(e)).pow(static_cast<long>(order)));
  }
  return LaurentSeries(std::move(out), f.precision());
}

LaurentSeries dilate(const LaurentSeries& f, std::int64_t M) {
  if (M < 1) throw Error("dilate: M must be >= 1");
  std::vector<LaurentSeries::Term> out;
  out.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) out.emplace_back(e * M, c);
  return LaurentSeries(std::move(out), sat_mul(f.precision(), M));
}

std::optional<std::int64_t> first_mismatch_below(const LaurentSeries& f,
                                                 const LaurentSeries& g,
                                                 std::int64_t bound) {
  if (f.precision() < bound || g.precision() < bound)
    throw PrecisionExceeded("comparison window exceeds available precision");
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  const auto fe = f.terms().end();
  const auto ge = g.terms().end();
  while (it != fe || jt != ge) {
    const std::int64_t ei = it != fe ? it->first : bound;
    const std::int64_t ej = jt != ge ? jt->first : bound;
    const std::int64_t e = std::min(ei, ej);
    if (e >= bound) break;
    if (ei < ej) {
      return e;
    } else if (ej < ei) {
      return e;
    } else {
      if (it->second != jt->second) return e;
      ++it;
      ++jt;
    }
  }
  return std::nullopt;
}

bool equal_below(const LaurentSeries& f, const LaurentSeries& g, std::int64_t bound) {
  return !first_mismatch_below(f, g, bound).has_value();
}

}  // namespace redform
