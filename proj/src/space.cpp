#include "redform/space.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "redform/errors.hpp"

namespace redform {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

bool odd_square_free(std::int64_t n) {
  if (n < 1 || n % 2 == 0) return false;
  for (std::int64_t p = 3; p * p <= n; p += 2) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

int legendre(std::int64_t a, std::int64_t p) {
  const std::int64_t r = mod_pos(a, p);
  if (r == 0) return 0;
  // Euler's criterion with 64-bit modular powering (p is a small odd prime).
  auto powmod = [&](std::int64_t base, std::int64_t e) {
    unsigned __int128 acc = 1, b = static_cast<unsigned __int128>(base);
    while (e > 0) {
      if (e & 1) acc = acc * b % static_cast<unsigned __int128>(p);
      b = b * b % static_cast<unsigned __int128>(p);
      e >>= 1;
    }
    return static_cast<std::int64_t>(acc);
  };
  const std::int64_t v = powmod(r, (p - 1) / 2);
  return v == 1 ? 1 : -1;
}

SpaceParams SpaceParams::plus(std::int64_t N, std::int64_t k) {
  if (!odd_square_free(N)) throw Error("SpaceParams: N must be odd and square-free");
  if (mod_pos(k, 2) != 1) throw Error("SpaceParams: k must be odd");
  SpaceParams sp;
  sp.N = N;
  sp.k = k;
  sp.lambda = (k - 1) / 2;
  const bool lam_odd = mod_pos(sp.lambda, 2) == 1;
  sp.eps2 = lam_odd ? -1 : +1;
  bool all_plus = true;
  for (std::int64_t p : prime_factors(N)) {
    const int sign = lam_odd ? legendre(-1, p) : +1;
    sp.eps_p.emplace_back(p, sign);
    if (sign != +1) all_plus = false;
  }
  sp.plus_family = all_plus;
  return sp;
}

SpaceParams SpaceParams::with_signs(std::int64_t N, std::int64_t k, int eps2,
                                    std::vector<std::pair<std::int64_t, int>> eps_p) {
  if (!odd_square_free(N)) throw Error("SpaceParams: N must be odd and square-free");
  if (mod_pos(k, 2) != 1) throw Error("SpaceParams: k must be odd");
  auto ps = prime_factors(N);
  if (ps.size() != eps_p.size()) throw Error("SpaceParams: sign vector must cover exactly p | N");
  for (auto& [p, s] : eps_p) {
    if (std::find(ps.begin(), ps.end(), p) == ps.end() || (s != 1 && s != -1))
      throw Error("SpaceParams: bad sign vector entry");
  }
  SpaceParams sp;
  sp.N = N;
  sp.k = k;
  sp.lambda = (k - 1) / 2;
  sp.eps2 = eps2;
  sp.eps_p = std::move(eps_p);
  SpaceParams ref = SpaceParams::plus(N, k);
  sp.plus_family = sp.eps2 == ref.eps2 && sp.eps_p == ref.eps_p && ref.plus_family;
  return sp;
}

SpaceParams SpaceParams::dual() const {
  // eps*_p = chi_p(-1) eps_p with chi_p = (./p); eps*_2 flips so that the
  // support law becomes the square-class law at weight numerator 4-k.
  SpaceParams d;
  d.N = N;
  d.k = 4 - k;
  d.lambda = (d.k - 1) / 2;
  d.eps2 = -eps2;
  for (auto [p, s] : eps_p) d.eps_p.emplace_back(p, legendre(-1, p) * s);
  SpaceParams ref = SpaceParams::plus(N, d.k);
  d.plus_family = d.eps2 == ref.eps2 && d.eps_p == ref.eps_p && ref.plus_family;
  return d;
}

std::string SpaceParams::label() const {
  std::ostringstream os;
  os << "M^!eps_{" << k << "/2}(" << N << ",1), eps2=" << (eps2 > 0 ? "+" : "-");
  for (auto [p, s] : eps_p) os << " eps_" << p << "=" << (s > 0 ? "+" : "-");
  return os.str();
}

bool plus_support(std::int64_t n, const SpaceParams& params) {
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<char>> tables;
  const std::int64_t M = 4 * params.N;
  const std::vector<char>* table;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(M);
    if (it == tables.end()) {
      std::vector<char> sq(static_cast<std::size_t>(M), 0);
      for (std::int64_t x = 0; 2 * x <= M; ++x) sq[static_cast<std::size_t>(x * x % M)] = 1;
      it = tables.emplace(M, std::move(sq)).first;
    }
    table = &it->second;
  }
  const std::int64_t v = mod_pos(mod_pos(params.lambda, 2) == 1 ? -n : n, M);
  return (*table)[static_cast<std::size_t>(v)] != 0;
}

bool epsilon_support(std::int64_t n, const SpaceParams& params) {
  const std::int64_t r4 = mod_pos(n, 4);
  if (r4 == 2 || r4 == mod_pos(-params.eps2, 4)) return false;
  for (auto [p, s] : params.eps_p) {
    if (legendre(n, p) == -s) return false;
  }
  return true;
}

VerificationReport check_epsilon(const LaurentSeries& f, const SpaceParams& params) {
  VerificationReport rep;
  rep.check = "epsilon-condition";
  for (const auto& [e, c] : f.terms()) {
    if (!epsilon_support(e, params)) rep.witnesses.push_back({e, c});
  }
  rep.pass = rep.witnesses.empty();
  return rep;
}

Rational s_of_m(std::int64_t m, const SpaceParams& params) {
  const std::int64_t g = m == 0 ? params.N : std::gcd(params.N, m < 0 ? -m : m);
  Rational s(1);
  for (auto [p, sign] : params.eps_p) {
    (void)sign;
    if (g % p == 0) s *= Rational(2);  // 1 + p/|D_p| with |D_p| = p
  }
  return s;
}

std::int64_t index_gamma0(std::int64_t M) {
  if (M < 1) throw Error("index_gamma0: M must be >= 1");
  std::int64_t idx = M;
  for (std::int64_t p : prime_factors(M)) idx = idx / p * (p + 1);
  return idx;
}

SturmData sturm_data(const LaurentSeries& f, const SpaceParams& params) {
  if (f.is_zero() || f.valuation() >= 0)
    throw NotWeaklyHolomorphicHypothesis(
        "sturm_data: form has no pole; use the holomorphic bound");
  SturmData sd;
  sd.ord_inf = f.valuation();
  const std::int64_t depth = -sd.ord_inf;
  // minimal positive k' with k' >= depth/4N and k + 12 k' > 0
  std::int64_t kp = (depth + 4 * params.N - 1) / (4 * params.N);
  if (kp < 1) kp = 1;
  while (params.k + 12 * kp <= 0) ++kp;
  sd.k_prime = kp;
  sd.index = index_gamma0(4 * params.N);
  sd.bound = Rational(sd.ord_inf) +
             Rational(Int(params.k + 12 * kp), Int(12)) * Rational(Int(sd.index));
  return sd;
}

namespace {

VerificationReport integrality_scan(const LaurentSeries& f, const Rational& bound,
                                    const std::string& check) {
  if (Rational(Int(f.precision())) <= bound)
    throw InsufficientPrecision(check + ": precision " + std::to_string(f.precision()) +
                                " does not exceed the Sturm bound " + bound.str());
  VerificationReport rep;
  rep.check = check;
  for (const auto& [e, c] : f.terms()) {
    if (Rational(Int(e)) > bound) break;
    if (!c.is_integer()) rep.witnesses.push_back({e, c});
  }
  rep.pass = rep.witnesses.empty();
  rep.detail = "bound " + bound.str();
  return rep;
}

}  // namespace

VerificationReport certify_integrality(const LaurentSeries& f, const SpaceParams& params) {
  if (!f.is_zero() && f.valuation() < 0) {
    const SturmData sd = sturm_data(f, params);
    return integrality_scan(f, sd.bound, "integrality(pole)");
  }
  // Holomorphic route: multiply by theta^k in principle; the resulting bound
  // on checked indices is (k/12) [SL2(Z):Gamma_0(4N)].
  const Rational bound =
      Rational(Int(params.k), Int(12)) * Rational(Int(index_gamma0(4 * params.N)));
  return integrality_scan(f, bound, "integrality(holomorphic)");
}

bool s32_plus_cusp_space_vanishes(std::int64_t N) {
  if (!odd_square_free(N)) return false;
  if (N < 37) return true;
  static const std::int64_t extra[] = {39, 41, 47, 51, 55, 59, 69, 71, 87, 95, 105, 119};
  for (std::int64_t x : extra) {
    if (N == x) return true;
  }
  return false;
}

std::vector<std::int64_t> integrality_checklist(std::int64_t m_eps, const SpaceParams& params) {
  std::vector<std::int64_t> out;
  // m = 0 belongs on the list exactly when f_0 exists; in the plus family
  // that happens for k = 1 mod 4 (theta and its Eisenstein multiples) and
  // fails for k = 3 mod 4 (the holomorphic plus space is cuspidal, so no
  // form 1 + O(q)).
  if (mod_pos(params.k, 4) == 1 && epsilon_support(0, params)) out.push_back(0);
  for (std::int64_t m = -1; m >= -4 * params.N - m_eps; --m) {
    if (epsilon_support(m, params)) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace redform
