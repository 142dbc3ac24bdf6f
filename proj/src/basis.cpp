#include "redform/basis.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>

#include "redform/bracket.hpp"
#include "redform/classical.hpp"
#include "redform/errors.hpp"
#include "redform/hecke.hpp"

namespace redform {

namespace {

std::int64_t ceil_div_pos(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// The four weight-preserving bracket shapes: a + 2n = 12 with
// one Delta(4N tau) division keeps the weight at k/2 and deepens the pole by
// one 4N-window per generation.
constexpr std::pair<unsigned, unsigned> kBracketShapes[] = {{10, 1}, {8, 2}, {6, 3}, {4, 4}};

// Pool recipe: a precision-independent description of every pool element so
// that single elements can be re-evaluated at high precision later. Entries
// reference earlier entries only.
struct PoolEntry {
  enum class Kind { Seed, Bracket, JPowSeed, Combo } kind = Kind::Seed;
  int parent = -1;          // Bracket
  unsigned a = 0, n = 0;    // Bracket: [parent, E_a(4N tau)]_n / Delta(4N tau)
  unsigned l = 0;           // JPowSeed: j(4N tau)^l * seed
  std::vector<std::pair<int, Rational>> combo;  // Combo
  std::int64_t depth = 0;   // upper bound for |valuation|
  std::string label;
};

class PoolRecipe {
 public:
  PoolRecipe(SpaceParams params, std::int64_t pole_bound) : params_(std::move(params)) {
    const std::int64_t fourN = 4 * params_.N;
    const bool k1mod4 = ((params_.k % 4) + 4) % 4 == 1;
    std::int64_t seed_depth;
    if (k1mod4 && params_.lambda == 0) {
      seed_depth = 0;
      entries_.push_back({PoolEntry::Kind::Seed, -1, 0, 0, 0, {}, seed_depth, "theta"});
    } else if (!k1mod4 && params_.lambda == 1 && params_.N == 1) {
      seed_depth = 1;
      entries_.push_back(
          {PoolEntry::Kind::Seed, -1, 0, 0, 0, {}, seed_depth, "theta_alt*E4(4t)/eta(4t)^6"});
    } else {
      throw PoolDeficient("no pool seed construction for " + params_.label());
    }
    if (!params_.plus_family)
      throw PoolDeficient("pool recipe is validated for the plus family only: " +
                          params_.label());

    const std::int64_t need_depth = -pole_bound + fourN;
    std::vector<int> gen = {0};
    std::int64_t depth = seed_depth;
    while (depth < need_depth && !gen.empty()) {
      std::vector<int> next;
      const std::size_t parents = std::min<std::size_t>(gen.size(), 4);
      for (std::size_t pi = 0; pi < parents; ++pi) {
        for (auto [a, n] : kBracketShapes) {
          PoolEntry e;
          e.kind = PoolEntry::Kind::Bracket;
          e.parent = gen[pi];
          e.a = a;
          e.n = n;
          e.depth = entries_[gen[pi]].depth + fourN;
          e.label = "[" + entries_[gen[pi]].label + ",E" + std::to_string(a) + "(" +
                    std::to_string(fourN) + "t)]_" + std::to_string(n) + "/Delta";
          next.push_back(static_cast<int>(entries_.size()));
          entries_.push_back(std::move(e));
        }
      }
      depth += fourN;
      gen = std::move(next);
    }
    for (std::int64_t l = 1; l * fourN <= need_depth; ++l) {
      PoolEntry e;
      e.kind = PoolEntry::Kind::JPowSeed;
      e.l = static_cast<unsigned>(l);
      e.depth = seed_depth + l * fourN;
      e.label = "j(" + std::to_string(fourN) + "t)^" + std::to_string(l) + "*seed";
      entries_.push_back(std::move(e));
    }
    // Literal pool variants at (N,k) = (7,1): the classical auxiliary rational
    // combination, its order-4 bracket, and a duplicated first-generation row
    // (duplicates are harmless in the echelon and keep both readings spanned).
    if (params_.N == 7 && params_.k == 1 && entries_.size() >= 5 &&
        entries_[1].kind == PoolEntry::Kind::Bracket) {
      PoolEntry f;
      f.kind = PoolEntry::Kind::Combo;
      f.combo = {{1, Rational(1, 5600)},
                 {2, Rational(7, 103680)},
                 {3, Rational(1, 80640)},
                 {4, Rational(1, 705600)},
                 {0, Rational(-41687, 1800)}};
      f.depth = entries_[4].depth;
      f.label = "aux-combo";
      const int f_idx = static_cast<int>(entries_.size());
      entries_.push_back(std::move(f));
      PoolEntry rc17;
      rc17.kind = PoolEntry::Kind::Bracket;
      rc17.parent = f_idx;
      rc17.a = 4;
      rc17.n = 4;
      rc17.depth = entries_[f_idx].depth + fourN;
      rc17.label = "[aux-combo,E4]_4/Delta";
      entries_.push_back(std::move(rc17));
      PoolEntry rc13 = entries_[1];  // literal duplicate of [RC_1, E_10]_1 / Delta
      rc13.label = "dup-bracket";
      entries_.push_back(std::move(rc13));
    }
  }

  const SpaceParams& params() const { return params_; }
  std::size_t size() const { return entries_.size(); }
  const PoolEntry& entry(std::size_t i) const { return entries_[i]; }

  // Series for entry i, precision >= prec (exact coefficients below prec).
  LaurentSeries eval(int i, std::int64_t prec) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(i);
      if (it != cache_.end() && it->second.precision() >= prec)
        return it->second.truncated(prec);
    }
    const PoolEntry& e = entries_[static_cast<std::size_t>(i)];
    const std::int64_t fourN = 4 * params_.N;
    const Rational half_weight(Int(params_.k), Int(2));
    LaurentSeries out;
    switch (e.kind) {
      case PoolEntry::Kind::Seed:
        out = seed(prec);
        break;
      case PoolEntry::Kind::Bracket: {
        const std::int64_t pp = prec + fourN;
        LaurentSeries parent = eval(e.parent, pp);
        LaurentSeries eis = eis4N(e.a, pp + entries_[e.parent].depth + fourN);
        LaurentSeries num = rc_bracket(parent, half_weight, eis, Rational(Int(e.a)), e.n);
        out = divide(num, delta4N(prec + 2 * fourN + e.depth));
        break;
      }
      case PoolEntry::Kind::JPowSeed: {
        const std::int64_t jl = static_cast<std::int64_t>(e.l);
        LaurentSeries jp = pow(j4N(prec + (jl + 1) * fourN + e.depth), e.l);
        out = mul(jp, seed(prec + jl * fourN));
        break;
      }
      case PoolEntry::Kind::Combo: {
        bool first = true;
        for (const auto& [idx, c] : e.combo) {
          LaurentSeries part = eval(idx, prec);
          out = first ? part.scaled(c) : axpy(out, c, part);
          first = false;
        }
        break;
      }
    }
    if (out.precision() < prec)
      throw Error("pool eval: internal precision shortfall for " + e.label);
    out = out.truncated(prec);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(i);
      if (it == cache_.end() || it->second.precision() < out.precision()) cache_[i] = out;
    }
    return out;
  }

  LaurentSeries delta4N(std::int64_t prec) {
    return cached_classic(delta4N_, prec, [&](std::int64_t p) {
      return dilate(delta(ceil_div_pos(p, 4 * params_.N) + 1), 4 * params_.N).truncated(p);
    });
  }

  LaurentSeries eis4N(unsigned a, std::int64_t prec) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = eis4N_[a];
    if (slot.precision() < prec || slot.is_zero()) {
      slot =
          dilate(eisenstein(a, ceil_div_pos(prec, 4 * params_.N) + 1), 4 * params_.N)
              .truncated(prec);
    }
    return slot.truncated(prec);
  }

  LaurentSeries j4N(std::int64_t prec) {
    return cached_classic(j4N_, prec, [&](std::int64_t p) {
      return dilate(j_function(ceil_div_pos(p, 4 * params_.N) + 1), 4 * params_.N);
    });
  }

  LaurentSeries seed(std::int64_t prec) {
    return cached_classic(seed_, prec, [&](std::int64_t p) -> LaurentSeries {
      if (params_.lambda == 0) return theta(p);
      // Zagier's weight-3/2 generator at level 4.
      LaurentSeries num = mul(theta_alt(p + 4), eis4N(4, p + 4));
      return divide(num, eta_pow_dilated(6, 4, p + 4));
    });
  }

 private:
  template <typename F>
  LaurentSeries cached_classic(LaurentSeries& slot, std::int64_t prec, F&& compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (!slot.is_zero() && slot.precision() >= prec) return slot.truncated(prec);
    }
    LaurentSeries fresh = compute(prec);
    if (fresh.precision() < prec) throw Error("classic eval: precision shortfall");
    std::lock_guard<std::mutex> lock(mu_);
    if (slot.is_zero() || slot.precision() < fresh.precision()) slot = fresh;
    return slot.truncated(prec);
  }

  SpaceParams params_;
  std::vector<PoolEntry> entries_;
  std::mutex mu_;
  std::map<int, LaurentSeries> cache_;
  LaurentSeries delta4N_{0}, j4N_{0}, seed_{0};
  std::map<unsigned, LaurentSeries> eis4N_;
};

// Clears g's coefficient at every pivot in (lo, 0] by subtracting the scaled
// pivot forms, on a dense window buffer (one pass, fused submul on the
// integer path). pivot(p) returns the monic form at p or nullptr.
template <typename PivotFn>
LaurentSeries clear_pivots_dense(const LaurentSeries& g, std::int64_t lo,
                                 const PivotFn& pivot) {
  const std::int64_t hi = g.precision();
  if (g.is_zero() || hi <= lo) return g;
  const std::size_t width = static_cast<std::size_t>(hi - lo);

  bool integral = g.all_integer();
  if (integral) {
    for (std::int64_t p = lo + 1; p <= 0 && integral; ++p) {
      const LaurentSeries* F = pivot(p);
      integral = F == nullptr || F->all_integer();
    }
  }
  std::vector<LaurentSeries::Term> out;
  if (integral) {
    std::vector<mpz_class> buf(width);
    for (const auto& [e, v] : g.terms()) buf[static_cast<std::size_t>(e - lo)] = v.num();
    for (std::int64_t p = lo + 1; p <= 0; ++p) {
      const LaurentSeries* F = pivot(p);
      if (!F) continue;
      mpz_class& slot = buf[static_cast<std::size_t>(p - lo)];
      if (sgn(slot) == 0) continue;
      const mpz_class c = slot;
      for (const auto& [e, v] : F->terms()) {
        if (e >= hi) break;
        mpz_submul(buf[static_cast<std::size_t>(e - lo)].get_mpz_t(), c.get_mpz_t(),
                   v.num().get_mpz_t());
      }
    }
    for (std::size_t i = 0; i < width; ++i) {
      if (sgn(buf[i]) != 0)
        out.emplace_back(lo + static_cast<std::int64_t>(i), Rational(Int(buf[i])));
    }
  } else {
    std::vector<mpq_class> buf(width);
    for (const auto& [e, v] : g.terms()) buf[static_cast<std::size_t>(e - lo)] = v.raw();
    mpq_class tmp;
    for (std::int64_t p = lo + 1; p <= 0; ++p) {
      const LaurentSeries* F = pivot(p);
      if (!F) continue;
      mpq_class& slot = buf[static_cast<std::size_t>(p - lo)];
      if (sgn(slot) == 0) continue;
      const mpq_class c = slot;
      for (const auto& [e, v] : F->terms()) {
        if (e >= hi) break;
        mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), v.raw().get_mpq_t());
        buf[static_cast<std::size_t>(e - lo)] -= tmp;
      }
    }
    for (std::size_t i = 0; i < width; ++i) {
      if (sgn(buf[i]) != 0)
        out.emplace_back(lo + static_cast<std::int64_t>(i),
                         Rational(buf[i].get_num(), buf[i].get_den()));
    }
  }
  return LaurentSeries(std::move(out), hi);
}

struct EchelonRow {
  LaurentSeries s;
  std::vector<Rational> combo;
};

// Gauss-Jordan over ascending exponents with combination tracking. Pivot
// rows come out monic with zeros at every other pivot exponent.
std::map<std::int64_t, EchelonRow> echelon_with_combos(std::vector<EchelonRow> rows) {
  std::map<std::int64_t, EchelonRow> done;
  for (;;) {
    int best = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].s.is_zero()) continue;
      if (best < 0 || rows[i].s.valuation() < rows[static_cast<std::size_t>(best)].s.valuation())
        best = static_cast<int>(i);
    }
    if (best < 0) break;
    EchelonRow piv = std::move(rows[static_cast<std::size_t>(best)]);
    rows.erase(rows.begin() + best);
    const std::int64_t v = piv.s.valuation();
    const Rational lead = piv.s.terms().front().second;
    if (lead != Rational(1)) {
      const Rational inv = Rational(1) / lead;
      piv.s = piv.s.scaled(inv);
      for (auto& c : piv.combo) c *= inv;
    }
    auto eliminate = [&](EchelonRow& row) {
      if (row.s.is_zero() || row.s.precision() <= v) return;
      const Rational c = row.s.coefficient(v);
      if (c.is_zero()) return;
      row.s = axpy(row.s, -c, piv.s);
      for (std::size_t j = 0; j < row.combo.size(); ++j) row.combo[j] -= c * piv.combo[j];
    };
    for (auto& r : rows) eliminate(r);
    for (auto& [pv, r] : done) {
      (void)pv;
      eliminate(r);
    }
    done.emplace(v, std::move(piv));
  }
  return done;
}

}  // namespace

std::vector<LaurentSeries> spanning_pool(const SpaceParams& params, std::int64_t pole_bound,
                                         std::int64_t prec) {
  if (pole_bound > 0) throw Error("spanning_pool: pole_bound must be <= 0");
  PoolRecipe recipe(params, pole_bound);
  std::vector<LaurentSeries> out;
  out.reserve(recipe.size());
  for (std::size_t i = 0; i < recipe.size(); ++i) {
    LaurentSeries s = recipe.eval(static_cast<int>(i), prec);
    VerificationReport rep = check_epsilon(s, params);
    if (!rep.pass)
      throw Error("spanning_pool: element " + recipe.entry(i).label +
                  " violates the epsilon-condition at exponent " +
                  std::to_string(rep.witnesses.front().n));
    out.push_back(std::move(s));
  }
  return out;
}

ReducedBasis echelon_reduce(const std::vector<LaurentSeries>& pool, const SpaceParams& params,
                            std::int64_t prec) {
  std::vector<EchelonRow> rows;
  rows.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].precision() < prec)
      throw PrecisionExceeded("echelon_reduce: pool element below requested precision");
    rows.push_back({pool[i].truncated(prec), {}});
  }
  auto done = echelon_with_combos(std::move(rows));

  ReducedBasis basis;
  basis.params = params;
  basis.precision = prec;
  std::int64_t min_pivot = 0;
  for (auto& [m, row] : done) {
    min_pivot = std::min(min_pivot, m);
    ReducedForm rf;
    rf.m = m;
    rf.s = s_of_m(m, params);
    rf.series = std::make_shared<const LaurentSeries>(std::move(row.s));
    basis.forms.emplace(m, std::move(rf));
  }
  basis.pool_pole_bound = min_pivot;
  for (std::int64_t m = min_pivot; m <= 0; ++m) {
    if (epsilon_support(m, params) && basis.forms.find(m) == basis.forms.end())
      basis.existence_gaps.push_back(m);
  }
  return basis;
}

struct BasisBuilder::Impl {
  SpaceParams params;
  std::shared_ptr<PoolRecipe> recipe;
  std::int64_t pool_floor = 1;  // no pool zone yet
  std::map<std::int64_t, std::vector<Rational>> combos;  // pivot -> pool combination
  std::map<std::int64_t, ReducedForm> forms;             // pool + deep cache
  std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const LaurentSeries>> hecke;

  static constexpr std::int64_t kMinPoolPrec = 48;

  void ensure_pool(std::int64_t pole_bound, std::int64_t prec) {
    const std::int64_t fourN = 4 * params.N;
    std::int64_t floor_wanted = std::min(pole_bound, -2 * fourN);
    if (recipe && pool_floor <= floor_wanted) return;

    recipe = std::make_shared<PoolRecipe>(params, floor_wanted);
    combos.clear();
    forms.clear();
    hecke.clear();

    const std::int64_t p0 = std::max<std::int64_t>(
        {prec, kMinPoolPrec, 2 * fourN + 8});
    std::vector<EchelonRow> rows;
    for (std::size_t i = 0; i < recipe->size(); ++i) {
      LaurentSeries s = recipe->eval(static_cast<int>(i), p0);
      VerificationReport rep = check_epsilon(s, params);
      if (!rep.pass)
        throw Error("pool element " + recipe->entry(i).label +
                    " violates the epsilon-condition at exponent " +
                    std::to_string(rep.witnesses.front().n));
      std::vector<Rational> unit(recipe->size());
      unit[i] = Rational(1);
      rows.push_back({std::move(s), std::move(unit)});
    }
    auto done = echelon_with_combos(std::move(rows));

    std::int64_t deepest = 0;
    for (auto& [m, row] : done) deepest = std::min(deepest, m);
    pool_floor = std::max(floor_wanted, deepest);
    for (auto& [m, row] : done) {
      if (m < pool_floor) continue;  // byproduct pivots below the validated range
      combos.emplace(m, std::move(row.combo));
      ReducedForm rf;
      rf.m = m;
      rf.s = s_of_m(m, params);
      rf.series = std::make_shared<const LaurentSeries>(std::move(row.s));
      forms.emplace(m, std::move(rf));
    }

    // Existence audit over the validated window. When the dual pivot set is
    // resolved (empty or {0}), every supported m < 0 admits a reduced form
    // and m = 0 exactly when k = 1 mod 4, so a miss means the recipe does
    // not span and must be enlarged. At k = 1 levels beyond the tabulated
    // list the dual space is unresolved and genuine gaps are possible; they
    // are recorded, not fatal.
    const bool k1mod4 = ((params.k % 4) + 4) % 4 == 1;
    for (std::int64_t m = pool_floor; m <= 0; ++m) {
      if (!epsilon_support(m, params)) continue;
      const bool have = combos.find(m) != combos.end();
      const bool expected = m == 0 ? k1mod4 : existence_resolved();
      if (expected && !have)
        throw PoolDeficient("missing pivot " + std::to_string(m) + " in " + params.label() +
                            "; enlarge the pool recipe");
      if (m == 0 && !k1mod4 && have)
        throw Error("unexpected holomorphic pivot 0 in " + params.label());
    }
  }

  // Whether the dual pivot set is known: true for k = 3 mod 4 (the dual
  // weight-1/2 space is C*theta), for k >= 5 (negative dual weight), and for
  // k = 1 levels on the tabulated S_{3/2} = 0 list.
  bool existence_resolved() const {
    if (params.k != 1) return true;
    return s32_plus_cusp_space_vanishes(params.N);
  }

  const ReducedForm& pool_form(std::int64_t m, std::int64_t prec) {
    auto it = forms.find(m);
    if (it != forms.end() && it->second.series->precision() >= prec) return it->second;
    auto cit = combos.find(m);
    if (cit == combos.end())
      throw NonexistentForm("no reduced form with principal exponent " + std::to_string(m));
    LaurentSeries acc(prec);
    for (std::size_t i = 0; i < cit->second.size(); ++i) {
      const Rational& c = cit->second[i];
      if (c.is_zero()) continue;
      acc = axpy(acc, c, recipe->eval(static_cast<int>(i), prec));
    }
    if (acc.is_zero() || acc.valuation() != m || acc.terms().front().second != Rational(1))
      throw Error("pool re-evaluation lost the pivot at m=" + std::to_string(m));
    ReducedForm rf;
    rf.m = m;
    rf.s = s_of_m(m, params);
    rf.series = std::make_shared<const LaurentSeries>(std::move(acc));
    forms[m] = std::move(rf);
    return forms[m];
  }

  // Supported pivots p in (m, 0] that carry forms (everything supported
  // except, at k = 3 mod 4, the absent pivot 0).
  bool pivot_exists(std::int64_t p) const {
    if (p >= pool_floor) return combos.find(p) != combos.end();
    return epsilon_support(p, params);
  }

  const ReducedForm& deep_form(std::int64_t m, std::int64_t requested_prec) {
    {
      auto it = forms.find(m);
      if (it != forms.end() && it->second.series->precision() >= requested_prec)
        return it->second;
    }
    if (!existence_resolved())
      throw HypothesisUnverified(
          "deep extension needs the reduced-form existence criterion resolved; level " +
          std::to_string(params.N) + " is outside the tabulated list");
    const std::int64_t prec = requested_prec + 32;  // absorb nearby re-requests
    const std::int64_t fourN = 4 * params.N;
    // Walking the recurrence F_{m'} = j(4N tau) F_{m'+4N} - (pivot cleanup)
    // needs each parent one window more precise than its child.
    const std::int64_t top_u = prec + (pool_floor - m) + fourN;
    for (std::int64_t p = pool_floor; p <= 0; ++p) {
      if (epsilon_support(p, params) && combos.count(p)) pool_form(p, top_u);
    }
    LaurentSeries jq;  // j(4N tau) shared across the descent
    {
      PoolRecipe& r = *recipe;
      jq = r.j4N(top_u - m + fourN);
    }
    for (std::int64_t mp = pool_floor - 1; mp >= m; --mp) {
      if (!epsilon_support(mp, params)) continue;
      const std::int64_t u = prec + (mp - m);
      auto it = forms.find(mp);
      if (it != forms.end() && it->second.series->precision() >= u) continue;
      const ReducedForm& parent = mp + fourN >= pool_floor ? pool_form(mp + fourN, u + fourN)
                                                           : forms.at(mp + fourN);
      LaurentSeries g = mul(jq.truncated(u - (mp + fourN) + fourN), *parent.series).truncated(u);
      g = clear_pivots_dense(g, mp, [&](std::int64_t p) -> const LaurentSeries* {
        if (!epsilon_support(p, params) || !pivot_exists(p)) return nullptr;
        return forms.at(p).series.get();
      });
      if (g.is_zero() || g.valuation() != mp || g.terms().front().second != Rational(1))
        throw Error("deep extension lost the pivot at m=" + std::to_string(mp));
      ReducedForm rf;
      rf.m = mp;
      rf.s = s_of_m(mp, params);
      rf.series = std::make_shared<const LaurentSeries>(g.truncated(u));
      forms[mp] = std::move(rf);
    }
    return forms.at(m);
  }
};

BasisBuilder::BasisBuilder(SpaceParams params) : impl_(std::make_unique<Impl>()) {
  impl_->params = std::move(params);
}
BasisBuilder::~BasisBuilder() = default;
BasisBuilder::BasisBuilder(BasisBuilder&&) noexcept = default;
BasisBuilder& BasisBuilder::operator=(BasisBuilder&&) noexcept = default;

const SpaceParams& BasisBuilder::params() const { return impl_->params; }

void BasisBuilder::build(std::int64_t pole_bound, std::int64_t prec) {
  impl_->ensure_pool(pole_bound, prec);
  for (std::int64_t m = std::max(pole_bound, impl_->pool_floor); m <= 0; ++m) {
    if (epsilon_support(m, impl_->params) && impl_->combos.count(m)) impl_->pool_form(m, prec);
  }
}

ReducedForm BasisBuilder::form(std::int64_t m, std::int64_t prec) {
  if (!epsilon_support(m, impl_->params))
    throw UnsupportedExponent("exponent " + std::to_string(m) +
                              " is outside the epsilon-condition support");
  impl_->ensure_pool(m >= -8 * impl_->params.N ? m : -2 * 4 * impl_->params.N,
                     Impl::kMinPoolPrec);
  if (m >= impl_->pool_floor) return impl_->pool_form(m, prec);
  return impl_->deep_form(m, prec);
}

std::vector<std::int64_t> BasisBuilder::pool_pivots() const {
  std::vector<std::int64_t> out;
  out.reserve(impl_->combos.size());
  for (const auto& [m, c] : impl_->combos) {
    (void)c;
    out.push_back(m);
  }
  return out;
}

std::int64_t BasisBuilder::pool_pole_bound() const { return impl_->pool_floor; }

LaurentSeries BasisBuilder::hecke_image(std::int64_t m, std::int64_t t, std::int64_t out_prec) {
  const auto key = std::make_pair(m, t);
  auto it = impl_->hecke.find(key);
  if (it != impl_->hecke.end() && it->second->precision() >= out_prec)
    return it->second->truncated(out_prec);
  const HeckeDescriptor desc = HeckeDescriptor::make(t, impl_->params);
  const ReducedForm rf = form(m, t * t * out_prec + 1);
  LaurentSeries image = apply_T_t2(*rf.series, desc, impl_->params);
  auto stored = std::make_shared<const LaurentSeries>(std::move(image));
  impl_->hecke[key] = stored;
  return stored->truncated(out_prec);
}

Rational BasisBuilder::b_coefficient(std::int64_t m, std::int64_t t, std::int64_t d) {
  return hecke_image(m, t, d + 1).coefficient(d);
}

ReducedBasis BasisBuilder::snapshot() const {
  ReducedBasis basis;
  basis.params = impl_->params;
  basis.pool_pole_bound = impl_->pool_floor;
  std::int64_t prec = LaurentSeries::kInfPrec;
  for (const auto& [m, rf] : impl_->forms) {
    basis.forms.emplace(m, rf);
    prec = std::min(prec, rf.series->precision());
  }
  basis.precision = prec;
  for (std::int64_t m = impl_->pool_floor; m <= 0; ++m) {
    if (epsilon_support(m, impl_->params) && !impl_->combos.count(m))
      basis.existence_gaps.push_back(m);
  }
  return basis;
}

std::optional<std::int64_t> compute_m_epsilon(const SpaceParams& params, std::int64_t prec) {
  const SpaceParams dual = params.dual();
  if (dual.k < 1) return std::nullopt;  // dual weight < 1/2: the space vanishes
  try {
    BasisBuilder b(dual);
    b.build(-8 * dual.N, std::max<std::int64_t>(prec, 8 * dual.N + 16));
    std::int64_t best = -1;
    for (std::int64_t m : b.pool_pivots()) {
      if (m >= 0) best = std::max(best, m);
    }
    return best;  // -1 = no holomorphic reduced forms at all
  } catch (const PoolDeficient&) {
    if (dual.k == 3) {
      // Dual weight 3/2: holomorphic = cuspidal there, so the tabulated
      // S_{3/2} = 0 level list settles the pivot set without a pool.
      if (s32_plus_cusp_space_vanishes(params.N)) return -1;
      throw HypothesisUnverified(
          "cannot resolve the dual weight-3/2 space at N=" + std::to_string(params.N) +
          ": level outside the tabulated S=0 list and no pool construction");
    }
    throw;
  }
}

IntegralityCertificate basis_certificate(BasisBuilder& builder, std::int64_t prec_hint) {
  const SpaceParams& params = builder.params();
  IntegralityCertificate cert;
  cert.m_eps = compute_m_epsilon(params, 8 * params.N + 16);
  const std::int64_t m_eps = cert.m_eps.value_or(-1);
  cert.checklist = integrality_checklist(m_eps, params);
  cert.pass = true;
  const std::int64_t idx = index_gamma0(4 * params.N);
  for (std::int64_t m : cert.checklist) {
    // Closed-form Sturm bound for a principal exponent m, to size precision.
    std::int64_t kp = m < 0 ? std::max<std::int64_t>(1, ceil_div_pos(-m, 4 * params.N)) : 1;
    while (params.k + 12 * kp <= 0) ++kp;
    const Rational bound = m < 0 ? Rational(Int(m)) + Rational(Int(params.k + 12 * kp), Int(12)) *
                                                          Rational(Int(idx))
                                 : Rational(Int(params.k), Int(12)) * Rational(Int(idx));
    std::int64_t need = 2;
    while (Rational(Int(need)) <= bound) ++need;
    need = std::max(need + 1, prec_hint);
    ReducedForm rf = builder.form(m, need);
    VerificationReport rep = certify_integrality(*rf.series, params);
    rep.check += " m=" + std::to_string(m);
    cert.pass = cert.pass && rep.pass;
    cert.per_form.push_back(std::move(rep));
  }
  return cert;
}

VerificationReport certify_basis_integrality(BasisBuilder& builder, std::int64_t prec_hint) {
  IntegralityCertificate cert = basis_certificate(builder, prec_hint);
  VerificationReport rep;
  rep.check = "basis integrality certificate";
  rep.pass = cert.pass;
  std::ostringstream det;
  det << "m_eps=" << (cert.m_eps ? std::to_string(*cert.m_eps) : std::string("none"))
      << " checklist=[";
  for (std::size_t i = 0; i < cert.checklist.size(); ++i)
    det << (i ? "," : "") << cert.checklist[i];
  det << "]";
  rep.detail = det.str();
  for (const auto& sub : cert.per_form) {
    if (!sub.pass)
      for (const auto& w : sub.witnesses) rep.witnesses.push_back(w);
  }
  return rep;
}

}  // namespace redform
