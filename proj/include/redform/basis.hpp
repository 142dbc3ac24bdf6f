#ifndef REDFORM_BASIS_HPP
#define REDFORM_BASIS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>

#include "redform/space.hpp"

namespace redform {

// Normalized basis element F_m = s(m) f_m = q^m + ..., leading coefficient 1.
struct ReducedForm {
  std::int64_t m = 0;
  Rational s;
  std::shared_ptr<const LaurentSeries> series;

  const LaurentSeries& q_expansion() const { return *series; }
};

struct ReducedBasis {
  SpaceParams params;
  std::map<std::int64_t, ReducedForm> forms;  // keyed by pivot exponent m
  std::int64_t pool_pole_bound = 0;
  std::int64_t precision = 0;
  std::vector<std::int64_t> existence_gaps;  // supported m in range with no pivot
};

// Example-1.3-style spanning pool for the plus family: theta seed (or the
// weight-3/2 seed theta_alt E4(4tau)/eta(4tau)^6 at N=1), iterated
// Rankin-Cohen brackets [., E_a(4N tau)]_n / Delta(4N tau), and
// j(4N tau)-multiples, reaching valuation <= pole_bound. Throws PoolDeficient
// when no seed construction is known for (N, k).
std::vector<LaurentSeries> spanning_pool(const SpaceParams& params, std::int64_t pole_bound,
                                         std::int64_t prec);

// Exact Gauss-Jordan elimination over Q on ascending exponents: pivots at the
// lowest exponents, pivots normalized monic, back-substituted so every basis
// element vanishes at every other pivot. Linear dependence just yields fewer
// pivots.
ReducedBasis echelon_reduce(const std::vector<LaurentSeries>& pool, const SpaceParams& params,
                            std::int64_t prec);

// Stateful pipeline: pool + echelon for the shallow zone, the j(4N tau)
// multiplication recurrence for arbitrarily deep poles, per-form
// precision management, and Hecke coefficient access.
//
// Immutable once built for a given precision; `form` re-derives at higher
// precision on demand. Not internally synchronized: share across threads
// only after the needed forms are materialized.
class BasisBuilder {
 public:
  explicit BasisBuilder(SpaceParams params);
  ~BasisBuilder();
  BasisBuilder(BasisBuilder&&) noexcept;
  BasisBuilder& operator=(BasisBuilder&&) noexcept;

  const SpaceParams& params() const;

  // Ensure the pool/echelon zone covers [pole_bound, 0] at `prec`.
  void build(std::int64_t pole_bound, std::int64_t prec);

  // The unique reduced form with principal exponent m at precision >= prec.
  // Throws UnsupportedExponent / NonexistentForm / PoolDeficient.
  ReducedForm form(std::int64_t m, std::int64_t prec);

  // Pivots currently materialized in the pool zone (ascending).
  std::vector<std::int64_t> pool_pivots() const;
  std::int64_t pool_pole_bound() const;

  // d-th coefficient of F_m | T(t^2); caches F_m^{(t)} per (m, t).
  Rational b_coefficient(std::int64_t m, std::int64_t t, std::int64_t d);
  // F_m | T(t^2) with enough precision to read exponents < out_prec.
  LaurentSeries hecke_image(std::int64_t m, std::int64_t t, std::int64_t out_prec);

  ReducedBasis snapshot() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// m_eps = max{m : f*_m exists in the holomorphic dual space}, realized as the
// largest pivot (>= 0) of the dual space's holomorphic part; -1 when the dual
// space vanishes (the max over an empty pivot set, as happens for k = 1
// levels with S_{3/2} = 0); NoForm (nullopt) when the dual weight is
// negative (k >= 5). Throws HypothesisUnverified when the dual space cannot
// be resolved by either the pool machinery or the tabulated level list.
std::optional<std::int64_t> compute_m_epsilon(const SpaceParams& params, std::int64_t prec);

// Sturm-type certificates across the finite checklist; on pass the
// certificate extends to s(m) a(m,n) integrality for every reduced form.
VerificationReport certify_basis_integrality(BasisBuilder& builder, std::int64_t prec_hint = 0);

// The scaling constant and the uniqueness bookkeeping live in space.hpp;
// this resolves the checklist and the dual-space data for the CLI.
struct IntegralityCertificate {
  std::optional<std::int64_t> m_eps;
  std::vector<std::int64_t> checklist;
  std::vector<VerificationReport> per_form;
  bool pass = false;
};
IntegralityCertificate basis_certificate(BasisBuilder& builder, std::int64_t prec_hint = 0);

}  // namespace redform

#endif
