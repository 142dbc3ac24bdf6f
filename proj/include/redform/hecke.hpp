#ifndef REDFORM_HECKE_HPP
#define REDFORM_HECKE_HPP

#include "redform/space.hpp"

namespace redform {

// t with gcd(t, 4N) = 1 and its prime factorization, driving T(t^2).
struct HeckeDescriptor {
  std::int64_t t = 1;
  std::vector<std::pair<std::int64_t, unsigned>> factorization;

  static HeckeDescriptor make(std::int64_t t, const SpaceParams& params);
};

// Half-integral-weight Hecke operator T_{k/2,4N}(ell^2) acting on supported
// q-expansions:
//
//   (f | T(ell^2))(n) = a(ell^2 n) + ell^{lambda-1} ((-1)^lambda n / ell) a(n)
//                       + ell^{2lambda-1} a(n / ell^2),
//
// with a(n/ell^2) = 0 when ell^2 does not divide n. Output precision is
// ceil(f.precision / ell^2). Throws BadPrime when ell | 4N.
LaurentSeries apply_T_ell2(const LaurentSeries& f, std::int64_t ell, const SpaceParams& params);

// T(ell^{2n}) by the three-term recursion
// T(ell^{2n}) = T(ell^{2n-2}) T(ell^2) - ell^{k-2} T(ell^{2n-4}), T(ell^0) = id.
LaurentSeries apply_T_ell2n(const LaurentSeries& f, std::int64_t ell, unsigned n,
                            const SpaceParams& params);

// T(t^2) multiplicatively over the factorization of t.
LaurentSeries apply_T_t2(const LaurentSeries& f, const HeckeDescriptor& desc,
                         const SpaceParams& params);

}  // namespace redform

#endif
