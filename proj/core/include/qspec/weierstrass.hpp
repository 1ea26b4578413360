#pragma once
// Finite-flat factorization of a family characteristic series over the
// truncated Iwasawa algebra: P(w,T) = Q(w,T) * S(w,T) with Q of T-degree d
// (the reciprocal of a monic polynomial, Q(w,0) = 1) and S a unit series.
//
// The factorization is grown w-adically from the center fiber w = 0: the
// center polynomial is split at a Newton-polygon vertex of abscissa d by the
// scalar slope machinery, and each w-order is then the unique solution of a
// Sylvester-type linear system whose matrix is built from the center factors.
// Monic factors of a monic integral polynomial over the Iwasawa algebra are
// integral, so the per-order solutions are integral and the minimal-valuation
// solver certifies exactly how many digits the resultant of the center
// factors consumed.  A center fiber without a vertex at d, or a sampled
// arithmetic-weight fiber whose polygon contradicts the cut, is an error.
#include <vector>

#include "qspec/iwasawa.hpp"
#include "qspec/newton.hpp"
#include "qspec/series.hpp"
#include "qspec/slope.hpp"

namespace qspec {

struct FamilyFactorization {
  int degree = 0;
  Rat cut{-1, 1};                    // largest slope collected by the finite factor
  std::vector<IwasawaElement> low;   // Q: degree+1 T-coefficients, low[0] = 1
  std::vector<IwasawaElement> unit;  // S: cofactor T-coefficients, unit[0] = 1
  int certified_prec = 0;
};

// P must have integral coefficients (the family-mode invariant) and a center
// Newton polygon with a vertex at abscissa d.  check_weights lists arithmetic
// weights k whose fibers are verified to keep the vertex: polygon of the
// specialized series must break at d with the low side inside the cut.
FamilyFactorization weierstrass_factor(const TruncSeries<IwasawaElement>& P, int d,
                                       const std::vector<long long>& check_weights = {});

}  // namespace qspec
