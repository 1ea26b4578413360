#pragma once
// Slope subspaces of a p-adic matrix: the maximal invariant subspace whose
// eigenvalue valuations are <= alpha, peeled from the bottom of the Newton
// polygon one slope block at a time.
//
// Each block is reached through three precision-aware steps:
//   1. the slope-s block of A (s = a/b) is the unit-root block of A^b scaled
//      by p^-a, so its characteristic data sits at integer slope a of A^b;
//   2. the unit-root factor of the scaled characteristic polynomial is lifted
//      by quadratic Hensel iteration whose divisions are all by units;
//   3. the block itself is the kernel of the lifted factor evaluated on the
//      scaled operator, extracted by minimal-valuation pivoting so the loss
//      is bounded by the largest elementary divisor (about a*m digits), not
//      by their product.
// Precision losses are real and tracked by the scalar layer; when digits run
// out the routines throw PrecisionError rather than return a guess.
#include <utility>
#include <vector>

#include "qspec/fredholm.hpp"
#include "qspec/matrix.hpp"
#include "qspec/newton.hpp"
#include "qspec/padic.hpp"
#include "qspec/series.hpp"

namespace qspec {

// Column-reduce Y in place to a saturated echelon basis of its span: every
// column gets entry exactly 1 at its pivot row and 0 at the other pivot
// rows, so the columns are a basis of the saturation of the original span.
// Pivots are chosen by global minimal valuation, keeping eliminations
// integral.  Returns the pivot row of each column; throws PrecisionError if
// the columns are dependent at working precision.
std::vector<int> saturated_echelon(DenseMat<PadicScalar>& Y);

// f monic (coefficients low -> high, leading coefficient exactly 1) whose
// reduction mod p is (degree-m polynomial with unit constant term) * X^(n-m).
// Returns the lifted monic degree-m factor carrying the unit-valuation roots.
std::vector<PadicScalar> hensel_unit_factor(const std::vector<PadicScalar>& f, int m);

// Saturated basis of Ker(M) for square M of known kernel dimension.
DenseMat<PadicScalar> padic_kernel(const DenseMat<PadicScalar>& M, int expected_dim);

// Exact inverse of a matrix whose reduction mod p is invertible (Gauss with
// unit pivots only; loss-free).
DenseMat<PadicScalar> invert_unit_matrix(const DenseMat<PadicScalar>& P);

struct SlopeSubspace {
  int dim = 0;
  std::vector<std::pair<Rat, int>> slopes;  // slopes cut, ascending, with multiplicities
  DenseMat<PadicScalar> basis;              // n x dim columns, saturated
  DenseMat<PadicScalar> restriction;        // dim x dim with A*basis = basis*restriction,
                                            // block upper triangular along the slope blocks
  TruncSeries<PadicScalar> char_series;     // det(1 - T*restriction)
  int certified_prec = 0;  // the invariance residual vanishes to this precision
};

SlopeSubspace slope_subspace(const DenseMat<PadicScalar>& A, const Rat& alpha);

// Solve M x = rhs for square M by Gauss elimination with global
// minimal-valuation pivoting.  Sound whenever the true solution is integral
// (the use cases guarantee this structurally); the precision spent is the sum
// of pivot valuations actually divided by, never more than v(det M).
std::vector<PadicScalar> solve_integral(const DenseMat<PadicScalar>& M,
                                        const std::vector<PadicScalar>& rhs);

// The slope-<=alpha subspace together with the restricted commuting
// operators: the finite Hecke module carried by the slope cut.  The basis is
// put in saturated echelon form so that restrictions are read off at the
// pivot rows without any division; an operator that fails to preserve the
// subspace at working precision is a hard error.
struct FiniteHeckeModule {
  int dim = 0;
  std::vector<std::pair<Rat, int>> slopes;
  DenseMat<PadicScalar> basis;               // echelonized, unit pivots
  std::vector<int> pivot_rows;
  DenseMat<PadicScalar> u_matrix;            // compact operator restricted
  TruncSeries<PadicScalar> u_char;           // det(1 - T*u_matrix)
  std::vector<DenseMat<PadicScalar>> hecke;  // restrictions, caller's order
  int certified_prec = 0;
};

FiniteHeckeModule finite_hecke_module(const DenseMat<PadicScalar>& U,
                                      const std::vector<DenseMat<PadicScalar>>& hecke,
                                      const Rat& alpha);

}  // namespace qspec
