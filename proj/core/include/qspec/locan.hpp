#pragma once
// Locally analytic function spaces and the weighted monoid action.
//
// The coordinate model: functions live in A = { Σ a_n T^n : a_n → 0 } with the
// Gauss norm; the acting monoid at level m consists of integral 2×2 matrices
// with unit upper-left entry, v(lower-left) >= m and nonzero determinant. A
// matrix acts on coordinates by T -> (b + dT)/(a + cT) (a right action on
// points, hence a left action on functions) and on functions with the weight
// twist j(γ)^{k-2}, where j(γ)(T) = τ(a)^{-1}(a + cT) is a 1-unit-valued
// cocycle: j(γγ')(T) = j(γ)(T) · j(γ')(γ·T) whenever γ' has level >= 1.
#include "qspec/iwasawa.hpp"
#include "qspec/padic.hpp"
#include "qspec/series.hpp"

namespace qspec {

struct MonoidMatrix {
  PadicScalar a, b, c, d;

  static MonoidMatrix from_ints(std::uint32_t p, int prec, long long a, long long b,
                                long long c, long long d);
  static MonoidMatrix from_scalars(PadicScalar a, PadicScalar b, PadicScalar c, PadicScalar d);
  static MonoidMatrix identity(std::uint32_t p, int prec);

  std::uint32_t prime() const { return a.prime(); }
  int prec() const;
  MonoidMatrix operator*(const MonoidMatrix& o) const;
  PadicScalar det() const { return a * d - b * c; }

  // Largest m <= prec with v(c) >= m.
  int level() const;
  // Integral entries are structural; membership additionally needs a unit
  // upper-left entry, level >= m, and a determinant visible at this precision.
  bool in_monoid(int m) const;
  int det_valuation() const;  // throws PrecisionError when det vanishes at prec

  MonoidMatrix reduced(int new_prec) const;
  std::string str() const;
};

// j(γ)(T) = τ(a)^{-1}(a + cT); requires a unit.
TruncSeries<PadicScalar> cocycle_j(const MonoidMatrix& g, std::size_t len);

// μ_γ(T) = (b + dT)/(a + cT); requires a unit. Satisfies μ_{γγ'} = μ_{γ'} ∘ μ_γ.
TruncSeries<PadicScalar> mobius_series(const MonoidMatrix& g, std::size_t len);

// Weight-k action ρ_k(γ)f = j(γ)^{k-2} · (f ∘ μ_γ) for classical k ∈ Z.
// Exact when f is a genuine polynomial within its stored length; requires
// level >= 1. Multiplicative: ρ_k(γγ') = ρ_k(γ) ρ_k(γ').
TruncSeries<PadicScalar> act_weighted(const MonoidMatrix& g,
                                      const TruncSeries<PadicScalar>& f, long long k);

// Family version: twist j^{-2}·κ(j) with the universal character, acting on
// series over the truncated Iwasawa algebra. Specializing the result at the
// weight-k point recovers act_weighted at weight k.
TruncSeries<IwasawaElement> act_weighted_family(const MonoidMatrix& g,
                                                const TruncSeries<IwasawaElement>& f,
                                                int wtrunc);

// Scalar series promoted coefficientwise to the family coefficient ring.
TruncSeries<IwasawaElement> promote_to_family(const TruncSeries<PadicScalar>& f, int wtrunc);

// Constructive factorization γ = u_left · diag(1, p^t) · u_right with both
// factors unit-determinant elements of the same level and t = v(det γ);
// witnesses that the level-m monoid is generated by its units and diag(1, p).
struct MonoidFactorization {
  MonoidMatrix unit_left;
  int t = 0;
  MonoidMatrix unit_right;
};
MonoidFactorization factor_through_diagonal(const MonoidMatrix& g);

// f(p^t · T): restriction to the t-th smaller disc in the same coordinate.
TruncSeries<PadicScalar> dilate(const TruncSeries<PadicScalar>& f, int t);

}  // namespace qspec
