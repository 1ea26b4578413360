#pragma once
// Truncated Iwasawa algebra Λ = Z_p[[w]]/(w^W, p^N), the coefficient ring for
// weight families, together with the universal character on 1-units.
//
// Elements are stored as p^{-dpow} · (c_0 + c_1 w + ... + c_{W-1} w^{W-1})
// with integral p-adic coefficients. The small denominator power is forced on
// us: the w-expansion of the universal character applied to a series in T has
// bounded but genuinely negative valuations in the monomial basis (first at
// w^p · T^1). Denominators are normalized away whenever possible.
#include <cstdint>
#include <vector>

#include "qspec/padic.hpp"
#include "qspec/series.hpp"

namespace qspec {

class IwasawaElement {
 public:
  IwasawaElement() = default;  // invalid sentinel

  static IwasawaElement zero(std::uint32_t p, int prec, int wtrunc);
  static IwasawaElement one(std::uint32_t p, int prec, int wtrunc);
  static IwasawaElement from_scalar(const PadicScalar& c, int wtrunc);
  // Integral coefficients of w^0, w^1, ...; short vectors are zero-padded.
  static IwasawaElement from_coeffs(std::uint32_t p, int prec, int wtrunc,
                                    const std::vector<long long>& c);
  static IwasawaElement from_scalar_coeffs(int wtrunc, std::vector<PadicScalar> c,
                                           int dpow = 0);

  bool valid() const { return p_ != 0; }
  std::uint32_t prime() const { return p_; }
  int wtrunc() const { return wtrunc_; }
  int dpow() const { return dpow_; }
  // Certified absolute precision of the represented value (numerator precision
  // minus the denominator exponent).
  int prec() const;

  // Coefficient of w^j of the represented value; throws std::domain_error when
  // that coefficient is not p-integral.
  PadicScalar coeff(int j) const;
  const PadicScalar& numerator_coeff(int j) const { return c_.at((std::size_t)j); }
  bool is_integral() const { return dpow_ == 0; }
  // p-adic valuation: min over w-coefficients of v_p(numerator) - dpow;
  // exact=false when nothing is visible at working precision (floor only)
  PadicScalar::Val valuation() const;
  // valuation uniform over the closed weight disc v(w) >= wweight: min over
  // coefficients of v_p(numerator) + j·wweight, minus dpow. This is the
  // right notion for decay of family operators: p-adic smallness may be
  // carried by w-powers, invisible to the plain coefficient valuation.
  PadicScalar::Val gauss_valuation(int wweight = 1) const;

  bool is_zero_at_prec() const;
  // Smallest j with a nonzero w^j coefficient at stored precision; wtrunc when
  // the element is apparently zero.
  int w_order() const;

  IwasawaElement zero_like() const { return zero(p_, nprec_, wtrunc_); }
  IwasawaElement one_like() const { return one(p_, nprec_, wtrunc_); }
  IwasawaElement from_int_like(long long v) const;

  IwasawaElement operator+(const IwasawaElement& o) const;
  IwasawaElement operator-(const IwasawaElement& o) const;
  IwasawaElement operator-() const;
  IwasawaElement operator*(const IwasawaElement& o) const;
  IwasawaElement scale(const PadicScalar& s) const;

  // Unit = integral with unit constant coefficient; inverse by the w-adic
  // recurrence.
  bool is_unit() const;
  IwasawaElement inverse() const;

  IwasawaElement reduced(int new_prec) const;
  IwasawaElement truncated_w(int new_wtrunc) const;

  // Substitute w -> z1 with v(z1) >= 1 (the weight disc restriction). The
  // discarded w^W tail caps the certified output precision; by default it is
  // assumed p-integral (contributing valuation >= W·v(z1)). When the
  // represented value is a truncation of something with denominators in its
  // tail, the caller must pass its own tail valuation bound.
  PadicScalar specialize(const PadicScalar& z1, int tail_valuation = -1) const;

  bool same_mod_min_prec(const IwasawaElement& o) const;

  std::string str() const;

 private:
  std::uint32_t p_ = 0;
  int nprec_ = 0;  // uniform storage precision of the numerator coefficients
  int wtrunc_ = 0;
  int dpow_ = 0;
  std::vector<PadicScalar> c_;

  void normalize();
  static IwasawaElement make(std::uint32_t p, int nprec, int wtrunc, int dpow,
                             std::vector<PadicScalar> c);
};

// (1+w)^e = Σ_n C(e,n) w^n in Λ; integral for e ∈ Z_p.
IwasawaElement one_plus_w_power(int wtrunc, const PadicScalar& e);

// Universal weight character κ on 1-units: κ(u) = (1+w)^{log u / log(1+p)},
// normalized by κ(1+p) = 1+w. Certified precision is one digit below the
// input's (the division by log(1+p)).
IwasawaElement universal_character(const PadicScalar& one_unit, int wtrunc);

// κ applied to a series U(T) with 1-unit constant term and all higher
// coefficients of valuation >= 1. Output coefficients may carry bounded
// denominators (see IwasawaElement).
TruncSeries<IwasawaElement> universal_character_of_series(
    const TruncSeries<PadicScalar>& U, int wtrunc);

// z_k - 1 = (1+p)^k - 1, the weight-disc point where κ specializes to u -> u^k.
PadicScalar weight_point_minus_one(std::uint32_t p, int prec, long long k);

// Tail valuation bound min_{n >= W} (n·vz - v_p(n!)) for specializing
// truncations of universal-character values, whose dropped w^n coefficients
// can carry denominators up to v_p(n!).
int character_tail_valuation(std::uint32_t p, int wtrunc, int vz);

}  // namespace qspec
