#pragma once
// Coefficient-valued functions on the class set and the Hecke action on them.
// A form is one disc-function (truncated T-series) per class; operators act
// through branch tables, branch by branch, with the weight twist applied at
// the acting prime. The finite matrices extracted here are the honest
// corners of the infinite operator matrix in the monomial basis e_{(a,m)} =
// T^m concentrated at class a: the image of a basis element needs no input
// tail, so every stored entry is exact at working precision.
#include <cstdint>
#include <vector>

#include "qspec/branches.hpp"
#include "qspec/iwasawa.hpp"
#include "qspec/locan.hpp"
#include "qspec/matrix.hpp"
#include "qspec/series.hpp"

namespace qspec {

template <class R>
using ClassFunction = std::vector<TruncSeries<R>>;

ClassFunction<PadicScalar> zero_function(std::uint32_t p, int prec, int classes,
                                         std::size_t len);
ClassFunction<IwasawaElement> zero_function_family(std::uint32_t p, int prec, int wtrunc,
                                                   int classes, std::size_t len);

// (T f)_a = Σ_{branches a→b} ρ_k(γ) f_b. Faithful modulo T^len when every
// component of f is a genuine polynomial of degree < len; for truncated
// approximations the dropped tail is the caller's burden.
ClassFunction<PadicScalar> apply_operator(const BranchTable& T,
                                          const ClassFunction<PadicScalar>& f, long long k);
ClassFunction<IwasawaElement> apply_operator_family(const BranchTable& T,
                                                    const ClassFunction<IwasawaElement>& f,
                                                    int wtrunc);

// matrix on the span of e_{(a,m)}, 0 <= m < B, flat index a·B + m;
// entry(r, b·B + c) = coefficient of T^c at class b in the image of e_r
// (row = input basis element, column = output functional)
DenseMat<PadicScalar> operator_matrix(const BranchTable& T, long long k, int B);
DenseMat<IwasawaElement> operator_matrix_family(const BranchTable& T, int wtrunc, int B);

// Output-degree decay: column with output degree c should have p-adic
// valuation at least c - defect everywhere (defect 0 for a fixed weight;
// the family allows the bounded denominator defect of the universal twist).
// Valuations of entries invisible at working precision enter as the
// precision floor, which only strengthens the certificate's honesty.
struct DecayCertificate {
  bool certified = false;
  int defect = 0;
  std::vector<int> column_excess;  // per output degree: min of v(entry) - c
};
DecayCertificate certify_decay(const DenseMat<PadicScalar>& A, int B, int defect = 0);
DecayCertificate certify_decay_family(const DenseMat<IwasawaElement>& A, int B, int defect);

// (d/dT)^{k-1} componentwise: weight k -> weight 2-k. Kernel = polynomial
// functions of degree <= k-2. Output is truncated by k-1 terms because the
// top derivatives depend on unknown input coefficients.
ClassFunction<PadicScalar> theta_down(const ClassFunction<PadicScalar>& f, long long k);

}  // namespace qspec
