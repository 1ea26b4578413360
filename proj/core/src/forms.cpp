#include "qspec/forms.hpp"

#include <stdexcept>

namespace qspec {

ClassFunction<PadicScalar> zero_function(std::uint32_t p, int prec, int classes,
                                         std::size_t len) {
  return ClassFunction<PadicScalar>((std::size_t)classes,
                                    TruncSeries<PadicScalar>(PadicScalar::zero(p, prec), len));
}

ClassFunction<IwasawaElement> zero_function_family(std::uint32_t p, int prec, int wtrunc,
                                                   int classes, std::size_t len) {
  return ClassFunction<IwasawaElement>(
      (std::size_t)classes,
      TruncSeries<IwasawaElement>(IwasawaElement::zero(p, prec, wtrunc), len));
}

ClassFunction<PadicScalar> apply_operator(const BranchTable& T,
                                          const ClassFunction<PadicScalar>& f, long long k) {
  if ((int)f.size() != T.sources()) throw std::domain_error("forms: class count mismatch");
  ClassFunction<PadicScalar> out;
  out.reserve(f.size());
  for (int a = 0; a < T.sources(); ++a) {
    TruncSeries<PadicScalar> acc(f[0].proto(), f[0].len());
    for (const auto& br : T.branches_from(a))
      acc = acc + act_weighted(br.gamma, f[(std::size_t)br.target], k);
    out.push_back(std::move(acc));
  }
  return out;
}

ClassFunction<IwasawaElement> apply_operator_family(const BranchTable& T,
                                                    const ClassFunction<IwasawaElement>& f,
                                                    int wtrunc) {
  if ((int)f.size() != T.sources()) throw std::domain_error("forms: class count mismatch");
  ClassFunction<IwasawaElement> out;
  out.reserve(f.size());
  for (int a = 0; a < T.sources(); ++a) {
    TruncSeries<IwasawaElement> acc(f[0].proto(), f[0].len());
    for (const auto& br : T.branches_from(a))
      acc = acc + act_weighted_family(br.gamma, f[(std::size_t)br.target], wtrunc);
    out.push_back(std::move(acc));
  }
  return out;
}

DenseMat<PadicScalar> operator_matrix(const BranchTable& T, long long k, int B) {
  const int h = T.sources();
  const PadicScalar proto = T.branches_from(0)[0].gamma.a.zero_like();
  DenseMat<PadicScalar> A(proto, h * B, h * B);
  for (int src = 0; src < h; ++src) {
    for (const auto& br : T.branches_from(src)) {
      auto mu = mobius_series(br.gamma, (std::size_t)B);
      auto img = cocycle_j(br.gamma, (std::size_t)B).pow_int(k - 2);
      for (int m = 0; m < B; ++m) {
        if (m > 0) img = img * mu;  // img = j^{k-2} · mu^m
        const int row = br.target * B + m;
        for (int c = 0; c < B; ++c)
          A.at(row, src * B + c) = A.at(row, src * B + c) + img.coeff((std::size_t)c);
      }
    }
  }
  return A;
}

DenseMat<IwasawaElement> operator_matrix_family(const BranchTable& T, int wtrunc, int B) {
  const int h = T.sources();
  const PadicScalar sc = T.branches_from(0)[0].gamma.a;
  const IwasawaElement proto = IwasawaElement::zero(sc.prime(), sc.prec(), wtrunc);
  DenseMat<IwasawaElement> A(proto, h * B, h * B);
  for (int src = 0; src < h; ++src) {
    for (const auto& br : T.branches_from(src)) {
      auto mu = promote_to_family(mobius_series(br.gamma, (std::size_t)B), wtrunc);
      auto j = cocycle_j(br.gamma, (std::size_t)B);
      // the universal weight twist: κ(j)·j⁻², one character-type factor
      auto img = universal_character_of_series(j, wtrunc) *
                 promote_to_family(j.pow_int(-2), wtrunc);
      for (int m = 0; m < B; ++m) {
        if (m > 0) img = img * mu;
        const int row = br.target * B + m;
        for (int c = 0; c < B; ++c)
          A.at(row, src * B + c) = A.at(row, src * B + c) + img.coeff((std::size_t)c);
      }
    }
  }
  return A;
}

namespace {

template <class R, class ValFn>
DecayCertificate certify_impl(const DenseMat<R>& A, int B, int defect, ValFn&& val) {
  if (A.cols % B != 0) throw std::domain_error("forms: matrix width is not a block multiple");
  DecayCertificate cert;
  cert.defect = defect;
  cert.column_excess.assign((std::size_t)B, 0);
  for (int c = 0; c < B; ++c) {
    int best = 0;
    bool seen = false;
    for (int j = c; j < A.cols; j += B)
      for (int i = 0; i < A.rows; ++i) {
        int v = val(A.at(i, j));
        int excess = v - c;
        if (!seen || excess < best) best = excess, seen = true;
      }
    cert.column_excess[(std::size_t)c] = best;
  }
  cert.certified = true;
  for (int c = 0; c < B; ++c)
    if (cert.column_excess[(std::size_t)c] < -defect) cert.certified = false;
  return cert;
}

}  // namespace

DecayCertificate certify_decay(const DenseMat<PadicScalar>& A, int B, int defect) {
  return certify_impl(A, B, defect, [](const PadicScalar& x) { return x.valuation().v; });
}

DecayCertificate certify_decay_family(const DenseMat<IwasawaElement>& A, int B, int defect) {
  // decay must be uniform over the weight disc v(w) >= 1, where the family
  // lives; w-powers carry part of the p-adic smallness
  return certify_impl(A, B, defect,
                      [](const IwasawaElement& x) { return x.gauss_valuation(1).v; });
}

ClassFunction<PadicScalar> theta_down(const ClassFunction<PadicScalar>& f, long long k) {
  if (k < 2) throw std::domain_error("forms: theta needs weight at least 2");
  ClassFunction<PadicScalar> out;
  out.reserve(f.size());
  for (const auto& comp : f) {
    if (comp.len() < (std::size_t)(k - 1))
      throw std::domain_error("forms: series too short for theta");
    TruncSeries<PadicScalar> g = comp;
    for (long long i = 0; i < k - 1; ++i) g = g.derivative();
    out.push_back(g.truncated(comp.len() - (std::size_t)(k - 1)));
  }
  return out;
}

}  // namespace qspec
