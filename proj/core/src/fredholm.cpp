#include "qspec/fredholm.hpp"

#include "qspec/iwasawa.hpp"

namespace qspec {

TruncSeries<IwasawaElement> fredholm_series_family(const DenseMat<IwasawaElement>& A,
                                                   int max_terms) {
  if (A.rows != A.cols) throw std::domain_error("fredholm: matrix not square");
  if (A.rows == 0) throw std::domain_error("fredholm: empty matrix has no prototype");
  int dmax = 0;
  for (const auto& x : A.e) dmax = std::max(dmax, x.dpow());
  if (dmax == 0) return fredholm_series(A, max_terms);

  const int W = A.at(0, 0).wtrunc();
  DenseMat<IwasawaElement> S = A;
  for (auto& x : S.e) {
    std::vector<PadicScalar> c;
    c.reserve((std::size_t)W);
    for (int j = 0; j < W; ++j) c.push_back(x.numerator_coeff(j).mul_p_pow(dmax - x.dpow()));
    x = IwasawaElement::from_scalar_coeffs(W, std::move(c), 0);
  }

  auto scaled = fredholm_series(S, max_terms);
  std::vector<IwasawaElement> out;
  out.reserve(scaled.len());
  for (std::size_t i = 0; i < scaled.len(); ++i) {
    std::vector<PadicScalar> c;
    c.reserve((std::size_t)W);
    for (int j = 0; j < W; ++j) c.push_back(scaled.coeff(i).numerator_coeff(j));
    try {
      out.push_back(IwasawaElement::from_scalar_coeffs(W, std::move(c), (int)i * dmax));
    } catch (const PrecisionError&) {
      throw PrecisionError("fredholm: family coefficient " + std::to_string(i) +
                           " has no certified digits; raise working precision by about " +
                           std::to_string((int)i * dmax) + " or truncate with max_terms");
    }
  }
  return TruncSeries<IwasawaElement>::from_coeffs(std::move(out));
}

}  // namespace qspec
