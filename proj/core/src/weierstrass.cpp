#include "qspec/weierstrass.hpp"

#include <algorithm>
#include <string>

namespace qspec {

namespace {

using Poly = std::vector<PadicScalar>;

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, a[0].zero_like());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

// companion matrix with characteristic polynomial f (monic, degree n >= 1)
DenseMat<PadicScalar> companion(const Poly& f) {
  const int n = (int)f.size() - 1;
  DenseMat<PadicScalar> C(f[0].zero_like(), n, n);
  for (int i = 1; i < n; ++i) C.at(i, i - 1) = f[0].one_like();
  for (int i = 0; i < n; ++i) C.at(i, n - 1) = -f[(std::size_t)i];
  return C;
}

}  // namespace

FamilyFactorization weierstrass_factor(const TruncSeries<IwasawaElement>& P, int d,
                                       const std::vector<long long>& check_weights) {
  const int L = (int)P.len() - 1;
  if (L < 1) throw std::domain_error("family factor: series too short");
  if (d < 0 || d > L) throw std::domain_error("family factor: bad degree");
  const IwasawaElement& c0 = P.coeff(0);
  const std::uint32_t p = c0.prime();
  const int W = c0.wtrunc();
  if (!(c0 - c0.one_like()).is_zero_at_prec())
    throw std::domain_error("family factor: constant term is not 1");
  for (std::size_t i = 0; i <= (std::size_t)L; ++i) {
    const auto& ci = P.coeff(i);
    if (ci.prime() != p || ci.wtrunc() != W)
      throw std::domain_error("family factor: mixed coefficient rings");
    if (!ci.is_integral())
      throw std::domain_error(
          "family factor: characteristic series carries denominators; enlarge the "
          "block until the truncation bound clears the weight range");
  }
  const PadicScalar zproto = c0.numerator_coeff(0).zero_like();

  // reversed coefficients per w-order: Pstar[j][t] = w^j-part of c_{L-t}
  std::vector<Poly> Pstar((std::size_t)W, Poly((std::size_t)L + 1, zproto));
  for (int j = 0; j < W; ++j)
    for (int t = 0; t <= L; ++t)
      Pstar[(std::size_t)j][(std::size_t)t] = P.coeff((std::size_t)(L - t)).numerator_coeff(j);

  FamilyFactorization out;
  out.degree = d;
  if (d == 0) {
    out.low.assign(1, c0.one_like());
    out.unit.reserve((std::size_t)L + 1);
    for (int i = 0; i <= L; ++i) out.unit.push_back(P.coeff((std::size_t)i));
    out.certified_prec = c0.prec();
    return out;
  }

  // center fiber and its polygon vertex at d
  TruncSeries<PadicScalar> f0(zproto, (std::size_t)L + 1);
  for (int i = 0; i <= L; ++i) f0.set_coeff((std::size_t)i, Pstar[0][(std::size_t)(L - i)]);
  auto np0 = newton_polygon(f0);
  if (np0.settled_length < d)
    throw PrecisionError("family factor: center polygon not settled to the requested degree");
  if (!np0.breaks_at(d))
    throw std::domain_error("family factor: center polygon has no vertex at degree " +
                            std::to_string(d));
  int seen = 0;
  for (const auto& sm : np0.slopes) {
    seen += sm.second;
    out.cut = sm.first;
    if (seen >= d) break;
  }

  // center factorization through the slope machinery on the companion matrix
  auto S0 = slope_subspace(companion(Pstar[0]), out.cut);
  if (S0.dim != d)
    throw PrecisionError("family factor: center split dimension disagrees with the polygon");
  Poly A0((std::size_t)d + 1, zproto);  // monic reversal of the low factor
  for (int i = 0; i <= d; ++i) A0[(std::size_t)i] = S0.char_series.coeff((std::size_t)(d - i));
  // cofactor by exact division of the monic center polynomial
  Poly B0((std::size_t)(L - d) + 1, zproto);
  {
    Poly rem = Pstar[0];
    for (int t = L - d; t >= 0; --t) {
      const PadicScalar c = rem[(std::size_t)(t + d)];
      B0[(std::size_t)t] = c;
      for (int i = 0; i <= d; ++i)
        rem[(std::size_t)(t + i)] = rem[(std::size_t)(t + i)] - c * A0[(std::size_t)i];
    }
    for (const auto& r : rem)
      if (!r.is_zero_at_prec())
        throw PrecisionError("family factor: center cofactor division has a visible remainder");
  }

  // Sylvester matrix of (A0, B0): column t < L-d is A0*X^t, column L-d+s is
  // B0*X^s; rows are T-degrees 0..L-1.  Every w-order solves this system.
  DenseMat<PadicScalar> Syl(zproto, L, L);
  for (int t = 0; t < L - d; ++t)
    for (int i = 0; i <= d; ++i) Syl.at(t + i, t) = A0[(std::size_t)i];
  for (int s = 0; s < d; ++s)
    for (int i = 0; i <= L - d; ++i)
      if (s + i < L) Syl.at(s + i, L - d + s) = B0[(std::size_t)i];

  std::vector<Poly> A((std::size_t)W, Poly((std::size_t)d + 1, zproto));
  std::vector<Poly> B((std::size_t)W, Poly((std::size_t)(L - d) + 1, zproto));
  A[0] = A0;
  B[0] = B0;
  for (int j = 1; j < W; ++j) {
    Poly e = Pstar[(std::size_t)j];
    for (int i = 1; i < j; ++i) {
      const Poly prod = pmul(A[(std::size_t)i], B[(std::size_t)(j - i)]);
      for (std::size_t t = 0; t < prod.size(); ++t) e[t] = e[t] - prod[t];
    }
    if (!(e[(std::size_t)L].is_zero_at_prec()))
      throw PrecisionError("family factor: order-" + std::to_string(j) +
                           " defect has visible top coefficient");
    std::vector<PadicScalar> rhs(e.begin(), e.begin() + L);
    auto x = solve_integral(Syl, rhs);
    for (int t = 0; t < L - d; ++t) B[(std::size_t)j][(std::size_t)t] = x[(std::size_t)t];
    for (int s = 0; s < d; ++s) A[(std::size_t)j][(std::size_t)s] = x[(std::size_t)(L - d + s)];
  }

  // independent re-verification of P* = A*B at every order
  for (int j = 0; j < W; ++j) {
    Poly acc((std::size_t)L + 1, zproto);
    for (int i = 0; i <= j; ++i) {
      const Poly prod = pmul(A[(std::size_t)i], B[(std::size_t)(j - i)]);
      for (std::size_t t = 0; t < prod.size(); ++t) acc[t] = acc[t] + prod[t];
    }
    for (int t = 0; t <= L; ++t)
      if (!(acc[(std::size_t)t] - Pstar[(std::size_t)j][(std::size_t)t]).is_zero_at_prec())
        throw PrecisionError("family factor: verification failed at order " + std::to_string(j));
  }

  // assemble Q and S as Iwasawa coefficients (reciprocal ordering)
  int cert = zproto.prec();
  auto assemble = [&](const std::vector<Poly>& F, int deg, int i) {
    std::vector<PadicScalar> wc((std::size_t)W, zproto);
    for (int j = 0; j < W; ++j) wc[(std::size_t)j] = F[(std::size_t)j][(std::size_t)(deg - i)];
    auto el = IwasawaElement::from_scalar_coeffs(W, std::move(wc), 0);
    cert = std::min(cert, el.prec());
    return el;
  };
  out.low.reserve((std::size_t)d + 1);
  for (int i = 0; i <= d; ++i) out.low.push_back(assemble(A, d, i));
  out.unit.reserve((std::size_t)(L - d) + 1);
  for (int i = 0; i <= L - d; ++i) out.unit.push_back(assemble(B, L - d, i));
  out.certified_prec = cert;

  // sampled arithmetic fibers must keep the vertex and the cut
  for (long long k : check_weights) {
    const PadicScalar z1 = weight_point_minus_one(p, zproto.prec(), k);
    TruncSeries<PadicScalar> fk(zproto, (std::size_t)L + 1);
    for (int i = 0; i <= L; ++i) fk.set_coeff((std::size_t)i, P.coeff((std::size_t)i).specialize(z1));
    auto npk = newton_polygon(fk);
    if (npk.settled_length < d)
      throw PrecisionError("family factor: fiber at weight " + std::to_string(k) +
                           " is not settled to the requested degree");
    if (!npk.breaks_at(d) || npk.multiplicity_leq(out.cut) != d)
      throw std::domain_error("family factor: vertex not uniform over the disc; offending "
                              "fiber at weight " + std::to_string(k));
  }
  return out;
}

}  // namespace qspec
