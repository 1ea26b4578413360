#include "qspec/locan.hpp"

#include <sstream>

namespace qspec {

MonoidMatrix MonoidMatrix::from_ints(std::uint32_t p, int prec, long long a, long long b,
                                     long long c, long long d) {
  return {PadicScalar::from_int(p, prec, a), PadicScalar::from_int(p, prec, b),
          PadicScalar::from_int(p, prec, c), PadicScalar::from_int(p, prec, d)};
}

MonoidMatrix MonoidMatrix::from_scalars(PadicScalar a, PadicScalar b, PadicScalar c,
                                        PadicScalar d) {
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

MonoidMatrix MonoidMatrix::identity(std::uint32_t p, int prec) {
  return from_ints(p, prec, 1, 0, 0, 1);
}

int MonoidMatrix::prec() const {
  return std::min(std::min(a.prec(), b.prec()), std::min(c.prec(), d.prec()));
}

MonoidMatrix MonoidMatrix::operator*(const MonoidMatrix& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

int MonoidMatrix::level() const {
  auto v = c.valuation();
  return v.exact ? v.v : c.prec();
}

bool MonoidMatrix::in_monoid(int m) const {
  return a.is_unit() && level() >= m && !det().is_zero_at_prec();
}

int MonoidMatrix::det_valuation() const {
  auto v = det().valuation();
  if (!v.exact) throw PrecisionError("determinant vanishes at working precision");
  return v.v;
}

MonoidMatrix MonoidMatrix::reduced(int new_prec) const {
  return {a.reduced(new_prec), b.reduced(new_prec), c.reduced(new_prec), d.reduced(new_prec)};
}

std::string MonoidMatrix::str() const {
  std::ostringstream os;
  os << "[" << a.str() << ", " << b.str() << "; " << c.str() << ", " << d.str() << "]";
  return os.str();
}

TruncSeries<PadicScalar> cocycle_j(const MonoidMatrix& g, std::size_t len) {
  if (!g.a.is_unit()) throw std::domain_error("cocycle needs unit upper-left entry");
  PadicScalar tinv = teichmuller(g.a).inverse();
  TruncSeries<PadicScalar> j(g.a.zero_like(), len);
  j.set_coeff(0, tinv * g.a);
  if (len > 1) j.set_coeff(1, tinv * g.c);
  return j;
}

TruncSeries<PadicScalar> mobius_series(const MonoidMatrix& g, std::size_t len) {
  if (!g.a.is_unit()) throw std::domain_error("Möbius series needs unit upper-left entry");
  TruncSeries<PadicScalar> num(g.a.zero_like(), len);
  num.set_coeff(0, g.b);
  if (len > 1) num.set_coeff(1, g.d);
  TruncSeries<PadicScalar> den(g.a.zero_like(), len);
  den.set_coeff(0, g.a);
  if (len > 1) den.set_coeff(1, g.c);
  return num * den.inverse();
}

TruncSeries<PadicScalar> act_weighted(const MonoidMatrix& g,
                                      const TruncSeries<PadicScalar>& f, long long k) {
  if (!g.in_monoid(1)) throw std::domain_error("action needs a level-1 monoid element");
  const std::size_t len = f.len();
  auto mu = mobius_series(g, len);
  auto fm = f.compose(mu);
  auto j = cocycle_j(g, len);
  return fm * j.pow_int(k - 2);
}

TruncSeries<IwasawaElement> promote_to_family(const TruncSeries<PadicScalar>& f, int wtrunc) {
  IwasawaElement proto = IwasawaElement::zero(f.coeff(0).prime(), f.coeff(0).prec(), wtrunc);
  TruncSeries<IwasawaElement> out(proto, f.len());
  for (std::size_t i = 0; i < f.len(); ++i)
    out.set_coeff(i, IwasawaElement::from_scalar(f.coeff(i), wtrunc));
  return out;
}

TruncSeries<IwasawaElement> act_weighted_family(const MonoidMatrix& g,
                                                const TruncSeries<IwasawaElement>& f,
                                                int wtrunc) {
  if (!g.in_monoid(1)) throw std::domain_error("action needs a level-1 monoid element");
  const std::size_t len = f.len();
  auto mu = promote_to_family(mobius_series(g, len), wtrunc);
  auto fm = f.compose(mu);
  auto j = cocycle_j(g, len);
  auto twist = universal_character_of_series(j, wtrunc) * promote_to_family(j.pow_int(-2), wtrunc);
  return fm * twist;
}

MonoidFactorization factor_through_diagonal(const MonoidMatrix& g) {
  if (!g.a.is_unit()) throw std::domain_error("factorization needs unit upper-left entry");
  const int t = g.det_valuation();
  const std::uint32_t p = g.prime();
  // x = -b/a mod p^t kills the upper-right entry mod p^t; the determinant
  // then forces the lower-right one too.
  PadicScalar x = -(g.b * g.a.inverse());
  PadicScalar bp = (g.a * x + g.b).div_exact_p_pow(t);
  PadicScalar dp = (g.c * x + g.d).div_exact_p_pow(t);
  MonoidFactorization out;
  out.t = t;
  out.unit_left = MonoidMatrix::from_scalars(g.a, bp, g.c, dp);
  PadicScalar one = PadicScalar::one(p, x.prec());
  out.unit_right = MonoidMatrix::from_scalars(one, -x, one.zero_like(), one);
  return out;
}

TruncSeries<PadicScalar> dilate(const TruncSeries<PadicScalar>& f, int t) {
  TruncSeries<PadicScalar> out(f.proto(), f.len());
  for (std::size_t n = 0; n < f.len(); ++n)
    out.set_coeff(n, f.coeff(n).mul_p_pow(t * (int)n));
  return out;
}

}  // namespace qspec
