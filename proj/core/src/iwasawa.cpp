#include "qspec/iwasawa.hpp"

#include <algorithm>
#include <sstream>

namespace qspec {

namespace {

void require_valid(const IwasawaElement& a) {
  if (!a.valid()) throw std::invalid_argument("invalid Iwasawa element");
}

}  // namespace

IwasawaElement IwasawaElement::make(std::uint32_t p, int nprec, int wtrunc, int dpow,
                                    std::vector<PadicScalar> c) {
  if (wtrunc < 1) throw std::invalid_argument("wtrunc must be >= 1");
  if (dpow < 0) throw std::invalid_argument("negative denominator exponent");
  IwasawaElement e;
  e.p_ = p;
  e.nprec_ = nprec;
  e.wtrunc_ = wtrunc;
  e.dpow_ = dpow;
  e.c_ = std::move(c);
  e.c_.resize((std::size_t)wtrunc, PadicScalar::zero(p, nprec));
  // uniformize numerator precision to the weakest coefficient
  for (const auto& x : e.c_) e.nprec_ = std::min(e.nprec_, x.prec());
  if (e.nprec_ <= e.dpow_) throw PrecisionError("Iwasawa element has no certified digits");
  for (auto& x : e.c_) x = x.reduced(e.nprec_);
  e.normalize();
  return e;
}

void IwasawaElement::normalize() {
  while (dpow_ > 0) {
    bool all_div = true;
    for (const auto& x : c_) {
      auto val = x.valuation();
      if (val.exact && val.v == 0) {
        all_div = false;
        break;
      }
    }
    if (!all_div) break;
    for (auto& x : c_) x = x.div_exact_p_pow(1);
    --dpow_;
    --nprec_;
  }
}

IwasawaElement IwasawaElement::zero(std::uint32_t p, int prec, int wtrunc) {
  return make(p, prec, wtrunc, 0, std::vector<PadicScalar>((std::size_t)wtrunc, PadicScalar::zero(p, prec)));
}

IwasawaElement IwasawaElement::one(std::uint32_t p, int prec, int wtrunc) {
  auto e = zero(p, prec, wtrunc);
  e.c_[0] = PadicScalar::one(p, prec);
  return e;
}

IwasawaElement IwasawaElement::from_scalar(const PadicScalar& c, int wtrunc) {
  auto e = zero(c.prime(), c.prec(), wtrunc);
  e.c_[0] = c;
  return e;
}

IwasawaElement IwasawaElement::from_coeffs(std::uint32_t p, int prec, int wtrunc,
                                           const std::vector<long long>& c) {
  std::vector<PadicScalar> v;
  v.reserve(c.size());
  for (long long x : c) v.push_back(PadicScalar::from_int(p, prec, x));
  return make(p, prec, wtrunc, 0, std::move(v));
}

IwasawaElement IwasawaElement::from_scalar_coeffs(int wtrunc, std::vector<PadicScalar> c,
                                                  int dpow) {
  if (c.empty()) throw std::invalid_argument("empty coefficient list");
  const std::uint32_t p = c[0].prime();
  const int prec = c[0].prec();
  return make(p, prec, wtrunc, dpow, std::move(c));
}

int IwasawaElement::prec() const { return nprec_ - dpow_; }

PadicScalar IwasawaElement::coeff(int j) const {
  const PadicScalar& x = c_.at((std::size_t)j);
  if (dpow_ == 0) return x;
  auto val = x.valuation();
  if (val.exact && val.v < dpow_) throw std::domain_error("non-integral Iwasawa coefficient");
  return x.div_exact_p_pow(dpow_);
}

bool IwasawaElement::is_zero_at_prec() const {
  for (const auto& x : c_)
    if (!x.is_zero_at_prec()) return false;
  return true;
}

int IwasawaElement::w_order() const {
  for (int j = 0; j < wtrunc_; ++j)
    if (!c_[(std::size_t)j].is_zero_at_prec()) return j;
  return wtrunc_;
}

IwasawaElement IwasawaElement::from_int_like(long long v) const {
  auto e = zero(p_, nprec_ - dpow_, wtrunc_);
  e.c_[0] = PadicScalar::from_int(p_, nprec_ - dpow_, v);
  return e;
}

IwasawaElement IwasawaElement::operator+(const IwasawaElement& o) const {
  require_valid(*this);
  require_valid(o);
  int d = std::max(dpow_, o.dpow_);
  int wt = std::min(wtrunc_, o.wtrunc_);
  std::vector<PadicScalar> v((std::size_t)wt, PadicScalar::zero(p_, 1));
  for (int j = 0; j < wt; ++j) {
    PadicScalar a = c_[(std::size_t)j].mul_p_pow(d - dpow_);
    PadicScalar b = o.c_[(std::size_t)j].mul_p_pow(d - o.dpow_);
    v[(std::size_t)j] = a + b;
  }
  return make(p_, std::min(nprec_ + (d - dpow_), o.nprec_ + (d - o.dpow_)), wt, d, std::move(v));
}

IwasawaElement IwasawaElement::operator-(const IwasawaElement& o) const { return *this + (-o); }

IwasawaElement IwasawaElement::operator-() const {
  IwasawaElement e = *this;
  for (auto& x : e.c_) x = -x;
  return e;
}

IwasawaElement IwasawaElement::operator*(const IwasawaElement& o) const {
  require_valid(*this);
  require_valid(o);
  int wt = std::min(wtrunc_, o.wtrunc_);
  std::vector<PadicScalar> v;
  v.reserve((std::size_t)wt);
  for (int k = 0; k < wt; ++k) {
    PadicScalar acc = PadicScalar::zero(p_, std::min(nprec_, o.nprec_));
    for (int i = 0; i <= k; ++i) acc += c_[(std::size_t)i] * o.c_[(std::size_t)(k - i)];
    v.push_back(acc);
  }
  return make(p_, std::min(nprec_, o.nprec_), wt, dpow_ + o.dpow_, std::move(v));
}

IwasawaElement IwasawaElement::scale(const PadicScalar& s) const {
  std::vector<PadicScalar> v = c_;
  for (auto& x : v) x = x * s;
  return make(p_, std::min(nprec_, s.prec()), wtrunc_, dpow_, std::move(v));
}

bool IwasawaElement::is_unit() const {
  return valid() && dpow_ == 0 && c_[0].is_unit();
}

IwasawaElement IwasawaElement::inverse() const {
  if (!is_unit()) throw std::domain_error("Iwasawa inverse needs an integral unit");
  std::vector<PadicScalar> v((std::size_t)wtrunc_, PadicScalar::zero(p_, nprec_));
  PadicScalar inv0 = c_[0].inverse();
  v[0] = inv0;
  for (int k = 1; k < wtrunc_; ++k) {
    PadicScalar acc = PadicScalar::zero(p_, nprec_);
    for (int i = 1; i <= k; ++i) acc += c_[(std::size_t)i] * v[(std::size_t)(k - i)];
    v[(std::size_t)k] = -(inv0 * acc);
  }
  return make(p_, nprec_, wtrunc_, 0, std::move(v));
}

PadicScalar::Val IwasawaElement::valuation() const { return gauss_valuation(0); }

PadicScalar::Val IwasawaElement::gauss_valuation(int wweight) const {
  // censored coefficients enter at their precision floor, which keeps the
  // result a valid lower bound; exactness survives only when the minimum is
  // realized by a visible coefficient
  int best = 0;
  bool best_exact = false;
  bool seen = false;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    auto v = c_[j].valuation();
    int vj = (v.exact ? v.v : c_[j].prec()) + wweight * (int)j;
    if (!seen || vj < best) best = vj, best_exact = v.exact, seen = true;
  }
  if (!seen) return {nprec_ - dpow_, false};
  return {best - dpow_, best_exact};
}

IwasawaElement IwasawaElement::reduced(int new_prec) const {
  if (new_prec >= prec()) return *this;
  std::vector<PadicScalar> v = c_;
  for (auto& x : v) x = x.reduced(new_prec + dpow_);
  return make(p_, new_prec + dpow_, wtrunc_, dpow_, std::move(v));
}

IwasawaElement IwasawaElement::truncated_w(int new_wtrunc) const {
  if (new_wtrunc >= wtrunc_) return *this;
  std::vector<PadicScalar> v(c_.begin(), c_.begin() + new_wtrunc);
  return make(p_, nprec_, new_wtrunc, dpow_, std::move(v));
}

PadicScalar IwasawaElement::specialize(const PadicScalar& z1, int tail_valuation) const {
  require_valid(*this);
  auto val = z1.valuation();
  if (val.exact && val.v < 1) throw std::domain_error("specialization point must satisfy v(z-1) >= 1");
  int vz = val.exact ? val.v : z1.prec();
  if (tail_valuation < 0) tail_valuation = wtrunc_ * vz;
  PadicScalar acc = c_[(std::size_t)(wtrunc_ - 1)];
  for (int j = wtrunc_ - 1; j-- > 0;) acc = acc * z1 + c_[(std::size_t)j];
  int out_prec = std::min(acc.prec() - dpow_, tail_valuation);
  if (out_prec <= 0) throw PrecisionError("specialization below certified precision");
  if (dpow_ > 0) {
    auto av = acc.valuation();
    if (av.exact && av.v < dpow_) throw std::domain_error("non-integral specialization");
    acc = acc.div_exact_p_pow(dpow_);
  }
  return acc.reduced(out_prec);
}

bool IwasawaElement::same_mod_min_prec(const IwasawaElement& o) const {
  require_valid(*this);
  require_valid(o);
  if (p_ != o.p_) return false;
  int wt = std::min(wtrunc_, o.wtrunc_);
  int d = std::max(dpow_, o.dpow_);
  for (int j = 0; j < wt; ++j) {
    PadicScalar a = c_[(std::size_t)j].mul_p_pow(d - dpow_);
    PadicScalar b = o.c_[(std::size_t)j].mul_p_pow(d - o.dpow_);
    if (!a.same_mod_min_prec(b)) return false;
  }
  return true;
}

std::string IwasawaElement::str() const {
  std::ostringstream os;
  if (dpow_ > 0) os << prime() << "^-" << dpow_ << " * ";
  os << "[";
  for (int j = 0; j < wtrunc_; ++j) {
    if (j) os << ", ";
    os << to_decimal(c_[(std::size_t)j].residue());
  }
  os << "] mod (" << prime() << "^" << nprec_ << ", w^" << wtrunc_ << ")";
  return os.str();
}

IwasawaElement one_plus_w_power(int wtrunc, const PadicScalar& e) {
  std::vector<PadicScalar> v;
  v.reserve((std::size_t)wtrunc);
  for (int n = 0; n < wtrunc; ++n) v.push_back(padic_binomial(e, (unsigned)n));
  return IwasawaElement::from_scalar_coeffs(wtrunc, std::move(v));
}

IwasawaElement universal_character(const PadicScalar& one_unit, int wtrunc) {
  const std::uint32_t p = one_unit.prime();
  PadicScalar lu = log_one_unit(one_unit);
  PadicScalar lp = log_one_unit(PadicScalar::from_int(p, one_unit.prec(), 1 + (long long)p));
  PadicScalar e = lu.divide_by(lp);
  return one_plus_w_power(wtrunc, e);
}

namespace {

// log(1+x) for a series x with zero constant term and coefficients of
// valuation >= 1; all resulting coefficients are integral.
TruncSeries<PadicScalar> series_log1p(const TruncSeries<PadicScalar>& x) {
  const std::size_t n = x.len();
  TruncSeries<PadicScalar> acc(x.proto(), n);
  TruncSeries<PadicScalar> xp = x;
  for (std::size_t k = 1; k < n; ++k) {
    PadicScalar kk = x.proto().from_int_like((long long)k);
    TruncSeries<PadicScalar> term(x.proto(), n);
    for (std::size_t j = k; j < n; ++j) term.set_coeff(j, xp.coeff(j).divide_by(kk));
    acc = (k % 2 == 1) ? acc + term : acc - term;
    if (k + 1 < n) xp = xp * x;
  }
  return acc;
}

}  // namespace

TruncSeries<IwasawaElement> universal_character_of_series(
    const TruncSeries<PadicScalar>& U, int wtrunc) {
  const PadicScalar& u0 = U.coeff(0);
  const std::uint32_t p = u0.prime();
  if (!u0.is_unit()) throw std::domain_error("character needs a unit constant term");
  auto v0 = (u0 - u0.one_like()).valuation();
  if (v0.exact && v0.v < 1) throw std::domain_error("character needs a 1-unit constant term");
  const std::size_t len = U.len();
  // x = U/u0 - 1, coefficients must have valuation >= 1
  TruncSeries<PadicScalar> x = U.scale(u0.inverse());
  x.set_coeff(0, x.coeff(0) - u0.one_like());
  for (std::size_t j = 0; j < len; ++j) {
    auto vj = x.coeff(j).valuation();
    if (vj.exact && vj.v < 1) throw std::domain_error("character needs congruence to a constant mod p");
  }

  PadicScalar lp = log_one_unit(PadicScalar::from_int(p, u0.prec(), 1 + (long long)p));
  TruncSeries<PadicScalar> L = series_log1p(x);
  for (std::size_t j = 1; j < len; ++j) L.set_coeff(j, L.coeff(j).divide_by(lp));

  // binom[n] = integral series B_n with C(L, n) = p^{-d_n} B_n, d_n = v_p(n!)
  std::vector<TruncSeries<PadicScalar>> binom;
  std::vector<int> dn((std::size_t)wtrunc, 0);
  binom.reserve((std::size_t)wtrunc);
  binom.push_back(TruncSeries<PadicScalar>::constant(u0.one_like(), len));
  TruncSeries<PadicScalar> rising = binom[0];  // Π_{i<n}(L - i), integral
  int vfact = 0;
  for (int n = 1; n < wtrunc; ++n) {
    TruncSeries<PadicScalar> shift = L;
    shift.set_coeff(0, L.coeff(0) - u0.from_int_like(n - 1));
    rising = rising * shift;
    // divide by n! splitting off its p-part
    long long nn = n;
    int vn = 0;
    while (nn % p == 0) {
      nn /= p;
      ++vn;
    }
    vfact += vn;
    dn[(std::size_t)n] = vfact;
    PadicScalar unit_part = u0.from_int_like(nn).inverse();
    rising = rising.scale(unit_part);
    binom.push_back(rising);
  }

  const int D = dn.empty() ? 0 : dn.back();
  IwasawaElement kappa0 = universal_character(u0, wtrunc);
  IwasawaElement proto = kappa0.zero_like();
  TruncSeries<IwasawaElement> out(proto, len);
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<PadicScalar> cw;
    cw.reserve((std::size_t)wtrunc);
    for (int n = 0; n < wtrunc; ++n)
      cw.push_back(binom[(std::size_t)n].coeff(j).mul_p_pow(D - dn[(std::size_t)n]));
    out.set_coeff(j, IwasawaElement::from_scalar_coeffs(wtrunc, std::move(cw), D) * kappa0);
  }
  return out;
}

int character_tail_valuation(std::uint32_t p, int wtrunc, int vz) {
  if (vz < 1) throw std::domain_error("need v(z-1) >= 1");
  int best = wtrunc * vz;
  // beyond 4·best/vz the term n·vz - v_p(n!) >= (3/4)·n·vz already exceeds best
  int limit = 4 * best + 8;
  int vfact = 0;
  for (int n = 1; n <= limit; ++n) {
    for (int q = n; q % (int)p == 0; q /= (int)p) ++vfact;
    if (n >= wtrunc) best = std::min(best, n * vz - vfact);
  }
  return best;
}

PadicScalar weight_point_minus_one(std::uint32_t p, int prec, long long k) {
  PadicScalar u = PadicScalar::from_int(p, prec, 1 + (long long)p);
  PadicScalar uk = (k >= 0) ? u.pow_u64((std::uint64_t)k) : one_unit_power_int(u, k);
  return uk - PadicScalar::one(p, prec);
}

}  // namespace qspec
