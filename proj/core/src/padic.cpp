#include "qspec/padic.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace qspec {

namespace {

U256 pow_u256(std::uint32_t p, int e) {
  U256 r(1);
  for (int i = 0; i < e; ++i) {
    U512 prod = mul_wide(r, U256(p));
    if (prod.w[4] | prod.w[5] | prod.w[6] | prod.w[7] || (prod.w[3] >> 62))
      throw PrecisionError("p^N exceeds scalar capacity");
    for (int j = 0; j < 4; ++j) r.w[j] = prod.w[j];
  }
  return r;
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = (std::uint64_t)((unsigned __int128)r * a % m);
    a = (std::uint64_t)((unsigned __int128)a * a % m);
    e >>= 1;
  }
  return r;
}

}  // namespace

const PadicCtx& padic_ctx(std::uint32_t p, int prec) {
  thread_local std::vector<PadicCtx> cache;
  for (const auto& c : cache)
    if (c.p == p && c.prec == prec) return c;
  PadicCtx c;
  c.p = p;
  c.prec = prec;
  c.modulus = pow_u256(p, prec);
  cache.push_back(c);
  if (cache.size() > 64) cache.erase(cache.begin(), cache.begin() + 32);
  return cache.back();
}

int max_padic_prec(std::uint32_t p) {
  static std::mutex mu;
  static std::unordered_map<std::uint32_t, int> memo;
  std::lock_guard<std::mutex> lk(mu);
  auto it = memo.find(p);
  if (it != memo.end()) return it->second;
  int n = 0;
  try {
    for (;;) {
      pow_u256(p, n + 1);
      ++n;
    }
  } catch (const PrecisionError&) {
  }
  memo[p] = n;
  return n;
}

PadicScalar PadicScalar::from_residue(std::uint32_t p, int prec, U256 v) {
  if (p < 2) throw std::invalid_argument("bad prime");
  if (prec < 0) throw std::invalid_argument("negative precision");
  PadicScalar x;
  x.p_ = p;
  x.prec_ = prec;
  if (prec == 0) {
    x.v_ = U256(0);
    return x;
  }
  const U256& m = padic_ctx(p, prec).modulus;
  if (!(cmp(v, m) < 0)) {
    U512 wide;
    for (int i = 0; i < 4; ++i) wide.w[i] = v.w[i];
    v = mod_u512(wide, m);
  }
  x.v_ = v;
  return x;
}

PadicScalar PadicScalar::from_int(std::uint32_t p, int prec, long long v) {
  bool neg = v < 0;
  unsigned long long a = neg ? (unsigned long long)(-(v + 1)) + 1ull : (unsigned long long)v;
  PadicScalar x = from_residue(p, prec, U256(a));
  return neg ? -x : x;
}

PadicScalar PadicScalar::from_rational(std::uint32_t p, int prec, long long num, long long den) {
  PadicScalar d = from_int(p, prec, den);
  if (!d.is_unit()) throw std::domain_error("denominator not a p-adic unit");
  return from_int(p, prec, num) * d.inverse();
}

PadicScalar PadicScalar::reduced(int new_prec) const {
  if (new_prec >= prec_) return *this;
  return from_residue(p_, new_prec, v_);
}

static void require_same(const PadicScalar& a, const PadicScalar& b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument("invalid p-adic scalar");
  if (a.prime() != b.prime()) throw std::invalid_argument("mixed primes");
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  require_same(a, b);
  int n = std::min(a.prec(), b.prec());
  if (n == 0) return PadicScalar::from_residue(a.prime(), 0, U256(0));
  const U256& m = padic_ctx(a.prime(), n).modulus;
  return PadicScalar::from_residue(a.prime(), n,
                                   addmod(a.reduced(n).residue(), b.reduced(n).residue(), m));
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
  require_same(a, b);
  int n = std::min(a.prec(), b.prec());
  if (n == 0) return PadicScalar::from_residue(a.prime(), 0, U256(0));
  const U256& m = padic_ctx(a.prime(), n).modulus;
  return PadicScalar::from_residue(a.prime(), n,
                                   submod(a.reduced(n).residue(), b.reduced(n).residue(), m));
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  require_same(a, b);
  int n = std::min(a.prec(), b.prec());
  if (n == 0) return PadicScalar::from_residue(a.prime(), 0, U256(0));
  const U256& m = padic_ctx(a.prime(), n).modulus;
  return PadicScalar::from_residue(a.prime(), n,
                                   mulmod(a.reduced(n).residue(), b.reduced(n).residue(), m));
}

PadicScalar PadicScalar::operator-() const {
  if (prec_ == 0) return *this;
  const U256& m = padic_ctx(p_, prec_).modulus;
  return from_residue(p_, prec_, submod(U256(0), v_, m));
}

PadicScalar::Val PadicScalar::valuation() const {
  if (!valid()) throw std::invalid_argument("invalid scalar");
  if (prec_ == 0 || v_.is_zero()) return {prec_, false};
  int v = 0;
  U256 cur = v_;
  for (;;) {
    std::uint64_t rem;
    U256 q = divrem_u64(cur, p_, rem);
    if (rem != 0) break;
    cur = q;
    ++v;
  }
  return {v, true};
}

bool PadicScalar::is_unit() const {
  if (prec_ < 1) throw PrecisionError("precision 0: unit status unknown");
  std::uint64_t rem;
  divrem_u64(v_, p_, rem);
  return rem != 0;
}

PadicScalar PadicScalar::inverse() const {
  if (!is_unit()) throw std::domain_error("inverse of non-unit");
  std::uint64_t rem;
  divrem_u64(v_, p_, rem);
  std::uint64_t x0 = powmod_u64(rem, p_ - 2, p_);
  PadicScalar x = from_int(p_, prec_, (long long)x0);
  PadicScalar two = from_int(p_, prec_, 2);
  int steps = 1;
  for (int reach = 1; reach < prec_; reach *= 2) ++steps;
  for (int i = 0; i <= steps; ++i) x = x * (two - *this * x);
  return x;
}

PadicScalar PadicScalar::divide_by(const PadicScalar& b) const {
  require_same(*this, b);
  Val vb = b.valuation();
  if (!vb.exact) throw PrecisionError("division by value indistinguishable from 0");
  if (vb.v == 0) return *this * b.inverse();
  Val va = valuation();
  if (va.exact && va.v < vb.v) throw std::domain_error("quotient not p-integral");
  PadicScalar num = div_exact_p_pow(vb.v);
  PadicScalar den = b.div_exact_p_pow(vb.v);
  return num * den.inverse();
}

PadicScalar PadicScalar::mul_p_pow(int t) const {
  if (t < 0) return div_exact_p_pow(-t);
  if (t == 0) return *this;
  int cap = max_padic_prec(p_);
  int np = std::min(prec_ + t, cap);
  PadicScalar r = from_residue(p_, np, v_);
  PadicScalar pp = from_int(p_, np, p_).pow_u64((std::uint64_t)t);
  return r * pp;
}

PadicScalar PadicScalar::div_exact_p_pow(int t) const {
  if (t < 0) return mul_p_pow(-t);
  if (t == 0) return *this;
  if (prec_ < t) throw PrecisionError("precision exhausted dividing by p^t");
  U256 cur = v_;
  for (int i = 0; i < t; ++i) {
    std::uint64_t rem;
    U256 q = divrem_u64(cur, p_, rem);
    if (rem != 0) throw std::domain_error("value not divisible by p^t");
    cur = q;
  }
  return from_residue(p_, prec_ - t, cur);
}

PadicScalar PadicScalar::pow_u64(std::uint64_t e) const {
  PadicScalar r = one(p_, prec_);
  PadicScalar base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool PadicScalar::same_mod_min_prec(const PadicScalar& o) const {
  require_same(*this, o);
  int n = std::min(prec_, o.prec_);
  return reduced(n).residue() == o.reduced(n).residue();
}

std::string PadicScalar::str() const {
  if (!valid()) return "<invalid>";
  return to_decimal(v_) + " mod " + std::to_string(p_) + "^" + std::to_string(prec_);
}

PadicScalar teichmuller(const PadicScalar& a) {
  if (!a.valid()) throw std::invalid_argument("invalid scalar");
  if (a.prec() == 0) return a;
  if (!a.is_unit()) return PadicScalar::zero(a.prime(), a.prec());
  const std::uint32_t p = a.prime();
  PadicScalar x = a;
  PadicScalar prev = x;
  for (int i = 0; i < a.prec() + 2; ++i) {
    // Newton on f(x) = x^{p-1} - 1: x <- x - f(x) / ((p-1) x^{p-2})
    PadicScalar xp2 = x.pow_u64(p - 2);
    PadicScalar f = xp2 * x - PadicScalar::one(p, a.prec());
    PadicScalar fp = PadicScalar::from_int(p, a.prec(), (long long)p - 1) * xp2;
    x = x - f * fp.inverse();
    if (x.same_mod_min_prec(prev) && x.residue() == prev.residue()) break;
    prev = x;
  }
  return x;
}

PadicScalar one_unit_power_int(const PadicScalar& u, long long k) {
  if (k >= 0) return u.pow_u64((std::uint64_t)k);
  return u.inverse().pow_u64((std::uint64_t)(-k));
}

PadicScalar one_unit_power(const PadicScalar& u, const PadicScalar& s) {
  require_same(u, s);
  const std::uint32_t p = u.prime();
  PadicScalar x = u - PadicScalar::one(p, u.prec());
  PadicScalar::Val vx = x.valuation();
  if (vx.exact && vx.v < 1) throw std::domain_error("one_unit_power: u not a 1-unit");
  if (!vx.exact) return PadicScalar::one(p, u.prec());  // u = 1 at precision
  const int No = std::min(u.prec(), s.prec() + vx.v);
  const int guard = No / ((int)p - 2) + 6;
  const int Nb = std::min(No + guard, max_padic_prec(p));
  // arbitrary lifts to the boosted precision (certified only to No)
  PadicScalar xb = PadicScalar::from_residue(p, Nb, x.residue());
  PadicScalar sb = PadicScalar::from_residue(p, Nb, s.residue());
  PadicScalar acc = PadicScalar::one(p, Nb);
  PadicScalar coef = PadicScalar::one(p, Nb);
  PadicScalar xpow = PadicScalar::one(p, Nb);
  for (long long n = 1; n * vx.v <= Nb; ++n) {
    coef = coef * (sb - PadicScalar::from_int(p, Nb, n - 1));
    coef = coef.divide_by(PadicScalar::from_int(p, Nb, n));
    xpow = xpow * xb;
    if (coef.prec() == 0 || xpow.is_zero_at_prec()) break;
    acc = acc + coef * xpow;
  }
  return acc.reduced(std::min(No, acc.prec()));
}

PadicScalar log_one_unit(const PadicScalar& u) {
  const std::uint32_t p = u.prime();
  PadicScalar x = u - PadicScalar::one(p, u.prec());
  PadicScalar::Val vx = x.valuation();
  if (vx.exact && vx.v < 1) throw std::domain_error("log_one_unit: u not a 1-unit");
  if (!vx.exact) return PadicScalar::zero(p, u.prec());
  const int No = u.prec();
  int glog = 2;
  for (long long q = p; q <= No + 4; q *= p) ++glog;
  const int Nb = std::min(No + glog, max_padic_prec(p));
  PadicScalar xb = PadicScalar::from_residue(p, Nb, x.residue());
  PadicScalar acc = PadicScalar::zero(p, Nb);
  PadicScalar xpow = PadicScalar::one(p, Nb);
  for (long long k = 1; k * vx.v <= Nb; ++k) {
    xpow = xpow * xb;
    PadicScalar term = xpow.divide_by(PadicScalar::from_int(p, Nb, k));
    if (k % 2 == 0) term = -term;
    acc = acc + term;
    if (xpow.is_zero_at_prec()) break;
  }
  return acc.reduced(std::min(No, acc.prec()));
}

PadicScalar padic_binomial(const PadicScalar& s, unsigned n) {
  const std::uint32_t p = s.prime();
  if (n == 0) return PadicScalar::one(p, s.prec());
  int vfact = 0;
  for (unsigned k = 1; k <= n; ++k)
    for (unsigned q = k; q % p == 0; q /= p) ++vfact;
  const int Nb = std::min(s.prec() + vfact + 2, max_padic_prec(p));
  PadicScalar sb = PadicScalar::from_residue(p, Nb, s.residue());
  PadicScalar c = PadicScalar::one(p, Nb);
  for (unsigned k = 1; k <= n; ++k) {
    c = c * (sb - PadicScalar::from_int(p, Nb, (long long)k - 1));
    c = c.divide_by(PadicScalar::from_int(p, Nb, k));
  }
  // C(s, n) is determined by s only to s.prec() - v_p(n!) digits.
  const int out = std::min(s.prec() - vfact, c.prec());
  if (out <= 0) throw PrecisionError("binomial exponent precision exhausted");
  return c.reduced(out);
}

}  // namespace qspec
