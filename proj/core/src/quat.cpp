#include "qspec/quat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qspec {

namespace {

using I128 = __int128;

long long det3(const std::array<std::array<long long, 4>, 4>& m, int r0, int r1, int r2,
               int c0, int c1, int c2) {
  return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
         m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
         m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
}

std::uint64_t mulmod_u64(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return (std::uint64_t)((unsigned __int128)x * y % m);
}

long long isqrt_ll(long long n) {
  if (n < 0) return -1;
  long long r = (long long)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

Mat2Z Mat2Z::mul(const Mat2Z& o) const {
  Mat2Z r;
  r.mod = mod;
  r.a = (mulmod_u64(a, o.a, mod) + mulmod_u64(b, o.c, mod)) % mod;
  r.b = (mulmod_u64(a, o.b, mod) + mulmod_u64(b, o.d, mod)) % mod;
  r.c = (mulmod_u64(c, o.a, mod) + mulmod_u64(d, o.c, mod)) % mod;
  r.d = (mulmod_u64(c, o.b, mod) + mulmod_u64(d, o.d, mod)) % mod;
  return r;
}

std::uint64_t Mat2Z::det() const {
  std::uint64_t x = mulmod_u64(a, d, mod);
  std::uint64_t y = mulmod_u64(b, c, mod);
  return (x + mod - y) % mod;
}

QuatOrder::QuatOrder(long long alg_a, long long alg_b, long long discriminant, long long den,
                     std::array<std::array<long long, 4>, 4> basis_rows)
    : a_(alg_a), b_(alg_b), disc_(discriminant), den_(den), basis_(basis_rows) {
  if (a_ >= 0 || b_ >= 0) throw std::invalid_argument("order requires a definite algebra (a, b < 0)");
  if (den_ < 1) throw std::invalid_argument("bad denominator");
  // adjugate: adj[c][r] = (-1)^{r+c} * minor(r, c)
  for (int r = 0; r < 4; ++r) {
    int rr[3], idx = 0;
    for (int t = 0; t < 4; ++t)
      if (t != r) rr[idx++] = t;
    for (int c = 0; c < 4; ++c) {
      int cc[3];
      idx = 0;
      for (int t = 0; t < 4; ++t)
        if (t != c) cc[idx++] = t;
      long long minor = det3(basis_, rr[0], rr[1], rr[2], cc[0], cc[1], cc[2]);
      adj_[c][r] = (((r + c) % 2) ? -1 : 1) * minor;
    }
  }
  basis_det_ = 0;
  for (int c = 0; c < 4; ++c) basis_det_ += basis_[0][c] * adj_[c][0];
  if (basis_det_ == 0) throw std::invalid_argument("degenerate order basis");
  // the basis must actually span an order containing 1 and closed under mult
  (void)from_quat(Quat{{den_, 0, 0, 0}, den_});
}

QuatOrder QuatOrder::hurwitz() {
  return QuatOrder(-1, -1, 2, 2,
                   {{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {1, 1, 1, 1}}});
}

Quat QuatOrder::to_quat(const Coords& c) const {
  Quat q;
  q.den = den_;
  for (int m = 0; m < 4; ++m) {
    long long s = 0;
    for (int i = 0; i < 4; ++i) s += c[(std::size_t)i] * basis_[i][m];
    q.num[(std::size_t)m] = s;
  }
  return q;
}

QuatOrder::Coords QuatOrder::from_quat(const Quat& q) const {
  Coords c;
  for (int i = 0; i < 4; ++i) {
    I128 s = 0;
    for (int m = 0; m < 4; ++m) s += (I128)q.num[(std::size_t)m] * den_ * adj_[m][i];
    I128 denom = (I128)basis_det_ * q.den;
    if (s % denom != 0) throw std::domain_error("quaternion not in order");
    I128 v = s / denom;
    c[(std::size_t)i] = (long long)v;
  }
  return c;
}

bool QuatOrder::contains(const Quat& q) const {
  try {
    (void)from_quat(q);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

QuatOrder::Coords QuatOrder::one() const {
  return from_quat(Quat{{den_, 0, 0, 0}, den_});
}

Quat QuatOrder::quat_mul(const Quat& x, const Quat& y) const {
  const auto& u = x.num;
  const auto& v = y.num;
  Quat z;
  z.den = x.den * y.den;
  z.num[0] = u[0] * v[0] + a_ * u[1] * v[1] + b_ * u[2] * v[2] - a_ * b_ * u[3] * v[3];
  z.num[1] = u[0] * v[1] + u[1] * v[0] - b_ * u[2] * v[3] + b_ * u[3] * v[2];
  z.num[2] = u[0] * v[2] + u[2] * v[0] + a_ * u[1] * v[3] - a_ * u[3] * v[1];
  z.num[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
  return z;
}

QuatOrder::Coords QuatOrder::mul(const Coords& x, const Coords& y) const {
  return from_quat(quat_mul(to_quat(x), to_quat(y)));
}

QuatOrder::Coords QuatOrder::conj(const Coords& x) const {
  Quat q = to_quat(x);
  for (int m = 1; m < 4; ++m) q.num[(std::size_t)m] = -q.num[(std::size_t)m];
  return from_quat(q);
}

long long QuatOrder::nrd(const Coords& x) const {
  Quat q = to_quat(x);
  const auto& u = q.num;
  long long s = u[0] * u[0] - a_ * u[1] * u[1] - b_ * u[2] * u[2] + a_ * b_ * u[3] * u[3];
  long long d2 = q.den * q.den;
  if (s % d2 != 0) throw std::logic_error("non-integral reduced norm in order");
  return s / d2;
}

long long QuatOrder::trd(const Coords& x) const {
  Quat q = to_quat(x);
  long long s = 2 * q.num[0];
  if (s % q.den != 0) throw std::logic_error("non-integral reduced trace in order");
  return s / q.den;
}

const std::vector<QuatOrder::Coords>& QuatOrder::units() const {
  if (units_.empty()) units_ = enumerate_by_norm(1);
  return units_;
}

std::vector<QuatOrder::Coords> QuatOrder::enumerate_by_norm(long long n) const {
  if (n < 1) throw std::invalid_argument("norm must be positive");
  std::vector<Coords> out;
  const long long A = -a_, B = -b_, AB = a_ * b_;
  const long long target = den_ * den_ * n;
  const long long x0m = isqrt_ll(target);
  for (long long x0 = -x0m; x0 <= x0m; ++x0) {
    const long long r0 = target - x0 * x0;
    const long long x1m = isqrt_ll(r0 / A);
    for (long long x1 = -x1m; x1 <= x1m; ++x1) {
      const long long r1 = r0 - A * x1 * x1;
      if (r1 < 0) continue;
      const long long x2m = isqrt_ll(r1 / B);
      for (long long x2 = -x2m; x2 <= x2m; ++x2) {
        const long long r2 = r1 - B * x2 * x2;
        if (r2 < 0 || r2 % AB != 0) continue;
        const long long q3 = r2 / AB;
        const long long x3 = isqrt_ll(q3);
        if (x3 * x3 != q3) continue;
        const int ncand = (x3 == 0) ? 1 : 2;
        for (int ci = 0; ci < ncand; ++ci) {
          Quat q{{x0, x1, x2, ci ? -x3 : x3}, den_};
          if (contains(q)) out.push_back(from_quat(q));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<PadicScalar, PadicScalar> QuatOrder::splitting_point(std::uint32_t l, int prec) const {
  auto key = std::make_pair(l, prec);
  auto it = split_.find(key);
  if (it != split_.end()) return it->second;
  if (l == 2 || l % 2 == 0) throw std::domain_error("splitting needs an odd prime");
  if (a_ % (long long)l == 0 || b_ % (long long)l == 0 || disc_ % (long long)l == 0)
    throw std::domain_error("prime not split for this order");
  // solve y^2 - a t^2 = b mod l, preferring a unit y for the Hensel step
  long long y0 = -1, t0 = -1;
  for (long long t = 0; t < (long long)l && y0 < 0; ++t)
    for (long long y = 1; y < (long long)l; ++y)
      if (((y * y - a_ * t * t - b_) % (long long)l + l) % (long long)l == 0) {
        y0 = y;
        t0 = t;
        break;
      }
  bool lift_y = y0 >= 0;
  if (!lift_y) {
    // all solutions have y = 0: lift in t instead (t is then a unit)
    for (long long t = 1; t < (long long)l && y0 < 0; ++t)
      if (((-a_ * t * t - b_) % (long long)l + l) % (long long)l == 0) {
        y0 = 0;
        t0 = t;
      }
    if (t0 < 0) throw std::logic_error("no splitting point found mod l");
  }
  PadicScalar y = PadicScalar::from_int(l, prec, y0);
  PadicScalar t = PadicScalar::from_int(l, prec, t0);
  PadicScalar av = PadicScalar::from_int(l, prec, a_);
  PadicScalar bv = PadicScalar::from_int(l, prec, b_);
  PadicScalar two = PadicScalar::from_int(l, prec, 2);
  for (int it2 = 0; it2 < 64; ++it2) {
    PadicScalar f = y * y - av * t * t - bv;
    if (f.is_zero_at_prec()) break;
    if (lift_y)
      y = y - f * (two * y).inverse();
    else
      t = t + f * (two * av * t).inverse();
  }
  PadicScalar check = y * y - av * t * t - bv;
  if (!check.is_zero_at_prec()) throw std::logic_error("splitting Hensel lift failed");
  auto res = std::make_pair(y, t);
  split_[key] = res;
  return res;
}

MonoidMatrix QuatOrder::embed(const Coords& x, std::uint32_t l, int prec) const {
  auto [y, t] = splitting_point(l, prec);
  Quat q = to_quat(x);
  PadicScalar xs[4];
  for (int m = 0; m < 4; ++m) xs[m] = PadicScalar::from_rational(l, prec, q.num[(std::size_t)m], q.den);
  PadicScalar av = PadicScalar::from_int(l, prec, a_);
  // 1 -> I, i -> (0 a; 1 0), j -> (y -at; t -y), k = ij -> (at -ay; y -at)
  MonoidMatrix m;
  m.a = xs[0] + xs[2] * y + xs[3] * av * t;
  m.b = xs[1] * av - xs[2] * av * t - xs[3] * av * y;
  m.c = xs[1] + xs[2] * t + xs[3] * y;
  m.d = xs[0] - xs[2] * y - xs[3] * av * t;
  return m;
}

Mat2Z QuatOrder::embed_mod(const Coords& x, std::uint64_t M) const {
  std::vector<std::pair<std::uint64_t, Mat2Z>> parts;  // (l^e, matrix)
  std::uint64_t rest = M;
  for (std::uint64_t l = 2; l * l <= rest; ++l) {
    if (rest % l) continue;
    int e = 0;
    std::uint64_t pe = 1;
    while (rest % l == 0) {
      rest /= l;
      pe *= l;
      ++e;
    }
    MonoidMatrix mm = embed(x, (std::uint32_t)l, e);
    parts.push_back({pe, Mat2Z{mm.a.residue().lo64(), mm.b.residue().lo64(),
                               mm.c.residue().lo64(), mm.d.residue().lo64(), pe}});
  }
  if (rest > 1) {
    MonoidMatrix mm = embed(x, (std::uint32_t)rest, 1);
    parts.push_back({rest, Mat2Z{mm.a.residue().lo64(), mm.b.residue().lo64(),
                                 mm.c.residue().lo64(), mm.d.residue().lo64(), rest}});
  }
  // CRT entrywise
  Mat2Z out;
  out.mod = 1;
  out.a = out.b = out.c = out.d = 0;
  for (const auto& [pe, mat] : parts) {
    if (out.mod == 1) {
      out = mat;
      continue;
    }
    std::uint64_t m1 = out.mod, m2 = pe;
    // inverse of m1 mod m2
    long long inv = 1;
    {
      long long t0 = 0, t1 = 1, r0 = (long long)m2, r1 = (long long)(m1 % m2);
      while (r1) {
        long long qq = r0 / r1;
        std::swap(t0 -= qq * t1, t1);
        std::swap(r0 -= qq * r1, r1);
      }
      inv = ((t0 % (long long)m2) + (long long)m2) % (long long)m2;
    }
    auto crt = [&](std::uint64_t r1v, std::uint64_t r2v) {
      std::uint64_t diff = (r2v + m2 - r1v % m2) % m2;
      std::uint64_t k = mulmod_u64(diff, (std::uint64_t)inv, m2);
      return r1v + m1 * k;
    };
    Mat2Z merged;
    merged.mod = m1 * m2;
    merged.a = crt(out.a, mat.a);
    merged.b = crt(out.b, mat.b);
    merged.c = crt(out.c, mat.c);
    merged.d = crt(out.d, mat.d);
    out = merged;
  }
  return out;
}

}  // namespace qspec
