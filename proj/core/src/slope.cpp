#include "qspec/slope.hpp"

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

Poly padd(const Poly& a, const Poly& b) {
  Poly r = a;
  if (b.size() > r.size()) r.resize(b.size(), a[0].zero_like());
  for (std::size_t j = 0; j < b.size(); ++j) r[j] = r[j] + b[j];
  return r;
}

Poly psub(const Poly& a, const Poly& b) {
  Poly r = a;
  if (b.size() > r.size()) r.resize(b.size(), a[0].zero_like());
  for (std::size_t j = 0; j < b.size(); ++j) r[j] = r[j] - b[j];
  return r;
}

bool pcensored(const Poly& a) {
  for (const auto& c : a)
    if (!c.is_zero_at_prec()) return false;
  return true;
}

// Division by a polynomial with unit leading coefficient; loss-free.
void pdivmod_unit_lead(const Poly& num, const Poly& den, Poly& q, Poly& r) {
  const std::size_t dn = den.size() - 1;
  const PadicScalar lead_inv = den.back().inverse();
  r = num;
  if (r.size() <= dn) {
    q = Poly{num[0].zero_like()};
    r.resize(std::max<std::size_t>(dn, 1), num[0].zero_like());
    return;
  }
  q.assign(r.size() - dn, num[0].zero_like());
  for (std::size_t i = r.size(); i-- > dn;) {
    const std::size_t qi = i - dn;
    PadicScalar c = r[i] * lead_inv;
    q[qi] = q[qi] + c;
    for (std::size_t j = 0; j <= dn; ++j) r[qi + j] = r[qi + j] - c * den[j];
  }
  r.resize(std::max<std::size_t>(dn, 1), num[0].zero_like());
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

DenseMat<PadicScalar> matpow(const DenseMat<PadicScalar>& a, int e) {
  DenseMat<PadicScalar> r = a;
  for (int i = 1; i < e; ++i) r = r.mul(a);
  return r;
}

DenseMat<PadicScalar> block_of(const DenseMat<PadicScalar>& m, int r0, int c0, int nr, int nc) {
  DenseMat<PadicScalar> out(m.e[0].zero_like(), nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

}  // namespace

std::vector<int> saturated_echelon(DenseMat<PadicScalar>& Y) {
  const int n = Y.rows, d = Y.cols;
  std::vector<int> pivot_row(d, -1);
  std::vector<char> row_used((std::size_t)n, 0);
  for (int step = 0; step < d; ++step) {
    int br = -1, bc = -1, bv = 0;
    for (int c = 0; c < d; ++c) {
      if (pivot_row[(std::size_t)c] >= 0) continue;
      for (int r = 0; r < n; ++r) {
        if (row_used[(std::size_t)r]) continue;
        const auto v = Y.at(r, c).valuation();
        if (!v.exact) continue;
        if (br < 0 || v.v < bv) {
          br = r;
          bc = c;
          bv = v.v;
        }
      }
    }
    if (br < 0) throw PrecisionError("echelon: columns dependent at working precision");
    const PadicScalar piv = Y.at(br, bc);
    for (int r = 0; r < n; ++r) Y.at(r, bc) = Y.at(r, bc).divide_by(piv);
    for (int c = 0; c < d; ++c) {
      if (c == bc) continue;
      const PadicScalar mult = Y.at(br, c);
      if (mult.is_zero_at_prec()) continue;
      for (int r = 0; r < n; ++r) Y.at(r, c) = Y.at(r, c) - mult * Y.at(r, bc);
    }
    pivot_row[(std::size_t)bc] = br;
    row_used[(std::size_t)br] = 1;
  }
  return pivot_row;
}

std::vector<PadicScalar> hensel_unit_factor(const std::vector<PadicScalar>& f, int m) {
  const int n = (int)f.size() - 1;
  if (n < 1 || m < 0 || m > n) throw std::domain_error("unit factor: bad degrees");
  const PadicScalar zero = f[0].zero_like();
  const PadicScalar one = f[0].one_like();
  if (!(f[(std::size_t)n] - one).is_zero_at_prec())
    throw std::domain_error("unit factor: polynomial not monic");
  if (m == n) return f;
  if (m == 0) return Poly{one};

  // The reduction mod p must be (unit-constant degree m) * X^{n-m}.
  for (int i = 0; i < n - m; ++i) {
    const auto v = f[(std::size_t)i].valuation();
    if (v.exact && v.v == 0)
      throw std::domain_error("unit factor: low coefficients are not divisible by p");
  }
  Poly A(f.begin() + (n - m), f.end());  // monic, degree m
  if (!A[0].is_unit())
    throw PrecisionError("unit factor: constant term of the split is not a unit");
  Poly B((std::size_t)(n - m) + 1, zero);
  B[(std::size_t)(n - m)] = one;

  // Initial Bezout pair modulo p: U = A^{-1} as a power series mod X^{n-m},
  // then V = the degree-< m part with U*A + V*X^{n-m} = 1 - O(p).
  const std::uint64_t p = f[0].prime();
  const int prec = f[0].prec();
  std::vector<std::uint64_t> am((std::size_t)m + 1);
  for (int i = 0; i <= m; ++i) {
    std::uint64_t rem;
    divrem_u64(A[(std::size_t)i].residue(), p, rem);
    am[(std::size_t)i] = rem;
  }
  std::vector<std::uint64_t> um((std::size_t)(n - m), 0);
  um[0] = inv_mod_p(am[0], p);
  for (int k = 1; k < n - m; ++k) {
    std::uint64_t acc = 0;
    for (int j = 1; j <= std::min(k, m); ++j)
      acc = (acc + am[(std::size_t)j] * um[(std::size_t)(k - j)]) % p;
    um[(std::size_t)k] = acc ? (p - acc) * um[0] % p : 0;
  }
  Poly U((std::size_t)(n - m), zero);
  for (int i = 0; i < n - m; ++i)
    U[(std::size_t)i] =
        PadicScalar::from_int((std::uint32_t)p, prec, (long long)um[(std::size_t)i]);
  Poly W = psub(Poly{one}, pmul(U, A));
  Poly V((std::size_t)m, zero);
  for (int i = 0; i < m; ++i)
    if ((std::size_t)(n - m + i) < W.size()) V[(std::size_t)i] = W[(std::size_t)(n - m + i)];

  int rounds = 2;
  while ((1 << rounds) < prec + 2) ++rounds;
  rounds += 2;

  for (int round = 0; round < rounds; ++round) {
    Poly e = psub(f, pmul(A, B));
    if (pcensored(e)) break;
    // Factor update: dA = (V*e mod A), dB = quotient of (e - B*dA) by A.
    Poly q, dA;
    pdivmod_unit_lead(pmul(V, e), A, q, dA);
    Poly qb, rb;
    pdivmod_unit_lead(psub(e, pmul(B, dA)), A, qb, rb);
    A = padd(A, dA);
    B = padd(B, qb);
    A.resize((std::size_t)m + 1, zero);
    B.resize((std::size_t)(n - m) + 1, zero);

    // Bezout update: dV = -(V*d mod A), dU = quotient of (B*(V*d mod A) - d) by A.
    Poly d = psub(padd(pmul(U, A), pmul(V, B)), Poly{one});
    if (pcensored(d)) continue;
    Poly qq, rr;
    pdivmod_unit_lead(pmul(V, d), A, qq, rr);
    Poly qu, ru;
    pdivmod_unit_lead(psub(pmul(B, rr), d), A, qu, ru);
    V = psub(V, rr);
    U = padd(U, qu);
    V.resize((std::size_t)m, zero);
    U.resize((std::size_t)(n - m), zero);
  }

  Poly e = psub(f, pmul(A, B));
  if (!pcensored(e))
    throw PrecisionError("unit factor: Hensel lifting did not converge at working precision");
  return A;
}

DenseMat<PadicScalar> padic_kernel(const DenseMat<PadicScalar>& M, int expected_dim) {
  if (M.rows != M.cols) throw std::domain_error("kernel: matrix not square");
  const int n = M.rows;
  if (expected_dim < 0 || expected_dim > n) throw std::domain_error("kernel: bad dimension");
  DenseMat<PadicScalar> R = M;
  DenseMat<PadicScalar> V = DenseMat<PadicScalar>::identity(M.e[0].zero_like(), n);
  std::vector<char> used_row((std::size_t)n, 0), used_col((std::size_t)n, 0);
  const int rank_target = n - expected_dim;
  for (int step = 0; step < rank_target; ++step) {
    int pi = -1, pj = -1, pv = 0;
    for (int i = 0; i < n; ++i) {
      if (used_row[(std::size_t)i]) continue;
      for (int j = 0; j < n; ++j) {
        if (used_col[(std::size_t)j]) continue;
        const auto v = R.at(i, j).valuation();
        if (!v.exact) continue;
        if (pi < 0 || v.v < pv) {
          pi = i;
          pj = j;
          pv = v.v;
        }
      }
    }
    if (pi < 0)
      throw PrecisionError("kernel: rank collapses below expectation at working precision");
    const PadicScalar piv = R.at(pi, pj);
    for (int c = 0; c < n; ++c) {
      if (c == pj || used_col[(std::size_t)c]) continue;
      const PadicScalar entry = R.at(pi, c);
      if (entry.is_zero_at_prec()) continue;
      const PadicScalar mult = entry.divide_by(piv);
      for (int r = 0; r < n; ++r) {
        if (!used_row[(std::size_t)r]) R.at(r, c) = R.at(r, c) - mult * R.at(r, pj);
      }
      for (int r = 0; r < n; ++r) V.at(r, c) = V.at(r, c) - mult * V.at(r, pj);
    }
    used_row[(std::size_t)pi] = 1;
    used_col[(std::size_t)pj] = 1;
  }
  DenseMat<PadicScalar> K(M.e[0].zero_like(), n, expected_dim);
  int idx = 0;
  for (int c = 0; c < n; ++c) {
    if (used_col[(std::size_t)c]) continue;
    for (int r = 0; r < n; ++r) {
      if (!used_row[(std::size_t)r] && !R.at(r, c).is_zero_at_prec())
        throw PrecisionError("kernel: expected null direction is still visible; "
                             "raise precision or check the dimension");
    }
    for (int r = 0; r < n; ++r) K.at(r, idx) = V.at(r, c);
    ++idx;
  }
  if (idx != expected_dim) throw std::domain_error("kernel: dimension bookkeeping failed");
  if (expected_dim > 0) saturated_echelon(K);
  return K;
}

DenseMat<PadicScalar> invert_unit_matrix(const DenseMat<PadicScalar>& P) {
  if (P.rows != P.cols) throw std::domain_error("inverse: matrix not square");
  const int n = P.rows;
  DenseMat<PadicScalar> W = P;
  DenseMat<PadicScalar> Inv = DenseMat<PadicScalar>::identity(P.e[0].zero_like(), n);
  std::vector<char> done((std::size_t)n, 0);
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int r = 0; r < n; ++r)
      if (!done[(std::size_t)r] && W.at(r, c).is_unit()) {
        pr = r;
        break;
      }
    if (pr < 0) throw std::domain_error("inverse: matrix is not invertible mod p");
    const PadicScalar pinv = W.at(pr, c).inverse();
    for (int j = 0; j < n; ++j) {
      W.at(pr, j) = W.at(pr, j) * pinv;
      Inv.at(pr, j) = Inv.at(pr, j) * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == pr) continue;
      const PadicScalar mult = W.at(r, c);
      if (mult.is_zero_at_prec()) continue;
      for (int j = 0; j < n; ++j) {
        W.at(r, j) = W.at(r, j) - mult * W.at(pr, j);
        Inv.at(r, j) = Inv.at(r, j) - mult * Inv.at(pr, j);
      }
    }
    done[(std::size_t)pr] = 1;
    // remember where column c's pivot sits for the final row permutation
    W.at(pr, c) = P.e[0].one_like();
  }
  // Rows of Inv are ordered by pivot row; reorder so that Inv * P = 1.
  // Gauss-Jordan above already yields W = permutation matrix; undo it.
  DenseMat<PadicScalar> Out(P.e[0].zero_like(), n, n);
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int r = 0; r < n; ++r)
      if (!W.at(r, c).is_zero_at_prec()) {
        pr = r;
        break;
      }
    for (int j = 0; j < n; ++j) Out.at(c, j) = Inv.at(pr, j);
  }
  return Out;
}

SlopeSubspace slope_subspace(const DenseMat<PadicScalar>& A, const Rat& alpha) {
  if (A.rows != A.cols) throw std::domain_error("slope subspace: matrix not square");
  const int n = A.rows;
  const PadicScalar zero = A.e[0].zero_like();
  const PadicScalar one = A.e[0].one_like();

  DenseMat<PadicScalar> cur = A;
  DenseMat<PadicScalar> pacc = DenseMat<PadicScalar>::identity(zero, n);
  std::vector<std::pair<Rat, int>> cut;
  int done = 0;

  while (done < n) {
    const int ns = n - done;
    DenseMat<PadicScalar> sub = block_of(cur, done, done, ns, ns);
    auto f = fredholm_series(sub);
    auto np = newton_polygon(f);
    if (np.slopes.empty())
      throw PrecisionError("slope subspace: spectrum invisible at working precision");
    const Rat s = np.slopes[0].first;
    const int mult = np.slopes[0].second;
    if (alpha < s) break;
    const long long a = s.num, b = s.den;
    if (b > 8) throw std::domain_error("slope subspace: slope denominator too large");

    // Slope-s block of sub = unit-root block of sub^b scaled by p^-a.
    DenseMat<PadicScalar> Bm = (b == 1) ? sub : matpow(sub, (int)b);
    auto g = (b == 1) ? f : fredholm_series(Bm);
    // Scaled characteristic polynomial: coefficient j divided by p^{a j}.
    Poly ghat((std::size_t)ns + 1, zero);
    for (int j = 0; j <= ns; ++j) {
      try {
        ghat[(std::size_t)j] = g.coeff((std::size_t)j).div_exact_p_pow((int)(a * j));
      } catch (const std::domain_error&) {
        throw PrecisionError("slope subspace: polygon of the powered operator dips below "
                             "the expected slope line");
      }
    }
    // Monic reversal and unit-root factor.
    Poly fstar((std::size_t)ns + 1, zero);
    for (int i = 0; i <= ns; ++i) fstar[(std::size_t)i] = ghat[(std::size_t)(ns - i)];
    Poly Q = hensel_unit_factor(fstar, mult);

    // Kernel of p^{a*mult} * Q(sub^b / p^a) = sum_i Q_i p^{a(mult-i)} (sub^b)^i.
    DenseMat<PadicScalar> acc(zero, ns, ns);
    for (int i = 0; i < ns; ++i) acc.at(i, i) = Q[(std::size_t)mult];  // leading, exactly 1
    for (int i = mult - 1; i >= 0; --i) {
      acc = acc.mul(Bm);
      const PadicScalar c = Q[(std::size_t)i].mul_p_pow((int)a * (mult - i));
      for (int r = 0; r < ns; ++r) acc.at(r, r) = acc.at(r, r) + c;
    }
    DenseMat<PadicScalar> K = padic_kernel(acc, mult);
    std::vector<int> piv = saturated_echelon(K);

    // Complete K to a unimodular basis of the sub-block coordinates.
    DenseMat<PadicScalar> psub_mat(zero, ns, ns);
    for (int c = 0; c < mult; ++c)
      for (int r = 0; r < ns; ++r) psub_mat.at(r, c) = K.at(r, c);
    std::vector<char> is_piv((std::size_t)ns, 0);
    for (int c = 0; c < mult; ++c) is_piv[(std::size_t)piv[(std::size_t)c]] = 1;
    int free_idx = mult;
    for (int r = 0; r < ns; ++r)
      if (!is_piv[(std::size_t)r]) psub_mat.at(r, free_idx++) = one;
    DenseMat<PadicScalar> psub_inv = invert_unit_matrix(psub_mat);

    // Embed into the full space and conjugate.
    DenseMat<PadicScalar> P = DenseMat<PadicScalar>::identity(zero, n);
    DenseMat<PadicScalar> Pinv = DenseMat<PadicScalar>::identity(zero, n);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j) {
        P.at(done + i, done + j) = psub_mat.at(i, j);
        Pinv.at(done + i, done + j) = psub_inv.at(i, j);
      }
    cur = Pinv.mul(cur).mul(P);
    pacc = pacc.mul(P);

    if (!cut.empty() && cut.back().first == s)
      cut.back().second += mult;
    else
      cut.emplace_back(s, mult);
    done += mult;
  }

  DenseMat<PadicScalar> basis = block_of(pacc, 0, 0, n, done);
  if (done == 0)
    return SlopeSubspace{0, cut, basis, DenseMat<PadicScalar>(zero, 0, 0),
                         TruncSeries<PadicScalar>::constant(one, 1), zero.prec()};
  DenseMat<PadicScalar> restriction = block_of(cur, 0, 0, done, done);
  auto char_series = fredholm_series(restriction);

  // Certification: the conjugated matrix must vanish below the cut block,
  // and the polygon of the restriction must reproduce the cut slopes.
  int cert = zero.prec();
  for (int i = done; i < n; ++i)
    for (int j = 0; j < done; ++j) {
      const auto& x = cur.at(i, j);
      if (!x.is_zero_at_prec())
        throw PrecisionError("slope subspace: invariance residual visible; raise precision");
      cert = std::min(cert, x.prec());
    }
  for (int i = 0; i < done; ++i)
    for (int j = 0; j < done; ++j) cert = std::min(cert, restriction.at(i, j).prec());

  auto rnp = newton_polygon(char_series);
  if (rnp.slopes != cut)
    throw PrecisionError("slope subspace: restriction polygon disagrees with the cut");
  return SlopeSubspace{done, cut, basis, restriction, char_series, cert};
}

std::vector<PadicScalar> solve_integral(const DenseMat<PadicScalar>& M,
                                        const std::vector<PadicScalar>& rhs) {
  if (M.rows != M.cols || (int)rhs.size() != M.rows)
    throw std::domain_error("solve: shape mismatch");
  const int n = M.rows;
  if (n == 0) return {};
  DenseMat<PadicScalar> R = M;
  std::vector<PadicScalar> b = rhs;
  std::vector<char> used_row((std::size_t)n, 0), used_col((std::size_t)n, 0);
  std::vector<std::pair<int, int>> order;
  for (int step = 0; step < n; ++step) {
    int pi = -1, pj = -1, pv = 0;
    for (int i = 0; i < n; ++i) {
      if (used_row[(std::size_t)i]) continue;
      for (int j = 0; j < n; ++j) {
        if (used_col[(std::size_t)j]) continue;
        const auto v = R.at(i, j).valuation();
        if (!v.exact) continue;
        if (pi < 0 || v.v < pv) {
          pi = i;
          pj = j;
          pv = v.v;
        }
      }
    }
    if (pi < 0) throw PrecisionError("solve: system singular at working precision");
    const PadicScalar piv = R.at(pi, pj);
    for (int r = 0; r < n; ++r) {
      if (used_row[(std::size_t)r] || r == pi) continue;
      const PadicScalar entry = R.at(r, pj);
      if (entry.is_zero_at_prec()) continue;
      const PadicScalar mult = entry.divide_by(piv);
      for (int c = 0; c < n; ++c) R.at(r, c) = R.at(r, c) - mult * R.at(pi, c);
      b[(std::size_t)r] = b[(std::size_t)r] - mult * b[(std::size_t)pi];
    }
    used_row[(std::size_t)pi] = 1;
    used_col[(std::size_t)pj] = 1;
    order.emplace_back(pi, pj);
  }
  std::vector<PadicScalar> x((std::size_t)n, M.e[0].zero_like());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int pi = it->first, pj = it->second;
    PadicScalar acc = b[(std::size_t)pi];
    for (auto jt = order.rbegin(); jt != it; ++jt)
      acc = acc - R.at(pi, jt->second) * x[(std::size_t)jt->second];
    try {
      x[(std::size_t)pj] = acc.divide_by(R.at(pi, pj));
    } catch (const std::domain_error&) {
      throw PrecisionError("solve: solution is not integral; system inconsistent "
                           "with the structural integrality assumption");
    }
  }
  return x;
}

FiniteHeckeModule finite_hecke_module(const DenseMat<PadicScalar>& U,
                                      const std::vector<DenseMat<PadicScalar>>& hecke,
                                      const Rat& alpha) {
  auto S = slope_subspace(U, alpha);
  const int n = U.rows, d = S.dim;
  const PadicScalar zero = U.e[0].zero_like();

  if (d == 0)
    return FiniteHeckeModule{
        0,
        S.slopes,
        DenseMat<PadicScalar>(zero, n, 0),
        {},
        DenseMat<PadicScalar>(zero, 0, 0),
        TruncSeries<PadicScalar>::constant(zero.one_like(), 1),
        std::vector<DenseMat<PadicScalar>>(hecke.size(), DenseMat<PadicScalar>(zero, 0, 0)),
        S.certified_prec};

  DenseMat<PadicScalar> basis = S.basis;
  std::vector<int> piv = saturated_echelon(basis);
  int cert = S.certified_prec;

  // restriction of an operator by pivot-row reads: h*basis = basis*H + res,
  // H.at(c, j) read off at pivot row of column c, res must vanish
  auto restrict_op = [&](const DenseMat<PadicScalar>& h, const char* what) {
    DenseMat<PadicScalar> img = h.mul(basis);
    DenseMat<PadicScalar> H(zero, d, d);
    for (int j = 0; j < d; ++j) {
      std::vector<PadicScalar> v((std::size_t)n, zero);
      for (int r = 0; r < n; ++r) v[(std::size_t)r] = img.at(r, j);
      for (int c = 0; c < d; ++c) {
        const PadicScalar coeff = v[(std::size_t)piv[(std::size_t)c]];
        H.at(c, j) = coeff;
        for (int r = 0; r < n; ++r) v[(std::size_t)r] -= coeff * basis.at(r, c);
      }
      for (const auto& rest : v) {
        if (!rest.is_zero_at_prec())
          throw PrecisionError(std::string(what) +
                               " does not preserve the slope subspace at working precision");
        cert = std::min(cert, rest.prec());
      }
    }
    return H;
  };

  DenseMat<PadicScalar> u_matrix = restrict_op(U, "compact operator");
  auto u_char = fredholm_series(u_matrix);
  // the echelonized basis spans the same subspace, so the characteristic
  // series must reproduce the peeled factor
  for (std::size_t i = 0; i < u_char.len() && i < S.char_series.len(); ++i)
    if (!(u_char.coeff(i) - S.char_series.coeff(i)).is_zero_at_prec())
      throw PrecisionError("slope module: characteristic series is basis-dependent; "
                           "precision too low");
  std::vector<DenseMat<PadicScalar>> restricted;
  for (std::size_t hi = 0; hi < hecke.size(); ++hi) {
    if (hecke[hi].rows != n || hecke[hi].cols != n)
      throw std::domain_error("slope module: operator dimension mismatch");
    restricted.push_back(restrict_op(hecke[hi], "hecke operator"));
  }
  return FiniteHeckeModule{d, S.slopes, basis, piv, u_matrix, u_char, restricted, cert};
}

}  // namespace qspec
