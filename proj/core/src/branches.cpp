#include "qspec/branches.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace qspec {

namespace {

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  long long t0 = 0, t1 = 1, r0 = (long long)m, r1 = (long long)(a % m);
  while (r1) {
    long long q = r0 / r1;
    long long t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
    long long r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
  }
  if (r0 != 1) throw std::domain_error("branches: non-invertible residue");
  return (std::uint64_t)(((t0 % (long long)m) + (long long)m) % (long long)m);
}

// adj(D)·Y — the inverse of D scaled by det(D)
Mat2Z adj_mul(const Mat2Z& D, const Mat2Z& Y) {
  const std::uint64_t m = D.mod;
  Mat2Z adj{D.d % m, (m - D.b % m) % m, (m - D.c % m) % m, D.a % m, m};
  return adj.mul(Y);
}

// reduce a small-modulus embedding to the flat u64 form
Mat2Z embed_mat(const QuatOrder& O, const QuatOrder::Coords& x, std::uint64_t l, int prec) {
  MonoidMatrix mm = O.embed(x, (std::uint32_t)l, prec);
  std::uint64_t pe = pow_u64(l, prec);
  return Mat2Z{mm.a.residue().lo64() % pe, mm.b.residue().lo64() % pe,
               mm.c.residue().lo64() % pe, mm.d.residue().lo64() % pe, pe};
}

Mat2Z crt_pair(const Mat2Z& x, const Mat2Z& y) {
  const std::uint64_t m1 = x.mod, m2 = y.mod;
  const std::uint64_t inv = inv_mod(m1 % m2, m2);
  auto one = [&](std::uint64_t r1, std::uint64_t r2) {
    std::uint64_t k = ((r2 + m2 - r1 % m2) % m2) * inv % m2;
    return r1 + m1 * k;
  };
  return Mat2Z{one(x.a, y.a), one(x.b, y.b), one(x.c, y.c), one(x.d, y.d), m1 * m2};
}

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t q = 2; m > 1; ++q) {
    if (q * q > m) q = m;
    if (m % q) continue;
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  return out;
}

Mat2Z reduce_mat(const std::array<long long, 4>& g, std::uint64_t m) {
  auto r = [&](long long v) {
    long long mm = (long long)m;
    return (std::uint64_t)(((v % mm) + mm) % mm);
  };
  return Mat2Z{r(g[0]), r(g[1]), r(g[2]), r(g[3]), m};
}

}  // namespace

BranchFactory::BranchFactory(const CosetSpace& X, int pprec) : X_(&X), pprec_(pprec) {
  if (pprec < 2) throw std::domain_error("branches: precision must be at least 2");
}

Branch BranchFactory::reduce(int a, const std::vector<PlaceTarget>& places,
                             const OffTarget* off, std::uint64_t n) const {
  const QuatOrder& O = X_->order();
  const auto candidates = O.enumerate_by_norm((long long)n);
  bool found = false;
  int target = -1;
  QuatOrder::Coords delta{0, 0, 0, 0};
  std::size_t hits = 0;

  for (const auto& cand : candidates) {
    bool ok = true;
    // support place away from the level contributes a divisibility test only
    if (off) {
      auto fs = factor(off->qe);
      Mat2Z D = embed_mat(O, cand, fs[0].first, fs[0].second);
      Mat2Z A = adj_mul(D, off->Y);
      if (A.a || A.b || A.c || A.d) ok = false;  // must vanish mod q^e
    }
    if (!ok) continue;

    // per-place pieces of u = φ(δ)⁻¹ · Y, each mod l^El
    Mat2Z u{0, 0, 0, 0, 1};
    bool first = true;
    for (const auto& pd : places) {
      const std::uint64_t lE = pow_u64(pd.l, pd.El);
      const std::uint64_t le = pow_u64(pd.l, pd.e);
      Mat2Z D = embed_mat(O, cand, pd.l, pd.El + pd.e);
      Mat2Z A = adj_mul(D, pd.Y);
      if (pd.e > 0 && (A.a % le || A.b % le || A.c % le || A.d % le)) {
        ok = false;
        break;
      }
      // divide by the p-part of det(D) = n, then by its unit part
      const std::uint64_t s = inv_mod((n / le) % lE, lE);
      Mat2Z ul{A.a / le % lE * s % lE, A.b / le % lE * s % lE, A.c / le % lE * s % lE,
               A.d / le % lE * s % lE, lE};
      u = first ? ul : crt_pair(u, ul);
      first = false;
    }
    if (!ok) continue;

    int c = X_->coset_id(u);
    int b = X_->orbit_of_coset(c);
    QuatOrder::Coords dp = O.mul(cand, O.conj(X_->aligner(c)));
    if (!found) {
      found = true;
      target = b;
      delta = dp;
    } else if (target != b || delta != dp) {
      throw std::runtime_error("branches: reduction is not unique");
    }
    ++hits;
  }

  if (!found) throw std::runtime_error("branches: no order element solves the reduction");
  if (hits != O.units().size())
    throw std::runtime_error("branches: success count disagrees with the unit count");

  // γ = g̃_a⁻¹ · φ_p(δ) · g̃_b over Z_p at working precision
  const std::uint32_t p = (std::uint32_t)X_->prime_p();
  const auto& la = X_->rep_lift(a);
  const auto& lb = X_->rep_lift(target);
  MonoidMatrix ga_inv =
      MonoidMatrix::from_ints(p, pprec_, la[3], -la[1], -la[2], la[0]);
  MonoidMatrix gb = MonoidMatrix::from_ints(p, pprec_, lb[0], lb[1], lb[2], lb[3]);
  MonoidMatrix gamma = ga_inv * O.embed(delta, p, pprec_) * gb;

  if (!gamma.in_monoid(1))
    throw std::runtime_error("branches: branch matrix left the acting monoid");
  PadicScalar dn = gamma.det() - gamma.det().from_int_like((long long)n);
  if (!dn.is_zero_at_prec())
    throw std::runtime_error("branches: branch determinant disagrees with the norm");
  return Branch{target, gamma};
}

BranchTable BranchFactory::good_hecke(std::uint32_t l) const {
  const std::uint64_t M = X_->modulus();
  if (std::gcd<std::uint64_t>(l, M) != 1 ||
      std::gcd<std::uint64_t>(l, (std::uint64_t)std::llabs(X_->order().discriminant())) != 1)
    throw std::domain_error("branches: good prime must be coprime to level and discriminant");
  const int h = X_->class_count();
  // Hermite representatives of the degree-l+1 coset set at the support place
  std::vector<std::array<long long, 4>> zs;
  for (std::uint64_t b = 0; b < l; ++b) zs.push_back({1, 0, (long long)b, (long long)l});
  zs.push_back({(long long)l, 0, 0, 1});

  std::vector<std::vector<Branch>> rows((std::size_t)h);
  for (int a = 0; a < h; ++a) {
    // away from the support the coset element is the identity
    std::vector<PlaceTarget> places;
    for (auto [q, e] : factor(M))
      places.push_back({q, e, 0, reduce_mat(X_->rep_lift(a), pow_u64(q, e))});
    for (const auto& z : zs) {
      Mat2Z Y = reduce_mat(X_->rep_lift(a), l).mul(reduce_mat(z, l));
      OffTarget off{l, Y};
      rows[(std::size_t)a].push_back(reduce(a, places, &off, l));
    }
  }
  return BranchTable("T" + std::to_string(l), l, std::move(rows));
}

BranchTable BranchFactory::atkin_u(std::uint32_t q) const {
  const std::uint64_t M = X_->modulus();
  if (M % q != 0) throw std::domain_error("branches: U_q needs q dividing the level");
  const int h = X_->class_count();
  const auto fs = factor(M);
  int Eq = 0;
  for (auto [l, e] : fs)
    if (l == q) Eq = e;

  std::vector<std::vector<Branch>> rows((std::size_t)h);
  for (int a = 0; a < h; ++a) {
    for (std::uint64_t j = 0; j < q; ++j) {
      std::array<long long, 4> z{1, 0, (long long)(j * q), (long long)q};
      std::vector<PlaceTarget> places;
      for (auto [l, e] : fs) {
        if (l == q) {
          std::uint64_t w = pow_u64(l, e + 1);
          places.push_back({l, e, 1, reduce_mat(X_->rep_lift(a), w).mul(reduce_mat(z, w))});
        } else {
          places.push_back({l, e, 0, reduce_mat(X_->rep_lift(a), pow_u64(l, e))});
        }
      }
      rows[(std::size_t)a].push_back(reduce(a, places, nullptr, q));
    }
  }
  return BranchTable("U" + std::to_string(q), q, std::move(rows));
}

BranchTable BranchFactory::central(std::uint32_t l) const {
  const std::uint64_t M = X_->modulus();
  if (std::gcd<std::uint64_t>(l, M) != 1 ||
      std::gcd<std::uint64_t>(l, (std::uint64_t)std::llabs(X_->order().discriminant())) != 1)
    throw std::domain_error("branches: central prime must be coprime to level and discriminant");
  const int h = X_->class_count();
  const std::uint64_t n = (std::uint64_t)l * l;
  std::vector<std::vector<Branch>> rows((std::size_t)h);
  for (int a = 0; a < h; ++a) {
    std::vector<PlaceTarget> places;
    for (auto [q, e] : factor(M))
      places.push_back({q, e, 0, reduce_mat(X_->rep_lift(a), pow_u64(q, e))});
    // scalar coset: z = diag(l, l) at the support place
    std::uint64_t qe = (std::uint64_t)l * l;
    Mat2Z Y = reduce_mat(X_->rep_lift(a), qe)
                  .mul(Mat2Z{(std::uint64_t)l, 0, 0, (std::uint64_t)l, qe});
    OffTarget off{qe, Y};
    rows[(std::size_t)a].push_back(reduce(a, places, &off, n));
  }
  return BranchTable("S" + std::to_string(l), n, std::move(rows));
}

BranchTable BranchFactory::ramified_u(std::uint32_t l) const {
  long long disc = std::llabs(X_->order().discriminant());
  if (disc % l != 0) throw std::domain_error("branches: ramified prime must divide the discriminant");
  const int h = X_->class_count();
  std::vector<std::vector<Branch>> rows((std::size_t)h);
  for (int a = 0; a < h; ++a) {
    // the uniformizing coset is invisible along the level
    std::vector<PlaceTarget> places;
    for (auto [q, e] : factor(X_->modulus()))
      places.push_back({q, e, 0, reduce_mat(X_->rep_lift(a), pow_u64(q, e))});
    rows[(std::size_t)a].push_back(reduce(a, places, nullptr, l));
  }
  return BranchTable("Ud" + std::to_string(l), l, std::move(rows));
}

BranchTable compose(const BranchTable& first, const BranchTable& second) {
  if (first.sources() != second.sources())
    throw std::domain_error("branches: composite needs matching class sets");
  std::vector<std::vector<Branch>> rows((std::size_t)first.sources());
  for (int a = 0; a < first.sources(); ++a)
    for (const auto& br : first.branches_from(a))
      for (const auto& br2 : second.branches_from(br.target))
        rows[(std::size_t)a].push_back(Branch{br2.target, br.gamma * br2.gamma});
  return BranchTable(first.name() + "*" + second.name(), first.norm() * second.norm(),
                     std::move(rows));
}

BranchTable BranchFactory::diamond(std::uint64_t aunit) const {
  const std::uint64_t M = X_->modulus();
  if (std::gcd(aunit % M, M) != 1)
    throw std::domain_error("branches: diamond residue must be a unit mod the level");
  const int h = X_->class_count();
  std::vector<std::vector<Branch>> rows((std::size_t)h);
  for (int a = 0; a < h; ++a) {
    std::vector<PlaceTarget> places;
    for (auto [q, e] : factor(M)) {
      std::uint64_t qe = pow_u64(q, e);
      Mat2Z tw{aunit % qe, 0, 0, 1, qe};
      places.push_back({q, e, 0, reduce_mat(X_->rep_lift(a), qe).mul(tw)});
    }
    rows[(std::size_t)a].push_back(reduce(a, places, nullptr, 1));
  }
  return BranchTable("dia" + std::to_string(aunit % M), 1, std::move(rows));
}

}  // namespace qspec
