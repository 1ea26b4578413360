#include "qspec/cosets.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace qspec {

namespace {

std::uint64_t det_mod(const std::array<std::uint64_t, 4>& g, std::uint64_t M) {
  return ((g[0] * g[3]) % M + M * M - (g[1] * g[2]) % M) % M;
}

// right multiplication (column operations): h = g * t for t in GL2(Z/M)
std::array<std::uint64_t, 4> rmul(const std::array<std::uint64_t, 4>& g,
                                  const std::array<std::uint64_t, 4>& t,
                                  std::uint64_t M) {
  return {(g[0] * t[0] + g[1] * t[2]) % M, (g[0] * t[1] + g[1] * t[3]) % M,
          (g[2] * t[0] + g[3] * t[2]) % M, (g[2] * t[1] + g[3] * t[3]) % M};
}

long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t M) {
  long long x, y;
  long long g = egcd((long long)(a % M), (long long)M, x, y);
  if (g != 1) throw std::domain_error("cosets: element not invertible");
  long long m = (long long)M;
  return (std::uint64_t)(((x % m) + m) % m);
}

std::vector<std::uint64_t> units_mod(std::uint64_t M) {
  std::vector<std::uint64_t> u;
  for (std::uint64_t a = 1; a < M; ++a)
    if (std::gcd(a, M) == 1) u.push_back(a);
  return u;
}

}  // namespace

std::uint64_t CosetSpace::phi(std::uint64_t m) {
  std::uint64_t r = m;
  for (std::uint64_t q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      r -= r / q;
      while (m % q == 0) m /= q;
    }
  if (m > 1) r -= r / m;
  return r;
}

std::uint64_t CosetSpace::gl2_order(std::uint64_t m) {
  // multiplicative over prime powers: |GL2(Z/q^e)| = q^(4(e-1)) (q^2-1)(q^2-q)
  std::uint64_t total = 1;
  std::uint64_t rest = m;
  for (std::uint64_t q = 2; rest > 1; ++q) {
    if (q * q > rest) q = rest;
    if (rest % q != 0) continue;
    std::uint64_t head = 1;  // q^(e-1)
    rest /= q;
    while (rest % q == 0) {
      rest /= q;
      head *= q;
    }
    std::uint64_t h4 = head * head * head * head;
    total *= h4 * (q * q - 1) * (q * q - q);
  }
  return total;
}

CosetSpace::CosetSpace(const QuatOrder& order, std::uint64_t N, std::uint64_t p)
    : order_(&order), N_(N), p_(p), M_(N * p) {
  if (M_ < 2) throw std::domain_error("cosets: modulus must be at least 2");
  if (M_ % 2 == 0) throw std::domain_error("cosets: modulus must be odd");
  if (std::gcd((std::uint64_t)std::llabs(order.discriminant()), M_) != 1)
    throw std::domain_error("cosets: modulus must be coprime to the order discriminant");
  build_cosets();
  build_orbits();
  build_lifts();
}

void CosetSpace::build_cosets() {
  const std::uint64_t M = M_;
  // Γ̄₁ generators acting on the right: shear (1 1; 0 1) and diag(1,u).
  std::vector<std::array<std::uint64_t, 4>> moves;
  moves.push_back({1, 1, 0, 1});
  for (std::uint64_t u : units_mod(M)) moves.push_back({1, 0, 0, u});

  // scan all invertible matrices in lexicographic order; each unseen one
  // seeds a breadth-first sweep of its full right Γ̄₁-orbit
  for (std::uint64_t a = 0; a < M; ++a)
    for (std::uint64_t b = 0; b < M; ++b)
      for (std::uint64_t c = 0; c < M; ++c)
        for (std::uint64_t d = 0; d < M; ++d) {
          std::array<std::uint64_t, 4> g{a, b, c, d};
          if (std::gcd(det_mod(g, M), M) != 1) continue;
          if (coset_index_.count(g)) continue;
          int id = (int)cosets_.size();
          cosets_.push_back(g);  // first-encountered = lex-minimal member
          std::deque<std::array<std::uint64_t, 4>> queue{g};
          coset_index_[g] = id;
          while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            for (const auto& t : moves) {
              auto nxt = rmul(cur, t, M);
              if (coset_index_.emplace(nxt, id).second) queue.push_back(nxt);
            }
          }
        }

  const std::uint64_t expect = gl2_order(M) / (M * phi(M));
  if (cosets_.size() != expect)
    throw std::runtime_error("cosets: enumeration disagrees with the group-order count");
}

int CosetSpace::coset_id(const Mat2Z& g) const {
  if (g.mod != M_) throw std::domain_error("cosets: matrix has wrong modulus");
  auto it = coset_index_.find({g.a % M_, g.b % M_, g.c % M_, g.d % M_});
  if (it == coset_index_.end())
    throw std::domain_error("cosets: matrix is not invertible mod M");
  return it->second;
}

Mat2Z CosetSpace::coset_matrix(int cid) const {
  const auto& g = cosets_[(std::size_t)cid];
  return Mat2Z{g[0], g[1], g[2], g[3], M_};
}

void CosetSpace::build_orbits() {
  const int n = coset_count();
  orbit_of_.assign((std::size_t)n, -1);
  aligner_.resize((std::size_t)n);
  const auto& units = order_->units();

  std::vector<Mat2Z> unit_mats;
  unit_mats.reserve(units.size());
  for (const auto& u : units) unit_mats.push_back(order_->embed_mod(u, M_));

  auto act = [&](const Mat2Z& m, int cid) {
    auto g = cosets_[(std::size_t)cid];
    Mat2Z gm{g[0], g[1], g[2], g[3], M_};
    return coset_id(m.mul(gm));
  };

  for (int start = 0; start < n; ++start) {
    if (orbit_of_[(std::size_t)start] >= 0) continue;
    int orbit = (int)orbit_rep_.size();
    orbit_rep_.push_back(start);
    orbit_of_[(std::size_t)start] = orbit;
    aligner_[(std::size_t)start] = order_->one();
    std::deque<int> queue{start};
    std::size_t orbit_size = 1;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < units.size(); ++k) {
        int nxt = act(unit_mats[k], cur);
        if (orbit_of_[(std::size_t)nxt] >= 0) continue;
        orbit_of_[(std::size_t)nxt] = orbit;
        // aligner(next) = aligner(cur) · u⁻¹; the inverse of a norm-one
        // unit is its conjugate
        aligner_[(std::size_t)nxt] =
            order_->mul(aligner_[(std::size_t)cur], order_->conj(units[k]));
        queue.push_back(nxt);
        ++orbit_size;
      }
    }
    if (orbit_size != units.size())
      throw std::runtime_error("cosets: unit action is not free at this level");
  }
}

std::array<long long, 4> sl2_lift(const Mat2Z& g) {
  const long long M = (long long)g.mod;
  // normalize determinant to 1 by scaling the second column (a column
  // operation inside Γ̄₁, so the coset is unchanged)
  std::uint64_t det = g.det();
  std::uint64_t s = inv_mod(det, g.mod);
  long long a = (long long)(g.a % g.mod), c = (long long)(g.c % g.mod);
  long long b = (long long)((g.b * s) % g.mod), d = (long long)((g.d * s) % g.mod);

  // adjust the first column within its residue class until its entries are
  // coprime over the integers
  long long ap = a, cp = c;
  bool found = false;
  for (int i = 0; i <= 64 && !found; ++i)
    for (int j = 0; j <= 64 && !found; ++j) {
      long long x, y;
      if (egcd(a + i * M, c + j * M, x, y) == 1) {
        ap = a + i * M;
        cp = c + j * M;
        found = true;
      }
    }
  if (!found) throw std::runtime_error("cosets: no coprime lift of the first column");

  // det(ap b''; cp d'') = 1 with (b'',d'') ≡ (b,d): write the defect as a
  // multiple of M and split it across the second column via Bézout
  long long base = ap * d - cp * b;  // ≡ 1 (mod M)
  long long e = (1 - base) / M;
  long long x, y;
  egcd(ap, cp, x, y);  // ap·x + cp·y = 1
  long long bpp = b - M * (e * y);
  long long dpp = d + M * (e * x);
  std::array<long long, 4> out{ap, bpp, cp, dpp};
  if (out[0] * out[3] - out[1] * out[2] != 1)
    throw std::runtime_error("cosets: lift determinant is not one");
  return out;
}

void CosetSpace::build_lifts() {
  lifts_.reserve(orbit_rep_.size());
  for (int rep : orbit_rep_) lifts_.push_back(sl2_lift(coset_matrix(rep)));
}

}  // namespace qspec
