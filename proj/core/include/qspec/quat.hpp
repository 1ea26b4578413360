#pragma once
// Orders in definite rational quaternion algebras (i² = a, j² = b, k = ij with
// a, b < 0). Elements are integer coordinate vectors with respect to the
// order's basis; the built-in order is the Hurwitz maximal order in the
// algebra ramified exactly at 2 and ∞.
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "qspec/locan.hpp"
#include "qspec/padic.hpp"

namespace qspec {

// Rational quaternion x0 + x1 i + x2 j + x3 k with a common denominator.
struct Quat {
  std::array<long long, 4> num{0, 0, 0, 0};
  long long den = 1;
};

// 2x2 matrix over Z/M for small composite M (row-major a,b,c,d).
struct Mat2Z {
  std::uint64_t a = 0, b = 0, c = 0, d = 0;
  std::uint64_t mod = 0;
  bool operator==(const Mat2Z&) const = default;
  Mat2Z mul(const Mat2Z& o) const;
  std::uint64_t det() const;
};

class QuatOrder {
 public:
  using Coords = std::array<long long, 4>;

  // basis_rows[m] = numerators of the m-th basis element over `den`.
  QuatOrder(long long alg_a, long long alg_b, long long discriminant, long long den,
            std::array<std::array<long long, 4>, 4> basis_rows);

  static QuatOrder hurwitz();

  long long alg_a() const { return a_; }
  long long alg_b() const { return b_; }
  long long discriminant() const { return disc_; }

  Quat to_quat(const Coords& c) const;
  // Throws std::domain_error when q does not lie in the order.
  Coords from_quat(const Quat& q) const;
  bool contains(const Quat& q) const;

  Coords one() const;
  Coords mul(const Coords& x, const Coords& y) const;
  Coords conj(const Coords& x) const;
  long long nrd(const Coords& x) const;
  long long trd(const Coords& x) const;
  bool is_unit(const Coords& x) const { return nrd(x) == 1; }

  const std::vector<Coords>& units() const;
  // All elements of reduced norm n (n >= 1), in a deterministic order.
  std::vector<Coords> enumerate_by_norm(long long n) const;

  // Splitting at an odd prime power l^prec with l ∤ 2ab·disc: an algebra map
  // into 2x2 matrices with det = nrd. Deterministic per (l, prec).
  MonoidMatrix embed(const Coords& x, std::uint32_t l, int prec) const;
  // Same map mod squarefree odd M prime to 2ab·disc, assembled by CRT.
  Mat2Z embed_mod(const Coords& x, std::uint64_t M) const;

 private:
  long long a_, b_, disc_, den_;
  std::array<std::array<long long, 4>, 4> basis_;     // rows: numerators over den_
  std::array<std::array<long long, 4>, 4> adj_;       // adjugate of the basis matrix
  long long basis_det_;
  mutable std::vector<Coords> units_;
  // (y, t) with y^2 - a t^2 = b mod l^prec, keyed by (l, prec)
  mutable std::map<std::pair<std::uint32_t, int>, std::pair<PadicScalar, PadicScalar>> split_;

  std::pair<PadicScalar, PadicScalar> splitting_point(std::uint32_t l, int prec) const;
  Quat quat_mul(const Quat& x, const Quat& y) const;
};

}  // namespace qspec
