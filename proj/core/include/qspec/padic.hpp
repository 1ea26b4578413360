#pragma once
// Exact p-adic scalars: residues mod p^N with pessimistic absolute-precision
// tracking. Every operation reports the precision it can certify; divisions
// reduce precision by the valuation of the divisor, never silently.
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qspec/u256.hpp"

namespace qspec {

class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& m) : std::runtime_error(m) {}
};

// Cached modulus data for (p, N). p^N must stay below 2^255.
struct PadicCtx {
  std::uint32_t p = 0;
  int prec = 0;
  U256 modulus;
};
const PadicCtx& padic_ctx(std::uint32_t p, int prec);
int max_padic_prec(std::uint32_t p);

class PadicScalar {
 public:
  PadicScalar() = default;  // invalid sentinel (p = 0)

  static PadicScalar from_residue(std::uint32_t p, int prec, U256 v);
  static PadicScalar from_int(std::uint32_t p, int prec, long long v);
  // num/den with p ∤ den.
  static PadicScalar from_rational(std::uint32_t p, int prec, long long num, long long den);
  static PadicScalar zero(std::uint32_t p, int prec) { return from_int(p, prec, 0); }
  static PadicScalar one(std::uint32_t p, int prec) { return from_int(p, prec, 1); }

  std::uint32_t prime() const { return p_; }
  int prec() const { return prec_; }
  const U256& residue() const { return v_; }
  bool valid() const { return p_ != 0; }
  bool is_zero_at_prec() const { return v_.is_zero(); }

  // Context-carrying factories for generic (series) code.
  PadicScalar zero_like() const { return zero(p_, prec_); }
  PadicScalar one_like() const { return one(p_, prec_); }
  PadicScalar from_int_like(long long v) const { return from_int(p_, prec_, v); }

  PadicScalar reduced(int new_prec) const;

  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  PadicScalar operator-() const;
  PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
  PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
  PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

  // p-adic valuation of the residue; exact=false means the value is 0 mod p^prec
  // so only "v >= prec" is known.
  struct Val {
    int v;
    bool exact;
  };
  Val valuation() const;

  bool is_unit() const;
  PadicScalar inverse() const;  // unit argument only
  // General division: requires v(b) exact and v(a) >= v(b); costs v(b) precision.
  PadicScalar divide_by(const PadicScalar& b) const;
  PadicScalar mul_p_pow(int t) const;       // exact multiplication by p^t, gains t precision
  PadicScalar div_exact_p_pow(int t) const; // exact division by p^t, loses t precision
  PadicScalar pow_u64(std::uint64_t e) const;

  // Congruence at the weaker of the two precisions.
  bool same_mod_min_prec(const PadicScalar& o) const;

  std::string str() const;  // "residue mod p^prec" rendering

 private:
  std::uint32_t p_ = 0;
  int prec_ = 0;
  U256 v_;
};

// Teichmüller representative of the unit a (Newton on x^{p-1} = 1).
PadicScalar teichmuller(const PadicScalar& a);

// u^s for u ≡ 1 mod p, s ∈ Z_p, via the binomial series Σ C(s,n)(u-1)^n with
// guard digits so the certified output precision is min(prec u, prec s + v(u-1)).
PadicScalar one_unit_power(const PadicScalar& u, const PadicScalar& s);
PadicScalar one_unit_power_int(const PadicScalar& u, long long k);

// log of a 1-unit (v(u-1) >= 1).
PadicScalar log_one_unit(const PadicScalar& u);

// Binomial C(s, n) for s ∈ Z_p, small n; computed with guard digits.
PadicScalar padic_binomial(const PadicScalar& s, unsigned n);

}  // namespace qspec
