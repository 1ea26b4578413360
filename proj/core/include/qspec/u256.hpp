#pragma once
// Fixed-width unsigned integers for residue arithmetic mod p^N (p^N < 2^256).
// U256 holds values; products widen to U512; division is Knuth-D on 32-bit limbs.
#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

namespace qspec {

struct U256 {
  std::array<std::uint64_t, 4> w{0, 0, 0, 0};

  U256() = default;
  explicit U256(std::uint64_t lo) : w{lo, 0, 0, 0} {}

  bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
  bool fits_u64() const { return (w[1] | w[2] | w[3]) == 0; }
  std::uint64_t lo64() const { return w[0]; }

  friend bool operator==(const U256& a, const U256& b) { return a.w == b.w; }
  friend bool operator!=(const U256& a, const U256& b) { return !(a == b); }
};

inline int cmp(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.w[i] < b.w[i]) return -1;
    if (a.w[i] > b.w[i]) return 1;
  }
  return 0;
}
inline bool operator<(const U256& a, const U256& b) { return cmp(a, b) < 0; }

// a + b, wrap-around (callers ensure no overflow matters or handle carry).
inline U256 add_wrap(const U256& a, const U256& b) {
  U256 r;
  unsigned __int128 carry = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 s = (unsigned __int128)a.w[i] + b.w[i] + carry;
    r.w[i] = (std::uint64_t)s;
    carry = s >> 64;
  }
  return r;
}

// a - b, requires a >= b.
inline U256 sub(const U256& a, const U256& b) {
  U256 r;
  unsigned __int128 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 d = (unsigned __int128)a.w[i] - b.w[i] - borrow;
    r.w[i] = (std::uint64_t)d;
    borrow = (d >> 64) & 1;
  }
  return r;
}

struct U512 {
  std::array<std::uint64_t, 8> w{};
};

inline U512 mul_wide(const U256& a, const U256& b) {
  U512 r;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t carry = 0;
    for (int j = 0; j < 4; ++j) {
      unsigned __int128 cur = (unsigned __int128)a.w[i] * b.w[j] + r.w[i + j] + carry;
      r.w[i + j] = (std::uint64_t)cur;
      carry = (std::uint64_t)(cur >> 64);
    }
    r.w[i + 4] = carry;
  }
  return r;
}

namespace detail {

// Knuth algorithm D on 32-bit limbs. u has ulen limbs, v has vlen limbs
// (v trimmed, vlen >= 1). Quotient into q (ulen limbs), remainder into r (vlen).
void divrem_u32(const std::uint32_t* u, int ulen, const std::uint32_t* v, int vlen,
                std::uint32_t* q, std::uint32_t* r);

inline void to_u32(const std::uint64_t* src, int n64, std::uint32_t* dst) {
  for (int i = 0; i < n64; ++i) {
    dst[2 * i] = (std::uint32_t)src[i];
    dst[2 * i + 1] = (std::uint32_t)(src[i] >> 32);
  }
}
inline void from_u32(const std::uint32_t* src, int n32, std::uint64_t* dst, int n64) {
  for (int i = 0; i < n64; ++i) dst[i] = 0;
  for (int i = 0; i < n32 && i / 2 < n64; ++i)
    dst[i / 2] |= (std::uint64_t)src[i] << (32 * (i % 2));
}

}  // namespace detail

// (hi:lo 512-bit value) mod m, m != 0.
U256 mod_u512(const U512& x, const U256& m);

// a*b mod m for a,b < m.
inline U256 mulmod(const U256& a, const U256& b, const U256& m) {
  if (m.fits_u64()) {
    unsigned __int128 p = (unsigned __int128)a.w[0] * b.w[0];
    return U256((std::uint64_t)(p % m.w[0]));
  }
  return mod_u512(mul_wide(a, b), m);
}

inline U256 addmod(const U256& a, const U256& b, const U256& m) {
  // a,b < m < 2^255 so no wrap.
  U256 s = add_wrap(a, b);
  if (!(cmp(s, m) < 0)) s = sub(s, m);
  return s;
}

inline U256 submod(const U256& a, const U256& b, const U256& m) {
  if (cmp(a, b) >= 0) return sub(a, b);
  return sub(add_wrap(a, m), b);
}

// division with remainder of a 256-bit value by u64, returning quotient; rem out-param.
inline U256 divrem_u64(const U256& a, std::uint64_t d, std::uint64_t& rem) {
  U256 q;
  unsigned __int128 r = 0;
  for (int i = 3; i >= 0; --i) {
    unsigned __int128 cur = (r << 64) | a.w[i];
    q.w[i] = (std::uint64_t)(cur / d);
    r = cur % d;
  }
  rem = (std::uint64_t)r;
  return q;
}

U256 from_decimal(const std::string& s);
std::string to_decimal(const U256& a);

}  // namespace qspec
