#include "qspec/u256.hpp"

#include <algorithm>

namespace qspec {
namespace detail {

void divrem_u32(const std::uint32_t* u_in, int ulen, const std::uint32_t* v_in, int vlen,
                std::uint32_t* q, std::uint32_t* r) {
  while (vlen > 1 && v_in[vlen - 1] == 0) --vlen;
  if (vlen == 1 && v_in[0] == 0) throw std::domain_error("division by zero");

  if (vlen == 1) {
    std::uint64_t d = v_in[0], rem = 0;
    for (int i = ulen - 1; i >= 0; --i) {
      std::uint64_t cur = (rem << 32) | u_in[i];
      q[i] = (std::uint32_t)(cur / d);
      rem = cur % d;
    }
    r[0] = (std::uint32_t)rem;
    return;
  }

  // Normalize so the top divisor limb has its high bit set.
  int s = 0;
  {
    std::uint32_t top = v_in[vlen - 1];
    while (!(top & 0x80000000u)) {
      top <<= 1;
      ++s;
    }
  }
  std::uint32_t vn[18], un[34];
  for (int i = vlen - 1; i > 0; --i)
    vn[i] = (std::uint32_t)((v_in[i] << s) | (s ? ((std::uint64_t)v_in[i - 1] >> (32 - s)) : 0));
  vn[0] = v_in[0] << s;
  un[ulen] = s ? (std::uint32_t)((std::uint64_t)u_in[ulen - 1] >> (32 - s)) : 0;
  for (int i = ulen - 1; i > 0; --i)
    un[i] = (std::uint32_t)((u_in[i] << s) | (s ? ((std::uint64_t)u_in[i - 1] >> (32 - s)) : 0));
  un[0] = u_in[0] << s;

  const std::uint64_t base = 1ull << 32;
  for (int j = ulen - vlen; j >= 0; --j) {
    std::uint64_t num = ((std::uint64_t)un[j + vlen] << 32) | un[j + vlen - 1];
    std::uint64_t qhat = num / vn[vlen - 1];
    std::uint64_t rhat = num % vn[vlen - 1];
    while (qhat >= base ||
           qhat * (std::uint64_t)vn[vlen - 2] > ((rhat << 32) | un[j + vlen - 2])) {
      --qhat;
      rhat += vn[vlen - 1];
      if (rhat >= base) break;
    }
    // multiply-subtract
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (int i = 0; i < vlen; ++i) {
      std::uint64_t prod = qhat * vn[i] + carry;
      carry = prod >> 32;
      std::int64_t t = (std::int64_t)un[i + j] - (std::int64_t)(prod & 0xffffffffu) - borrow;
      un[i + j] = (std::uint32_t)t;
      borrow = (t < 0) ? 1 : 0;
    }
    std::int64_t t = (std::int64_t)un[j + vlen] - (std::int64_t)carry - borrow;
    un[j + vlen] = (std::uint32_t)t;
    if (t < 0) {
      // rare correction: qhat was one too large
      --qhat;
      std::uint64_t c2 = 0;
      for (int i = 0; i < vlen; ++i) {
        std::uint64_t sum = (std::uint64_t)un[i + j] + vn[i] + c2;
        un[i + j] = (std::uint32_t)sum;
        c2 = sum >> 32;
      }
      un[j + vlen] = (std::uint32_t)((std::uint64_t)un[j + vlen] + c2);
    }
    q[j] = (std::uint32_t)qhat;
  }
  for (int i = ulen - vlen + 1; i < ulen; ++i) q[i] = 0;
  // Denormalize remainder.
  for (int i = 0; i < vlen - 1; ++i)
    r[i] = (std::uint32_t)((un[i] >> s) | (s ? ((std::uint64_t)un[i + 1] << (32 - s)) : 0));
  r[vlen - 1] = un[vlen - 1] >> s;
}

}  // namespace detail

U256 mod_u512(const U512& x, const U256& m) {
  if (m.is_zero()) throw std::domain_error("mod 0");
  std::uint32_t u[34], v[8], q[34], r[8];
  detail::to_u32(x.w.data(), 8, u);
  detail::to_u32(m.w.data(), 4, v);
  int ulen = 16, vlen = 8;
  while (vlen > 1 && v[vlen - 1] == 0) --vlen;
  while (ulen > vlen && u[ulen - 1] == 0) --ulen;
  if (ulen < vlen) {
    U256 out;
    detail::from_u32(u, ulen, out.w.data(), 4);
    return out;
  }
  detail::divrem_u32(u, ulen, v, vlen, q, r);
  U256 out;
  detail::from_u32(r, vlen, out.w.data(), 4);
  return out;
}

U256 from_decimal(const std::string& s) {
  U256 acc;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal digit");
    // acc = acc*10 + d
    U256 ten(10);
    U512 prod = mul_wide(acc, ten);
    if (prod.w[4] | prod.w[5] | prod.w[6] | prod.w[7]) throw std::overflow_error("U256 decimal overflow");
    for (int i = 0; i < 4; ++i) acc.w[i] = prod.w[i];
    acc = add_wrap(acc, U256((std::uint64_t)(ch - '0')));
  }
  return acc;
}

std::string to_decimal(const U256& a) {
  if (a.is_zero()) return "0";
  U256 cur = a;
  std::string out;
  while (!cur.is_zero()) {
    std::uint64_t rem;
    cur = divrem_u64(cur, 1000000000ull, rem);
    char buf[10];
    for (int i = 0; i < 9; ++i) {
      buf[i] = (char)('0' + rem % 10);
      rem /= 10;
    }
    for (int i = 0; i < 9; ++i) out.push_back(buf[i]);
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace qspec
