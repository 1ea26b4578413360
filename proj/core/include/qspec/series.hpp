#pragma once

#include <stdexcept>
#include <vector>

namespace qspec {

// Truncated power series in one variable T over a coefficient ring R.
//
// R must carry its own context and provide:
//   R operator+(R), operator-(R), operator*(R), unary -
//   R zero_like() const, one_like() const, from_int_like(long long) const
//   bool is_unit() const, is_zero_at_prec() const
//   R inverse() const
//   int prec() const; R reduced(int) const
//
// A series of length M stores coefficients of T^0..T^{M-1}; all operations
// truncate pessimistically to the shorter operand.
template <typename R>
class TruncSeries {
 public:
  TruncSeries(const R& proto, std::size_t len)
      : c_(len, proto.zero_like()) {
    if (len == 0) throw std::invalid_argument("series length must be positive");
  }

  static TruncSeries constant(const R& value, std::size_t len) {
    TruncSeries s(value, len);
    s.c_[0] = value;
    return s;
  }

  static TruncSeries from_coeffs(std::vector<R> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("series length must be positive");
    TruncSeries s(coeffs[0], coeffs.size());
    s.c_ = std::move(coeffs);
    return s;
  }

  std::size_t len() const { return c_.size(); }
  const R& coeff(std::size_t i) const { return c_.at(i); }
  void set_coeff(std::size_t i, const R& v) { c_.at(i) = v; }
  const std::vector<R>& coeffs() const { return c_; }
  R proto() const { return c_[0].zero_like(); }

  TruncSeries truncated(std::size_t new_len) const {
    if (new_len == 0) throw std::invalid_argument("series length must be positive");
    TruncSeries out(proto(), new_len);
    for (std::size_t i = 0; i < new_len && i < c_.size(); ++i) out.c_[i] = c_[i];
    return out;
  }

  TruncSeries operator+(const TruncSeries& o) const {
    std::size_t n = std::min(len(), o.len());
    TruncSeries out(proto(), n);
    for (std::size_t i = 0; i < n; ++i) out.c_[i] = c_[i] + o.c_[i];
    return out;
  }

  TruncSeries operator-(const TruncSeries& o) const {
    std::size_t n = std::min(len(), o.len());
    TruncSeries out(proto(), n);
    for (std::size_t i = 0; i < n; ++i) out.c_[i] = c_[i] - o.c_[i];
    return out;
  }

  TruncSeries operator-() const {
    TruncSeries out(proto(), len());
    for (std::size_t i = 0; i < len(); ++i) out.c_[i] = -c_[i];
    return out;
  }

  TruncSeries operator*(const TruncSeries& o) const {
    std::size_t n = std::min(len(), o.len());
    TruncSeries out(proto(), n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; i + j < n; ++j) {
        out.c_[i + j] = out.c_[i + j] + c_[i] * o.c_[j];
      }
    }
    return out;
  }

  TruncSeries scale(const R& s) const {
    TruncSeries out(proto(), len());
    for (std::size_t i = 0; i < len(); ++i) out.c_[i] = c_[i] * s;
    return out;
  }

  // d/dT
  TruncSeries derivative() const {
    TruncSeries out(proto(), len());
    for (std::size_t i = 0; i + 1 < len(); ++i) {
      out.c_[i] = c_[i + 1] * c_[0].from_int_like((long long)(i + 1));
    }
    return out;
  }

  // Multiplicative inverse; requires unit constant term.
  TruncSeries inverse() const {
    if (!c_[0].is_unit()) throw std::domain_error("series inverse needs unit constant term");
    TruncSeries out(proto(), len());
    R inv0 = c_[0].inverse();
    out.c_[0] = inv0;
    for (std::size_t k = 1; k < len(); ++k) {
      R acc = c_[0].zero_like();
      for (std::size_t i = 1; i <= k; ++i) acc = acc + c_[i] * out.c_[k - i];
      out.c_[k] = -(inv0 * acc);
    }
    return out;
  }

  // Integer power; negative exponents go through inverse().
  TruncSeries pow_int(long long e) const {
    if (e < 0) return inverse().pow_int(-e);
    TruncSeries acc = constant(c_[0].one_like(), len());
    TruncSeries base = *this;
    unsigned long long u = (unsigned long long)e;
    while (u) {
      if (u & 1) acc = acc * base;
      base = base * base;
      u >>= 1;
    }
    return acc;
  }

  // Horner evaluation of the stored truncation at a point.
  R evaluate(const R& x) const {
    R acc = c_[len() - 1];
    for (std::size_t i = len() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // Substitution this(g). Exact only when *this represents a genuine
  // polynomial (its stored length covers the true degree); with a nonzero
  // g(0), truncated input degrees would otherwise contaminate low output
  // degrees.
  TruncSeries compose(const TruncSeries& g) const {
    TruncSeries acc = constant(c_[len() - 1], g.len());
    for (std::size_t i = len() - 1; i-- > 0;) {
      acc = acc * g;
      acc.c_[0] = acc.c_[0] + c_[i];
    }
    return acc;
  }

  // Degree of the last coefficient that is nonzero at stored precision, or
  // -1 for the (apparent) zero series.
  long long apparent_degree() const {
    for (std::size_t i = len(); i-- > 0;)
      if (!c_[i].is_zero_at_prec()) return (long long)i;
    return -1;
  }

  // Reduce every coefficient to the given scalar precision.
  TruncSeries reduced(int new_prec) const {
    TruncSeries out(proto(), len());
    for (std::size_t i = 0; i < len(); ++i) out.c_[i] = c_[i].reduced(new_prec);
    return out;
  }

  int min_prec() const {
    int m = c_[0].prec();
    for (const auto& x : c_) m = std::min(m, x.prec());
    return m;
  }

 private:
  std::vector<R> c_;
};

}  // namespace qspec
