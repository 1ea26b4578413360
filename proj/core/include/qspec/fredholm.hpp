#pragma once
// Characteristic (Fredholm) series det(1 - T*A) of a square matrix over a
// coefficient ring, by the division-free Samuelson-Berkowitz recursion.
//
// Division-freeness matters here: the coefficient rings carry finite p-adic
// precision, and Gaussian elimination would both divide by non-units and
// obscure the precision of the output.  Berkowitz only adds and multiplies,
// so every output coefficient carries the honest propagated precision of the
// inputs.
#include <stdexcept>
#include <vector>

#include "qspec/iwasawa.hpp"
#include "qspec/matrix.hpp"
#include "qspec/series.hpp"

namespace qspec {

// det(1 - T*A) as a truncated series of length min(n, max_terms) + 1.
// With max_terms < 0 the full degree-n polynomial is produced.  Truncation
// is worth asking for when n is large: the recursion then costs
// O(max_terms * n^3) instead of O(n^4).
template <class R>
TruncSeries<R> fredholm_series(const DenseMat<R>& A, int max_terms = -1) {
  if (A.rows != A.cols) throw std::domain_error("fredholm: matrix not square");
  const int n = A.rows;
  const int K = (max_terms < 0 || max_terms > n) ? n : max_terms;
  if (n == 0) throw std::domain_error("fredholm: empty matrix has no prototype");
  const R zero = A.at(0, 0).zero_like();
  const R one = A.at(0, 0).one_like();
  if (n == 1) {
    std::vector<R> c{one, -A.at(0, 0)};
    c.resize((std::size_t)K + 1, zero);
    return TruncSeries<R>::from_coeffs(std::move(c));
  }

  // p holds the coefficient vector of det(lambda*I - A_k) for the leading
  // principal k x k block, truncated to the K+1 lowest charpoly coefficients
  // c_0..c_K where charpoly(lambda) = sum c_i lambda^{k-i}.  Those low
  // coefficients are exactly the coefficients of det(1 - T*A_k), which is
  // what makes the truncation sound: coefficient i of the next stage only
  // consumes coefficients <= i of the previous one.
  std::vector<R> p{one, -A.at(0, 0)};
  std::vector<R> s, q, v, w;
  for (int k = 2; k <= n; ++k) {
    const int m = k - 1;  // size of the previous principal block
    const int slen = std::min(k, K + 1);
    // s[0] = a_kk, s[j] = Row * M^{j-1} * Col for j >= 1, where M is the
    // leading m x m block, Row = A[m][0..m-1], Col = A[0..m-1][m].
    s.assign((std::size_t)slen, zero);
    s[0] = A.at(m, m);
    if (slen > 1) {
      v.assign((std::size_t)m, zero);
      for (int i = 0; i < m; ++i) v[(std::size_t)i] = A.at(i, m);
      for (int j = 1; j < slen; ++j) {
        if (j > 1) {
          w.assign((std::size_t)m, zero);
          for (int i = 0; i < m; ++i) {
            R acc = zero;
            for (int t = 0; t < m; ++t) acc = acc + A.at(i, t) * v[(std::size_t)t];
            w[(std::size_t)i] = acc;
          }
          v.swap(w);
        }
        R acc = zero;
        for (int t = 0; t < m; ++t) acc = acc + A.at(m, t) * v[(std::size_t)t];
        s[(std::size_t)j] = acc;
      }
    }
    // q = (lower-triangular Toeplitz from [1, -s]) * p, truncated.
    const int qlen = std::min(k + 1, K + 1);
    q.assign((std::size_t)qlen, zero);
    for (int i = 0; i < qlen; ++i) {
      R acc = (i < (int)p.size()) ? p[(std::size_t)i] : zero;
      for (int j = 0; j < slen && j < i; ++j) {
        const int pi = i - 1 - j;
        if (pi < (int)p.size()) acc = acc - s[(std::size_t)j] * p[(std::size_t)pi];
      }
      q[(std::size_t)i] = acc;
    }
    p.swap(q);
  }
  p.resize((std::size_t)K + 1, zero);
  return TruncSeries<R>::from_coeffs(std::move(p));
}

// Fredholm series over the weight-family ring.  Matrix entries carry small
// forced p-denominators (dpow); feeding them straight into the recursion
// would stack denominators on intermediates until no certified digits
// remain.  Instead the matrix is scaled entrywise to p^dmax * A (an exact
// operation that gains precision), the recursion runs denominator-free, and
// coefficient i is divided back by p^{i*dmax}.  Coefficient i therefore
// loses i*dmax digits -- the honest cost of the denominators -- and nothing
// more.  Use max_terms to stay within certified range on large matrices.
TruncSeries<IwasawaElement> fredholm_series_family(const DenseMat<IwasawaElement>& A,
                                                   int max_terms = -1);

// Valuation floor for the error made by computing coefficient n of the
// Fredholm series from the finite corner of size B instead of the full
// compact operator, given the decay certificate v(column c) >= c - defect
// for every column (certify_decay / certify_decay_family).
//
// Coefficient n is a sum of n x n principal minors over column subsets; the
// subsets missed by the corner contain a column index >= B, and the cheapest
// one combines it with columns 0..n-2, giving
//   (B - defect) + sum_{i=0}^{n-2} (i - defect) = B + (n-1)(n-2)/2 - n*defect.
inline int fredholm_tail_valuation(int corner, int n, int defect = 0) {
  if (n <= 0) throw std::domain_error("fredholm: tail bound needs n >= 1");
  return corner + ((n - 1) * (n - 2)) / 2 - n * defect;
}

}  // namespace qspec
