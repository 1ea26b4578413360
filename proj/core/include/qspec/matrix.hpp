#pragma once
// Minimal dense matrix over a coefficient ring following the zero_like /
// one_like prototype discipline of the series layer.
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qspec {

template <class R>
struct DenseMat {
  int rows = 0, cols = 0;
  std::vector<R> e;

  DenseMat() = default;
  DenseMat(const R& proto, int r, int c)
      : rows(r), cols(c), e((std::size_t)r * (std::size_t)c, proto.zero_like()) {}

  R& at(int i, int j) { return e[(std::size_t)i * (std::size_t)cols + (std::size_t)j]; }
  const R& at(int i, int j) const {
    return e[(std::size_t)i * (std::size_t)cols + (std::size_t)j];
  }

  DenseMat mul(const DenseMat& o) const {
    if (cols != o.rows) throw std::domain_error("matrix: dimension mismatch");
    DenseMat out(e[0].zero_like(), rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const R& x = at(i, k);
        for (int j = 0; j < o.cols; ++j) out.at(i, j) = out.at(i, j) + x * o.at(k, j);
      }
    return out;
  }

  DenseMat add_scaled(const DenseMat& o, const R& s) const {
    if (rows != o.rows || cols != o.cols) throw std::domain_error("matrix: shape mismatch");
    DenseMat out = *this;
    for (std::size_t i = 0; i < e.size(); ++i) out.e[i] = out.e[i] + o.e[i] * s;
    return out;
  }

  static DenseMat identity(const R& proto, int n) {
    DenseMat out(proto, n, n);
    for (int i = 0; i < n; ++i) out.at(i, i) = proto.one_like();
    return out;
  }
};

}  // namespace qspec
