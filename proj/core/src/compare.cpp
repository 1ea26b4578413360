#include "qspec/compare.hpp"

#include <random>

namespace qspec {

namespace {

bool same_series(const TruncSeries<PadicScalar>& a, const TruncSeries<PadicScalar>& b) {
  if (a.len() != b.len()) return false;
  for (std::size_t i = 0; i < a.len(); ++i)
    if (!(a.coeff(i) - b.coeff(i)).is_zero_at_prec()) return false;
  return true;
}

}  // namespace

CompareVerdict compare_characters(const FiniteHeckeModule& A, const FiniteHeckeModule& B,
                                  int random_combos, std::uint64_t seed) {
  CompareVerdict v;
  v.seed = seed;
  if (A.dim != B.dim) {
    v.detail = "dimension mismatch";
    return v;
  }
  if (A.hecke.size() != B.hecke.size())
    throw std::domain_error("compare: generator lists have different lengths");
  if (A.dim == 0) {
    v.consistent = true;
    return v;
  }
  const PadicScalar zero = A.u_matrix.e[0].zero_like();
  const int d = A.dim;

  auto check_h = [&](const DenseMat<PadicScalar>& hA, const DenseMat<PadicScalar>& hB,
                     const std::string& label) {
    ++v.tested;
    const auto chA = fredholm_series(hA.mul(A.u_matrix));
    const auto chB = fredholm_series(hB.mul(B.u_matrix));
    if (!same_series(chA, chB)) {
      v.detail = "det(1 - T h U) differs for h = " + label;
      return false;
    }
    return true;
  };

  const auto idA = DenseMat<PadicScalar>::identity(zero, d);
  const auto idB = DenseMat<PadicScalar>::identity(zero, d);
  if (!check_h(idA, idB, "1")) return v;
  for (std::size_t g = 0; g < A.hecke.size(); ++g)
    if (!check_h(A.hecke[g], B.hecke[g], "generator " + std::to_string(g + 1))) return v;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int rep = 0; rep < random_combos; ++rep) {
    DenseMat<PadicScalar> hA = idA, hB = idB;
    const int c0 = coeff(rng);
    std::string label = std::to_string(c0) + "*1";
    const PadicScalar c0s = zero.from_int_like(c0);
    for (int i = 0; i < d; ++i) {
      hA.at(i, i) = c0s;
      hB.at(i, i) = c0s;
    }
    for (std::size_t g = 0; g < A.hecke.size(); ++g) {
      const int c = coeff(rng);
      label += " + " + std::to_string(c) + "*g" + std::to_string(g + 1);
      const PadicScalar cs = zero.from_int_like(c);
      hA = hA.add_scaled(A.hecke[g], cs);
      hB = hB.add_scaled(B.hecke[g], cs);
    }
    if (!check_h(hA, hB, label)) return v;
  }
  v.consistent = true;
  return v;
}

}  // namespace qspec
