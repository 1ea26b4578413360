#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "qspec/branches.hpp"
#include "qspec/cosets.hpp"
#include "qspec/forms.hpp"
#include "qspec/quat.hpp"
#include "qspec/slope.hpp"

using namespace qspec;

namespace {

constexpr std::uint32_t P = 5;

DenseMat<PadicScalar> mat_of(int prec, const std::vector<std::vector<long long>>& rows) {
  const auto z = PadicScalar::zero(P, prec);
  DenseMat<PadicScalar> m(z, (int)rows.size(), (int)rows[0].size());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = z.from_int_like(rows[(std::size_t)i][(std::size_t)j]);
  return m;
}

DenseMat<PadicScalar> random_unimodular(std::mt19937_64& rng, int prec, int n) {
  const auto z = PadicScalar::zero(P, prec);
  std::uniform_int_distribution<long long> d(-50, 50);
  auto L = DenseMat<PadicScalar>::identity(z, n);
  auto U = DenseMat<PadicScalar>::identity(z, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) L.at(i, j) = z.from_int_like(d(rng));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) U.at(i, j) = z.from_int_like(d(rng));
  return L.mul(U);
}

bool all_censored(const DenseMat<PadicScalar>& m) {
  for (const auto& x : m.e)
    if (!x.is_zero_at_prec()) return false;
  return true;
}

// membership of v in the column span of an echelonized basis
bool in_span(const DenseMat<PadicScalar>& E, const std::vector<int>& piv,
             std::vector<PadicScalar> v) {
  for (int c = 0; c < E.cols; ++c) {
    const PadicScalar coeff = v[(std::size_t)piv[(std::size_t)c]];
    for (int r = 0; r < E.rows; ++r) v[(std::size_t)r] -= coeff * E.at(r, c);
  }
  for (const auto& x : v)
    if (!x.is_zero_at_prec()) return false;
  return true;
}

std::vector<PadicScalar> pm(const std::vector<PadicScalar>& a,
                            const std::vector<PadicScalar>& b) {
  std::vector<PadicScalar> r(a.size() + b.size() - 1, a[0].zero_like());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

PadicScalar horner(const std::vector<PadicScalar>& f, const PadicScalar& x) {
  PadicScalar acc = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * x + f[i];
  return acc;
}

bool series_is(const TruncSeries<PadicScalar>& s, const std::vector<long long>& want) {
  if (s.len() != want.size()) return false;
  const auto z = s.coeff(0).zero_like();
  for (std::size_t i = 0; i < want.size(); ++i)
    if (!(s.coeff(i) - z.from_int_like(want[i])).is_zero_at_prec()) return false;
  return true;
}

}  // namespace

TEST_CASE("column echelon saturates the span and reduces members") {
  std::mt19937_64 rng(911);
  for (int rep = 0; rep < 12; ++rep) {
    const int n = 5, d = 3, prec = 18;
    auto U = random_unimodular(rng, prec, n);
    // Y: the first d columns of U, scaled by assorted p powers.
    DenseMat<PadicScalar> Y(U.e[0].zero_like(), n, d);
    DenseMat<PadicScalar> Y0(U.e[0].zero_like(), n, d);
    std::uniform_int_distribution<int> pw(0, 3);
    for (int c = 0; c < d; ++c) {
      const int a = pw(rng);
      for (int r = 0; r < n; ++r) {
        Y0.at(r, c) = U.at(r, c);
        Y.at(r, c) = U.at(r, c).mul_p_pow(a).reduced(prec);
      }
    }
    auto E1 = Y, E2 = Y0;
    const auto piv1 = saturated_echelon(E1);
    const auto piv2 = saturated_echelon(E2);

    // pivots are exactly one, distinct rows, cleared elsewhere
    for (int c = 0; c < d; ++c) {
      CHECK((E1.at(piv1[(std::size_t)c], c) - E1.e[0].one_like()).is_zero_at_prec());
      for (int c2 = 0; c2 < d; ++c2)
        if (c2 != c) CHECK(E1.at(piv1[(std::size_t)c], c2).is_zero_at_prec());
    }

    // both echelon bases generate the same saturated lattice
    for (int c = 0; c < d; ++c) {
      std::vector<PadicScalar> v1, v2;
      for (int r = 0; r < n; ++r) {
        v1.push_back(E1.at(r, c));
        v2.push_back(E2.at(r, c));
      }
      CHECK(in_span(E2, piv2, v1));
      CHECK(in_span(E1, piv1, v2));
    }

    // idempotence
    auto E3 = E1;
    saturated_echelon(E3);
    for (std::size_t i = 0; i < E3.e.size(); ++i)
      CHECK((E3.e[i] - E1.e[i]).is_zero_at_prec());
  }

  // dependent columns are a precision failure, not a silent guess
  auto z = PadicScalar::zero(P, 10);
  DenseMat<PadicScalar> D(z, 3, 2);
  D.at(0, 0) = z.from_int_like(7);
  D.at(1, 0) = z.from_int_like(3);
  D.at(0, 1) = z.from_int_like(35);
  D.at(1, 1) = z.from_int_like(15);
  CHECK_THROWS_AS(saturated_echelon(D), PrecisionError);
}

TEST_CASE("unit-root factor: pinned cubic") {
  // f* = X^3 + X^2 + p has a single unit root b = -1 - p + 2p^2 + ...
  const int prec = 12;
  const auto z = PadicScalar::zero(P, prec);
  std::vector<PadicScalar> f = {z.from_int_like(5), z, z.one_like(), z.one_like()};
  auto A = hensel_unit_factor(f, 1);
  REQUIRE(A.size() == 2);
  CHECK((A[1] - z.one_like()).is_zero_at_prec());
  const PadicScalar root = -A[0];
  CHECK(root.is_unit());
  CHECK(horner(f, root).is_zero_at_prec());
  CHECK((root - z.from_int_like(44)).reduced(3).is_zero_at_prec());
}

TEST_CASE("unit-root factor: planted factorizations are recovered") {
  std::mt19937_64 rng(4242);
  const int prec = 16;
  const auto z = PadicScalar::zero(P, prec);
  std::uniform_int_distribution<long long> coeff(-60, 60);
  std::uniform_int_distribution<int> unit_digit(1, 4);
  for (int rep = 0; rep < 25; ++rep) {
    std::uniform_int_distribution<int> nd(2, 6);
    const int n = nd(rng);
    std::uniform_int_distribution<int> md(1, n - 1);
    const int m = md(rng);
    // A monic of degree m with unit constant term; B = X^{n-m} + p*(lower)
    std::vector<PadicScalar> A((std::size_t)m + 1, z);
    A[0] = z.from_int_like(unit_digit(rng) + 5 * coeff(rng));
    for (int i = 1; i < m; ++i) A[(std::size_t)i] = z.from_int_like(coeff(rng));
    A[(std::size_t)m] = z.one_like();
    std::vector<PadicScalar> B((std::size_t)(n - m) + 1, z);
    for (int i = 0; i < n - m; ++i) B[(std::size_t)i] = z.from_int_like(5 * coeff(rng));
    B[(std::size_t)(n - m)] = z.one_like();
    auto f = pm(A, B);
    auto G = hensel_unit_factor(f, m);
    REQUIRE(G.size() == A.size());
    for (std::size_t i = 0; i < G.size(); ++i) CHECK((G[i] - A[i]).is_zero_at_prec());
  }
}

TEST_CASE("unit-root factor: degree and reduction guards") {
  const auto z = PadicScalar::zero(P, 10);
  const auto one = z.one_like();
  // not monic
  std::vector<PadicScalar> g = {z.from_int_like(5), z, z.from_int_like(2)};
  CHECK_THROWS_AS(hensel_unit_factor(g, 1), std::domain_error);
  // unit low coefficient: reduction mod p is not (unit)*X^{n-m}
  std::vector<PadicScalar> h = {one, one, one};
  CHECK_THROWS_AS(hensel_unit_factor(h, 1), std::domain_error);
  // trivial splits
  std::vector<PadicScalar> f = {z.from_int_like(5), z, one, one};
  CHECK(hensel_unit_factor(f, 3).size() == 4);
  CHECK(hensel_unit_factor(f, 0).size() == 1);
}

TEST_CASE("p-adic kernel finds planted null directions") {
  std::mt19937_64 rng(777);
  const int prec = 18;
  const auto z = PadicScalar::zero(P, prec);
  for (int rep = 0; rep < 15; ++rep) {
    std::uniform_int_distribution<int> nd(3, 6);
    const int n = nd(rng);
    std::uniform_int_distribution<int> kd(1, n - 1);
    const int dim = kd(rng);
    std::uniform_int_distribution<int> pw(0, 3);
    auto U = random_unimodular(rng, prec, n);
    auto V = random_unimodular(rng, prec, n);
    DenseMat<PadicScalar> D(z, n, n);
    for (int i = 0; i < n - dim; ++i) D.at(i, i) = z.one_like().mul_p_pow(pw(rng)).reduced(prec);
    auto M = U.mul(D).mul(V);
    auto K = padic_kernel(M, dim);
    REQUIRE(K.cols == dim);
    CHECK(all_censored(M.mul(K)));
    // the planted kernel is V^{-1} (span of the last dim coordinates)
    auto W = V.mul(K);
    for (int r = 0; r < n - dim; ++r)
      for (int c = 0; c < dim; ++c) CHECK(W.at(r, c).is_zero_at_prec());
  }
}

TEST_CASE("p-adic kernel rejects a wrong dimension instead of guessing") {
  auto M = mat_of(10, {{1, 0, 0}, {0, 5, 0}, {0, 0, 0}});
  auto K = padic_kernel(M, 1);
  CHECK(K.cols == 1);
  CHECK(all_censored(M.mul(K)));
  CHECK_THROWS_AS(padic_kernel(M, 2), PrecisionError);
  CHECK_THROWS_AS(padic_kernel(M, 0), PrecisionError);
}

TEST_CASE("unit matrix inverse is loss-free") {
  std::mt19937_64 rng(313);
  const int prec = 15;
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 5;
    auto U = random_unimodular(rng, prec, n);
    auto Inv = invert_unit_matrix(U);
    auto I = DenseMat<PadicScalar>::identity(U.e[0].zero_like(), n);
    auto E1 = U.mul(Inv), E2 = Inv.mul(U);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK((E1.at(i, j) - I.at(i, j)).is_zero_at_prec());
        CHECK((E2.at(i, j) - I.at(i, j)).is_zero_at_prec());
        CHECK(Inv.at(i, j).prec() == prec);  // unit pivots: no precision spent
      }
  }
  // permuted pivots
  auto Pm = mat_of(12, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  auto PmInv = invert_unit_matrix(Pm);
  CHECK(all_censored(Pm.mul(PmInv).add_scaled(
      DenseMat<PadicScalar>::identity(PadicScalar::zero(P, 12), 3),
      -PadicScalar::one(P, 12))));
  // not invertible over Z_p
  CHECK_THROWS_AS(invert_unit_matrix(mat_of(10, {{5, 0}, {0, 1}})), std::domain_error);
  CHECK_THROWS_AS(invert_unit_matrix(mat_of(10, {{1, 1}, {1, 1}})), std::domain_error);
}

TEST_CASE("slope subspace: pinned diagonal spectra") {
  const int prec = 20;
  auto M = mat_of(prec, {{1, 0, 0}, {0, 5, 0}, {0, 0, 5}});

  auto S0 = slope_subspace(M, Rat::of_int(0));
  CHECK(S0.dim == 1);
  REQUIRE(S0.slopes.size() == 1);
  CHECK(S0.slopes[0] == std::make_pair(Rat::of_int(0), 1));
  CHECK(series_is(S0.char_series, {1, -1}));
  CHECK(S0.basis.at(0, 0).is_unit());
  CHECK(S0.basis.at(1, 0).is_zero_at_prec());
  CHECK(S0.basis.at(2, 0).is_zero_at_prec());

  auto Sh = slope_subspace(M, Rat(1, 2));  // cut between the slope groups
  CHECK(Sh.dim == 1);

  auto S1 = slope_subspace(M, Rat::of_int(1));
  CHECK(S1.dim == 3);
  REQUIRE(S1.slopes.size() == 2);
  CHECK(S1.slopes[0] == std::make_pair(Rat::of_int(0), 1));
  CHECK(S1.slopes[1] == std::make_pair(Rat::of_int(1), 2));
  // (1-T)(1-5T)^2 = 1 - 11T + 35T^2 - 25T^3
  CHECK(series_is(S1.char_series, {1, -11, 35, -25}));

  auto Sn = slope_subspace(M, Rat(-1, 1));
  CHECK(Sn.dim == 0);
  CHECK(Sn.slopes.empty());
}

TEST_CASE("slope subspace of a conjugated diagonal matches the planted spans") {
  std::mt19937_64 rng(2718);
  const int prec = 24;
  const auto z = PadicScalar::zero(P, prec);
  auto Pu = random_unimodular(rng, prec, 3);
  auto Pinv = invert_unit_matrix(Pu);
  DenseMat<PadicScalar> D(z, 3, 3);
  D.at(0, 0) = z.from_int_like(2);
  D.at(1, 1) = z.from_int_like(3 * 5);
  D.at(2, 2) = z.from_int_like(7 * 125);
  auto M = Pu.mul(D).mul(Pinv);

  auto S = slope_subspace(M, Rat::of_int(1));
  CHECK(S.dim == 2);
  REQUIRE(S.slopes.size() == 2);
  CHECK(S.slopes[0] == std::make_pair(Rat::of_int(0), 1));
  CHECK(S.slopes[1] == std::make_pair(Rat::of_int(1), 1));
  CHECK(S.certified_prec > 0);

  // the subspace is the planted span{Pu e0, Pu e1}: coordinates in the
  // eigenbasis have censored bottom row
  auto C = Pinv.mul(S.basis);
  CHECK(C.at(2, 0).is_zero_at_prec());
  CHECK(C.at(2, 1).is_zero_at_prec());

  // A*basis = basis*restriction at certified precision
  auto lhs = M.mul(S.basis), rhs = S.basis.mul(S.restriction);
  for (std::size_t i = 0; i < lhs.e.size(); ++i)
    CHECK((lhs.e[i] - rhs.e[i]).is_zero_at_prec());

  // a cut above the whole spectrum returns everything
  auto Sall = slope_subspace(M, Rat::of_int(3));
  CHECK(Sall.dim == 3);
  REQUIRE(Sall.slopes.size() == 3);
  CHECK(Sall.slopes[2] == std::make_pair(Rat::of_int(3), 1));
}

TEST_CASE("slope subspace with a fractional slope pair") {
  const int prec = 20;
  auto M = mat_of(prec, {{0, 1, 0}, {5, 0, 0}, {0, 0, 25}});
  auto S = slope_subspace(M, Rat(1, 2));
  CHECK(S.dim == 2);
  REQUIRE(S.slopes.size() == 1);
  CHECK(S.slopes[0] == std::make_pair(Rat(1, 2), 2));
  CHECK(series_is(S.char_series, {1, 0, -5}));
  // subspace is the first block
  CHECK(S.basis.at(2, 0).is_zero_at_prec());
  CHECK(S.basis.at(2, 1).is_zero_at_prec());
  auto lhs = M.mul(S.basis), rhs = S.basis.mul(S.restriction);
  for (std::size_t i = 0; i < lhs.e.size(); ++i)
    CHECK((lhs.e[i] - rhs.e[i]).is_zero_at_prec());
}

TEST_CASE("slope subspace: atkin operator at weight two keeps its classical eigenvalue") {
  auto O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, P);
  BranchFactory F(X, 30);
  auto U5 = F.atkin_u(P);
  auto A = operator_matrix(U5, 2, 12);

  auto S = slope_subspace(A, Rat::of_int(1));
  REQUIRE(S.dim >= 1);
  CHECK(S.certified_prec >= 10);

  // the polygon of the full corner agrees with the extracted mass
  auto np = newton_polygon(fredholm_series(A));
  CHECK(S.dim == np.multiplicity_leq(Rat::of_int(1)));

  // the constant function is a classical eigenvector with eigenvalue exactly
  // p, so (1 - pT) divides the characteristic series of the cut: the
  // reversed polynomial vanishes at p
  const auto& cs = S.char_series;
  PadicScalar acc = cs.coeff(0);
  const auto pscal = cs.coeff(0).from_int_like(5);
  for (std::size_t i = 1; i < cs.len(); ++i) acc = acc * pscal + cs.coeff(i);
  CHECK(acc.is_zero_at_prec());

  // invariance at certified precision
  auto lhs = A.mul(S.basis), rhs = S.basis.mul(S.restriction);
  for (std::size_t i = 0; i < lhs.e.size(); ++i)
    CHECK((lhs.e[i] - rhs.e[i]).is_zero_at_prec());
}

TEST_CASE("slope subspace: starved precision is an error, not an answer") {
  auto M = mat_of(2, {{50, 0}, {0, 75}});  // every entry is 0 mod 5^2
  CHECK_THROWS_AS(slope_subspace(M, Rat::of_int(5)), PrecisionError);
}

TEST_CASE("finite hecke module restricts commuting operators faithfully") {
  std::mt19937_64 rng(551);
  const int prec = 24;
  const auto z = PadicScalar::zero(P, prec);
  auto Pu = random_unimodular(rng, prec, 3);
  auto Pinv = invert_unit_matrix(Pu);
  DenseMat<PadicScalar> Du(z, 3, 3), Dt(z, 3, 3);
  Du.at(0, 0) = z.from_int_like(2);
  Du.at(1, 1) = z.from_int_like(3 * 5);
  Du.at(2, 2) = z.from_int_like(7 * 125);
  Dt.at(0, 0) = z.from_int_like(11);
  Dt.at(1, 1) = z.from_int_like(13);
  Dt.at(2, 2) = z.from_int_like(4);
  auto U = Pu.mul(Du).mul(Pinv);
  auto T = Pu.mul(Dt).mul(Pinv);

  auto fm = finite_hecke_module(U, {T}, Rat::of_int(1));
  REQUIRE(fm.dim == 2);
  REQUIRE(fm.hecke.size() == 1);
  // restricted operators commute
  auto C1 = fm.hecke[0].mul(fm.u_matrix), C2 = fm.u_matrix.mul(fm.hecke[0]);
  for (std::size_t i = 0; i < C1.e.size(); ++i) CHECK((C1.e[i] - C2.e[i]).is_zero_at_prec());
  // the hecke restriction carries the planted eigenvalues 11, 13
  CHECK(series_is(fredholm_series(fm.hecke[0]), {1, -24, 143}));
  CHECK(series_is(fm.u_char, {1, -17, 30}));

  // an operator that does not preserve the subspace is a hard error
  DenseMat<PadicScalar> N(z, 3, 3);
  N.at(2, 0) = z.one_like();  // sends the first planted vector out of the span
  auto Bad = Pu.mul(N).mul(Pinv);
  CHECK_THROWS_AS(finite_hecke_module(U, {Bad}, Rat::of_int(1)), PrecisionError);
}

TEST_CASE("integral linear solve: planted systems and failure modes") {
  std::mt19937_64 rng(6006);
  const int prec = 18;
  const auto z = PadicScalar::zero(P, prec);
  for (int rep = 0; rep < 12; ++rep) {
    const int n = 5;
    auto U = random_unimodular(rng, prec, n);
    auto V = random_unimodular(rng, prec, n);
    DenseMat<PadicScalar> D(z, n, n);
    std::uniform_int_distribution<int> pw(0, 2);
    for (int i = 0; i < n; ++i) D.at(i, i) = z.one_like().mul_p_pow(pw(rng)).reduced(prec);
    auto M = U.mul(D).mul(V);
    std::uniform_int_distribution<long long> ci(-40, 40);
    std::vector<PadicScalar> xt;
    for (int i = 0; i < n; ++i) xt.push_back(z.from_int_like(ci(rng)));
    std::vector<PadicScalar> rhs(static_cast<std::size_t>(n), z);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs[(std::size_t)i] += M.at(i, j) * xt[(std::size_t)j];
    auto x = solve_integral(M, rhs);
    for (int i = 0; i < n; ++i) CHECK((x[(std::size_t)i] - xt[(std::size_t)i]).is_zero_at_prec());
  }
  // singular at working precision
  auto S = mat_of(3, {{1, 2, 0}, {2, 4, 0}, {0, 0, 1}});
  std::vector<PadicScalar> b(3, PadicScalar::one(P, 3));
  CHECK_THROWS_AS(solve_integral(S, b), PrecisionError);
}
