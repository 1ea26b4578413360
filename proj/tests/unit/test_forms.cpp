#include <random>

#include "doctest.h"
#include "qspec/branches.hpp"
#include "qspec/cosets.hpp"
#include "qspec/forms.hpp"

using namespace qspec;

namespace {

constexpr std::uint32_t P = 5;

bool series_eq(const TruncSeries<PadicScalar>& x, const TruncSeries<PadicScalar>& y,
               std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i)
    if (!(x.coeff(i) - y.coeff(i)).is_zero_at_prec()) return false;
  return true;
}

ClassFunction<PadicScalar> constant_function(int h, std::size_t len, int prec, long long v) {
  ClassFunction<PadicScalar> f;
  for (int a = 0; a < h; ++a)
    f.push_back(TruncSeries<PadicScalar>::constant(PadicScalar::from_int(P, prec, v), len));
  return f;
}

ClassFunction<PadicScalar> random_polynomial(int h, std::size_t len, std::size_t deg,
                                             int prec, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> pick(-50, 50);
  ClassFunction<PadicScalar> f;
  for (int a = 0; a < h; ++a) {
    TruncSeries<PadicScalar> s(PadicScalar::zero(P, prec), len);
    for (std::size_t m = 0; m <= deg; ++m)
      s.set_coeff(m, PadicScalar::from_int(P, prec, pick(rng)));
    f.push_back(s);
  }
  return f;
}

}  // namespace

TEST_CASE("weight-two anchors: degree eigenvalues on constants") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X5(O, 1, 5);
  BranchFactory F5(X5, 10);
  auto one5 = constant_function(1, 10, 10, 1);
  auto check_const = [&](const BranchTable& T, const ClassFunction<PadicScalar>& f,
                         long long want) {
    auto g = apply_operator(T, f, 2);
    for (const auto& comp : g) {
      CHECK((comp.coeff(0) - PadicScalar::from_int(P, comp.coeff(0).prec(), want))
                .is_zero_at_prec());
      for (std::size_t i = 1; i < comp.len(); ++i) CHECK(comp.coeff(i).is_zero_at_prec());
    }
  };
  check_const(F5.good_hecke(3), one5, 4);
  check_const(F5.good_hecke(7), one5, 8);
  check_const(F5.atkin_u(5), one5, 5);
  check_const(F5.ramified_u(2), one5, 1);
  check_const(F5.central(3), one5, 1);

  CosetSpace X15(O, 3, 5);
  BranchFactory F15(X15, 10);
  auto one15 = constant_function(8, 10, 10, 1);
  check_const(F15.good_hecke(7), one15, 8);
  check_const(F15.atkin_u(3), one15, 3);
  check_const(F15.atkin_u(5), one15, 5);
}

TEST_CASE("central operator is the scalar multiple of an inverse diamond") {
  // the scalar coset sits over the central translation diag(l,l); modulo the
  // level group that is the diamond move of l^{-1}, so every branch matrix
  // is exactly l times the corresponding diamond branch
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 3, 5);
  BranchFactory F(X, 10);
  BranchTable S7 = F.central(7);
  BranchTable D13 = F.diamond(13);  // 13 = 7^{-1} mod 15
  PadicScalar l7 = PadicScalar::from_int(P, 10, 7);
  for (int a = 0; a < S7.sources(); ++a) {
    REQUIRE(S7.branches_from(a).size() == 1);
    const auto& br = S7.branches_from(a)[0];
    const auto& bd = D13.branches_from(a)[0];
    CHECK(br.target == bd.target);
    CHECK((br.gamma.a - l7 * bd.gamma.a).is_zero_at_prec());
    CHECK((br.gamma.b - l7 * bd.gamma.b).is_zero_at_prec());
    CHECK((br.gamma.c - l7 * bd.gamma.c).is_zero_at_prec());
    CHECK((br.gamma.d - l7 * bd.gamma.d).is_zero_at_prec());
  }
  // so the weight-k central action is (l/tau(l))^{k-2} times the diamond one
  std::mt19937_64 rng(71);
  auto f = random_polynomial(8, 12, 5, 10, rng);
  auto gS = apply_operator(S7, f, 4);
  auto gD = apply_operator(D13, f, 4);
  PadicScalar s = l7.divide_by(teichmuller(l7));
  s = s * s;  // (l/tau)^2 for k = 4
  for (int a = 0; a < 8; ++a) {
    auto want = gD[(std::size_t)a].scale(s);
    CHECK(series_eq(gS[(std::size_t)a], want, want.len()));
  }
}

TEST_CASE("negation acts trivially: the class minus-one is invisible") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 3, 5);
  BranchFactory F(X, 8);
  BranchTable m1 = F.diamond(14);
  for (int a = 0; a < m1.sources(); ++a) {
    const auto& br = m1.branches_from(a)[0];
    CHECK(br.target == a);
    // gamma = -identity, whose weight action is trivial at every weight
    CHECK((br.gamma.a + PadicScalar::one(P, 8)).is_zero_at_prec());
    CHECK((br.gamma.d + PadicScalar::one(P, 8)).is_zero_at_prec());
    CHECK(br.gamma.b.is_zero_at_prec());
    CHECK(br.gamma.c.is_zero_at_prec());
  }
}

TEST_CASE("classical polynomial span is operator stable") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  BranchFactory F(X, 10);
  const int B = 8;
  for (long long k : {2LL, 4LL, 6LL}) {
    for (const BranchTable& T :
         {F.good_hecke(3), F.atkin_u(5), F.ramified_u(2), F.diamond(2)}) {
      DenseMat<PadicScalar> A = operator_matrix(T, k, B);
      for (int m = 0; m <= k - 2; ++m)
        for (int c = (int)k - 1; c < B; ++c) CHECK(A.at(m, c).is_zero_at_prec());
    }
  }
}

TEST_CASE("decay certificates separate compact from bounded operators") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  BranchFactory F(X, 12);
  const int B = 10;
  BranchTable U5 = F.atkin_u(5), T3 = F.good_hecke(3), U2 = F.ramified_u(2);

  auto cu = certify_decay(operator_matrix(U5, 2, B), B);
  CHECK(cu.certified);
  for (int c = 0; c < B; ++c) CHECK(cu.column_excess[(std::size_t)c] >= 0);

  CHECK_FALSE(certify_decay(operator_matrix(T3, 2, B), B).certified);
  CHECK_FALSE(certify_decay(operator_matrix(U2, 2, B), B).certified);

  // compact absorbs bounded under composition, in either order
  CHECK(certify_decay(operator_matrix(compose(U5, T3), 2, B), B).certified);
  CHECK(certify_decay(operator_matrix(compose(T3, U5), 2, B), B).certified);
  CHECK(certify_decay(operator_matrix(compose(U2, U5), 4, B), B).certified);
}

TEST_CASE("family operator matrix specializes to every finite weight") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  BranchFactory F(X, 12);
  const int B = 6, W = 8;
  BranchTable U5 = F.atkin_u(5);
  DenseMat<IwasawaElement> Afam = operator_matrix_family(U5, W, B);

  // family decay holds with the bounded denominator defect of the twist
  auto cert = certify_decay_family(Afam, B, 1);
  CHECK(cert.certified);

  const int tail = character_tail_valuation(P, W, 1);
  CHECK(tail == 7);
  for (long long k : {2LL, 3LL, 5LL, 8LL}) {
    DenseMat<PadicScalar> Ak = operator_matrix(U5, k, B);
    PadicScalar zk = weight_point_minus_one(P, 12, k);
    for (int i = 0; i < Afam.rows; ++i)
      for (int j = 0; j < Afam.cols; ++j) {
        PadicScalar got = Afam.at(i, j).specialize(zk, tail);
        PadicScalar want = Ak.at(i, j);
        CHECK((got - want).is_zero_at_prec());
      }
  }
}

TEST_CASE("derivative power lowers weight and kills exactly the classical span") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  const int B = 24;
  for (long long k : {2LL, 3LL, 4LL}) {
    for (int m = 0; m < 6; ++m) {
      ClassFunction<PadicScalar> e = zero_function(P, 10, 1, B);
      e[0].set_coeff((std::size_t)m, PadicScalar::one(P, 10));
      auto th = theta_down(e, k);
      bool zero = true;
      for (std::size_t i = 0; i < th[0].len(); ++i)
        if (!th[0].coeff(i).is_zero_at_prec()) zero = false;
      CHECK(zero == (m <= k - 2));
    }
  }
}

TEST_CASE("derivative power intertwines operators with a norm-power factor") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  BranchFactory F(X, 14);
  const int B = 20;
  std::mt19937_64 rng(72);
  for (long long k : {3LL, 4LL}) {
    auto f = random_polynomial(1, B, 6, 14, rng);
    for (const BranchTable& T : {F.good_hecke(3), F.atkin_u(5), F.ramified_u(2)}) {
      auto lhs = theta_down(apply_operator(T, f, k), k);
      auto rhs_raw = apply_operator(T, theta_down(f, k), 2 - k);
      // scale by norm^(k-1)
      PadicScalar s = PadicScalar::one(P, 14);
      for (long long i = 0; i < k - 1; ++i)
        s = s * PadicScalar::from_int(P, 14, (long long)T.norm());
      std::size_t overlap = lhs[0].len();
      CHECK(series_eq(lhs[0], rhs_raw[0].scale(s), overlap));
    }
  }
}

TEST_CASE("matrix builder agrees with the direct action on polynomials") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 3, 5);
  BranchFactory F(X, 10);
  const int h = 8, B = 7;
  std::mt19937_64 rng(73);
  BranchTable T7 = F.good_hecke(7);
  const long long k = 3;
  DenseMat<PadicScalar> A = operator_matrix(T7, k, B);
  auto f = random_polynomial(h, B, B - 1, 10, rng);
  auto g = apply_operator(T7, f, k);
  for (int b = 0; b < h; ++b)
    for (int c = 0; c < B; ++c) {
      PadicScalar want = PadicScalar::zero(P, 10);
      for (int a = 0; a < h; ++a)
        for (int m = 0; m < B; ++m)
          want = want + f[(std::size_t)a].coeff((std::size_t)m) * A.at(a * B + m, b * B + c);
      CHECK((g[(std::size_t)b].coeff((std::size_t)c) - want).is_zero_at_prec());
    }
}

TEST_CASE("family matrix builder agrees with the family action") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  BranchFactory F(X, 10);
  const int B = 5, W = 5;
  BranchTable U5 = F.atkin_u(5);
  DenseMat<IwasawaElement> A = operator_matrix_family(U5, W, B);
  ClassFunction<IwasawaElement> f = zero_function_family(P, 10, W, 1, B);
  // f = 1 + 2T + wT^2
  f[0].set_coeff(0, IwasawaElement::one(P, 10, W));
  f[0].set_coeff(1, IwasawaElement::from_coeffs(P, 10, W, {2}));
  f[0].set_coeff(2, IwasawaElement::from_coeffs(P, 10, W, {0, 1}));
  auto g = apply_operator_family(U5, f, W);
  for (int c = 0; c < B; ++c) {
    IwasawaElement want = IwasawaElement::zero(P, 10, W);
    for (int m = 0; m < B; ++m) want = want + f[0].coeff((std::size_t)m) * A.at(m, c);
    IwasawaElement diff = g[0].coeff((std::size_t)c) - want;
    CHECK(diff.valuation().v >= diff.prec());
  }
}
