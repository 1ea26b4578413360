#include <random>

#include "doctest.h"
#include "qspec/iwasawa.hpp"

using namespace qspec;

namespace {

constexpr std::uint32_t P = 5;

PadicScalar S(long long v, int prec = 12) { return PadicScalar::from_int(P, prec, v); }

IwasawaElement L(std::initializer_list<long long> c, int prec = 12, int wt = 6) {
  return IwasawaElement::from_coeffs(P, prec, wt, std::vector<long long>(c));
}

}  // namespace

TEST_CASE("series ring basics") {
  auto one = TruncSeries<PadicScalar>::constant(S(1), 6);
  auto f = TruncSeries<PadicScalar>::from_coeffs({S(1), S(5), S(0), S(0), S(0), S(0)});
  CHECK((f * f).coeff(1).same_mod_min_prec(S(10)));
  CHECK((f * f).coeff(2).same_mod_min_prec(S(25)));
  auto g = f.inverse();
  CHECK((f * g).coeff(0).same_mod_min_prec(S(1)));
  for (int j = 1; j < 6; ++j) CHECK((f * g).coeff((std::size_t)j).is_zero_at_prec());
  auto h = f.pow_int(-2) * f.pow_int(2);
  CHECK(h.coeff(0).same_mod_min_prec(S(1)));
  CHECK(h.coeff(3).is_zero_at_prec());
  (void)one;
}

TEST_CASE("series derivative, evaluate, compose") {
  // f = 1 + 2T + 3T^2
  auto f = TruncSeries<PadicScalar>::from_coeffs({S(1), S(2), S(3), S(0)});
  auto df = f.derivative();
  CHECK(df.coeff(0).same_mod_min_prec(S(2)));
  CHECK(df.coeff(1).same_mod_min_prec(S(6)));
  CHECK(f.evaluate(S(2)).same_mod_min_prec(S(17)));
  // compose with g = 1 + T (f is a genuine polynomial of degree 2)
  auto g = TruncSeries<PadicScalar>::from_coeffs({S(1), S(1), S(0), S(0)});
  auto fg = f.compose(g);
  CHECK(fg.coeff(0).same_mod_min_prec(S(6)));   // f(1) = 6
  CHECK(fg.coeff(1).same_mod_min_prec(S(8)));   // f'(1) = 8
  CHECK(fg.coeff(2).same_mod_min_prec(S(3)));
}

TEST_CASE("iwasawa ring and normalization") {
  auto a = L({1, 2, 3});
  auto b = L({0, 1});
  CHECK((a * b).same_mod_min_prec(L({0, 1, 2, 3})));
  CHECK((a + (-a)).is_zero_at_prec());
  CHECK(a.w_order() == 0);
  CHECK(b.w_order() == 1);
  CHECK(L({0}).w_order() == 6);
  // denominator alignment: p^-1 * (5) is integral 1 after normalization
  auto c = IwasawaElement::from_scalar_coeffs(6, {S(5), S(0), S(0), S(0), S(0), S(0)}, 1);
  CHECK(c.dpow() == 0);
  CHECK(c.coeff(0).same_mod_min_prec(S(1)));
  // a genuinely non-integral element keeps its denominator
  auto d = IwasawaElement::from_scalar_coeffs(6, {S(1), S(5), S(0), S(0), S(0), S(0)}, 1);
  CHECK(d.dpow() == 1);
  CHECK(d.coeff(1).same_mod_min_prec(S(1)));
  CHECK_THROWS_AS(d.coeff(0), std::domain_error);
  // mixed addition: d + 1 has w^0 coefficient 1 + 1/5, still dpow 1
  auto e = d + d.one_like();
  CHECK(e.dpow() == 1);
  CHECK(e.numerator_coeff(0).same_mod_min_prec(S(6, 11)));
}

TEST_CASE("iwasawa inverse") {
  auto a = L({1, 1, 5, 0, 0, 2});
  auto inv = a.inverse();
  CHECK((a * inv).same_mod_min_prec(a.one_like()));
  CHECK_THROWS_AS(L({5, 1}).inverse(), std::domain_error);
}

TEST_CASE("one_plus_w_power frozen and group law") {
  // (1+w)^2 = 1 + 2w + w^2
  CHECK(one_plus_w_power(6, S(2)).same_mod_min_prec(L({1, 2, 1})));
  // (1+w)^-1 = 1 - w + w^2 - ...
  CHECK(one_plus_w_power(6, S(-1)).same_mod_min_prec(L({1, -1, 1, -1, 1, -1})));
  std::mt19937_64 rng(5);
  for (int it = 0; it < 10; ++it) {
    PadicScalar x = S((long long)(rng() % 100000) - 50000);
    PadicScalar y = S((long long)(rng() % 100000) - 50000);
    auto lhs = one_plus_w_power(6, x) * one_plus_w_power(6, y);
    CHECK(lhs.same_mod_min_prec(one_plus_w_power(6, x + y)));
  }
}

TEST_CASE("universal character anchors") {
  // kappa(1+p) = 1+w exactly
  auto k1p = universal_character(S(1 + P), 6);
  CHECK(k1p.same_mod_min_prec(L({1, 1})));
  CHECK(k1p.dpow() == 0);
  // kappa((1+p)^2) = (1+w)^2
  auto k2 = universal_character(S((1 + P) * (1 + P)), 6);
  CHECK(k2.same_mod_min_prec(L({1, 2, 1})));
  // multiplicativity on random 1-units
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    PadicScalar u = S(1 + 5 * (long long)(1 + rng() % 400));
    PadicScalar v = S(1 + 5 * (long long)(1 + rng() % 400));
    CHECK((universal_character(u, 6) * universal_character(v, 6))
              .same_mod_min_prec(universal_character(u * v, 6)));
    CHECK(universal_character(u, 6).dpow() == 0);
  }
}

TEST_CASE("specialization recovers integer weights") {
  for (long long k : {2, 3, 4, 8}) {
    PadicScalar z1 = weight_point_minus_one(P, 12, k);
    CHECK(z1.valuation().v == 1);
    std::mt19937_64 rng(11 + (unsigned)k);
    for (int it = 0; it < 5; ++it) {
      PadicScalar u = S(1 + 5 * (long long)(1 + rng() % 400));
      PadicScalar got = universal_character(u, 10).specialize(z1);
      PadicScalar want = one_unit_power_int(u, k);
      CHECK(got.same_mod_min_prec(want.reduced(got.prec())));
    }
  }
}

TEST_CASE("universal character of a series") {
  // U = 1 + 5T with 1-unit constant term
  auto U = TruncSeries<PadicScalar>::from_coeffs(
      {S(1, 14), S(5, 14), S(0, 14), S(0, 14), S(0, 14), S(0, 14), S(0, 14), S(0, 14)});
  auto kU = universal_character_of_series(U, 8);
  // w^0 row is the constant function 1; w^1 row is log(1+5T)/log(1+p)
  CHECK(kU.coeff(0).same_mod_min_prec(IwasawaElement::one(P, 10, 8)));
  // the documented denominator: w^5-part of the T^1 coefficient is non-integral
  CHECK(kU.coeff(1).dpow() == 1);
  auto v51 = kU.coeff(1).numerator_coeff(5).valuation();
  CHECK(v51.exact);
  CHECK(v51.v == 0);
  // specializations at integer weights match plain powers of the series;
  // the dropped w-tail of a character value carries denominators, so the
  // certified precision uses the character tail bound
  for (long long k : {1, 2, 3, 7}) {
    PadicScalar z1 = weight_point_minus_one(P, 14, k);
    int tail = character_tail_valuation(P, 8, z1.valuation().v);
    CHECK(tail == 7);
    auto Uk = U.pow_int(k);
    for (std::size_t j = 0; j < U.len(); ++j) {
      PadicScalar got = kU.coeff(j).specialize(z1, tail);
      CHECK(got.same_mod_min_prec(Uk.coeff(j).reduced(got.prec())));
    }
  }
  // constant-term column equals the scalar universal character of U(0)
  CHECK(kU.coeff(0).same_mod_min_prec(universal_character(S(1, 14), 8)));
}

TEST_CASE("character of series rejects bad inputs") {
  auto bad1 = TruncSeries<PadicScalar>::from_coeffs({S(2), S(5), S(0)});
  CHECK_THROWS_AS(universal_character_of_series(bad1, 4), std::domain_error);
  auto bad2 = TruncSeries<PadicScalar>::from_coeffs({S(1), S(1), S(0)});
  CHECK_THROWS_AS(universal_character_of_series(bad2, 4), std::domain_error);
}
