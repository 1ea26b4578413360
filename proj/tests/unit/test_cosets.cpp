#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "qspec/cosets.hpp"
#include "qspec/quat.hpp"

using namespace qspec;

namespace {

// independent count of invertible 2x2 matrices mod M by exhaustive scan
std::uint64_t brute_gl2_order(std::uint64_t M) {
  std::uint64_t n = 0;
  for (std::uint64_t a = 0; a < M; ++a)
    for (std::uint64_t b = 0; b < M; ++b)
      for (std::uint64_t c = 0; c < M; ++c)
        for (std::uint64_t d = 0; d < M; ++d) {
          std::uint64_t det = ((a * d) % M + M * M - (b * c) % M) % M;
          if (std::gcd(det, M) == 1) ++n;
        }
  return n;
}

Mat2Z random_invertible(std::mt19937_64& rng, std::uint64_t M) {
  std::uniform_int_distribution<std::uint64_t> pick(0, M - 1);
  for (;;) {
    Mat2Z g{pick(rng), pick(rng), pick(rng), pick(rng), M};
    if (std::gcd(g.det(), M) == 1) return g;
  }
}

}  // namespace

TEST_CASE("group-order helpers match exhaustive counts") {
  CHECK(CosetSpace::phi(5) == 4);
  CHECK(CosetSpace::phi(15) == 8);
  CHECK(CosetSpace::gl2_order(5) == 480);
  CHECK(CosetSpace::gl2_order(15) == 23040);
  CHECK(CosetSpace::gl2_order(5) == brute_gl2_order(5));
  CHECK(CosetSpace::gl2_order(15) == brute_gl2_order(15));
}

TEST_CASE("level 5: twenty-four cosets, a single free class") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  CHECK(X.modulus() == 5);
  CHECK(X.coset_count() == 24);
  CHECK(X.class_count() == 1);
  // mass bookkeeping: |C| = |GL2| / |Gamma1-bar| and h·|units| = |C|
  CHECK((std::uint64_t)X.coset_count() == CosetSpace::gl2_order(5) / (5 * CosetSpace::phi(5)));
  CHECK((std::size_t)X.class_count() * O.units().size() == (std::size_t)X.coset_count());
}

TEST_CASE("level 15: one hundred ninety-two cosets, eight free classes") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 3, 5);
  CHECK(X.coset_count() == 192);
  CHECK(X.class_count() == 8);
  CHECK((std::size_t)X.class_count() * O.units().size() == (std::size_t)X.coset_count());
}

TEST_CASE("coset lookup is right-translation invariant") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 3, 5);
  const std::uint64_t M = 15;
  std::mt19937_64 rng(411);
  std::uniform_int_distribution<std::uint64_t> pick(0, M - 1);
  for (int trial = 0; trial < 60; ++trial) {
    Mat2Z g = random_invertible(rng, M);
    std::uint64_t u = pick(rng);
    while (std::gcd(u, M) != 1) u = pick(rng);
    Mat2Z gamma{1, pick(rng), 0, u, M};
    CHECK(X.coset_id(g.mul(gamma)) == X.coset_id(g));
  }
  // and distinct cosets exhaust the id range
  std::set<int> seen;
  for (int trial = 0; trial < 4000; ++trial) seen.insert(X.coset_id(random_invertible(rng, M)));
  CHECK((int)seen.size() == X.coset_count());
}

TEST_CASE("aligners move every coset onto its class representative") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 3, 5);
  for (int cid = 0; cid < X.coset_count(); ++cid) {
    int orbit = X.orbit_of_coset(cid);
    Mat2Z moved = O.embed_mod(X.aligner(cid), 15).mul(X.coset_matrix(cid));
    CHECK(X.coset_id(moved) == X.rep_coset(orbit));
    CHECK(O.nrd(X.aligner(cid)) == 1);  // aligners are units
  }
}

TEST_CASE("unit action on cosets is associative") {
  QuatOrder O = QuatOrder::hurwitz();
  CosetSpace X(O, 1, 5);
  const auto& units = O.units();
  std::mt19937_64 rng(412);
  std::uniform_int_distribution<std::size_t> pick_u(0, units.size() - 1);
  std::uniform_int_distribution<int> pick_c(0, X.coset_count() - 1);
  auto act = [&](const QuatOrder::Coords& u, int cid) {
    return X.coset_id(O.embed_mod(u, 5).mul(X.coset_matrix(cid)));
  };
  for (int trial = 0; trial < 40; ++trial) {
    auto u = units[pick_u(rng)];
    auto v = units[pick_u(rng)];
    int c = pick_c(rng);
    CHECK(act(u, act(v, c)) == act(O.mul(u, v), c));
  }
}

TEST_CASE("representative lifts have determinant one and correct reduction") {
  QuatOrder O = QuatOrder::hurwitz();
  for (std::uint64_t N : {(std::uint64_t)1, (std::uint64_t)3}) {
    CosetSpace X(O, N, 5);
    const std::uint64_t M = X.modulus();
    for (int orbit = 0; orbit < X.class_count(); ++orbit) {
      const auto& L = X.rep_lift(orbit);
      CHECK(L[0] * L[3] - L[1] * L[2] == 1);
      auto red = [&](long long v) { return (std::uint64_t)(((v % (long long)M) + (long long)M) % (long long)M); };
      Mat2Z back{red(L[0]), red(L[1]), red(L[2]), red(L[3]), M};
      CHECK(X.coset_id(back) == X.rep_coset(orbit));
    }
  }
}

TEST_CASE("determinant-one lifting handles non-unit-normalized input") {
  // det = 2 mod 5 forces the column normalization path
  Mat2Z g{2, 0, 0, 1, 5};
  auto L = sl2_lift(g);
  CHECK(L[0] * L[3] - L[1] * L[2] == 1);
  CHECK((((L[0] % 5) + 5) % 5) == 2);  // first column untouched mod 5
  CHECK((((L[2] % 5) + 5) % 5) == 0);
}

TEST_CASE("coset space rejects incompatible input") {
  QuatOrder O = QuatOrder::hurwitz();
  CHECK_THROWS_AS(CosetSpace(O, 2, 5), std::domain_error);   // even modulus
  CosetSpace X(O, 1, 5);
  CHECK_THROWS_AS(X.coset_id(Mat2Z{1, 0, 0, 1, 15}), std::domain_error);  // wrong modulus
  CHECK_THROWS_AS(X.coset_id(Mat2Z{1, 0, 0, 0, 5}), std::domain_error);   // singular
}
