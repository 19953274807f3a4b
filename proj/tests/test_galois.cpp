#include <stdexcept>

#include "axpir/galois.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axpir::galois;

TEST_CASE("field construction accepts primes only") {
  CHECK_NOTHROW(Field(2));
  CHECK_NOTHROW(Field(5));
  CHECK_NOTHROW(Field(101));
  CHECK_THROWS_AS(Field(1), std::invalid_argument);
  CHECK_THROWS_AS(Field(4), std::invalid_argument);
  CHECK_THROWS_AS(Field(9), std::invalid_argument);
  CHECK_THROWS_AS(Field(0), std::invalid_argument);
  CHECK_THROWS_AS(Field(-7), std::invalid_argument);
}

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(97));
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));    // 7 * 13
  CHECK_FALSE(is_prime(7917));  // 3 * 2639
}

TEST_CASE("field arithmetic matches modular identities") {
  Field f(7);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(3) == 4);
  CHECK(f.pow(3, 6) == 1);  // Fermat
  CHECK(f.pow(3, 0) == 1);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.reduce(15) == 1);
  CHECK(f.is_element(6));
  CHECK_FALSE(f.is_element(7));
  CHECK_FALSE(f.is_element(-1));
}

TEST_CASE("inverses agree with the exhaustive scan") {
  for (std::int64_t q : {2, 3, 5, 7, 11, 13}) {
    Field f(q);
    for (std::int64_t a = 1; a < q; ++a) {
      CHECK(f.inv(a) == oracle::inverse_scan(q, a));
      CHECK(f.mul(a, f.inv(a)) == 1);
    }
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
  }
}

TEST_CASE("matrix basics") {
  Field f(5);
  FMatrix m(2, 3, f);
  m.set(0, 0, 1);
  m.set(0, 2, 4);
  m.set(1, 1, 2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(1, 1) == 2);
  CHECK_THROWS_AS(m.set(0, 0, 5), std::invalid_argument);

  FMatrix t = m.transposed();
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK(t.at(2, 0) == 4);

  FMatrix i = FMatrix::identity(3, f);
  CHECK(i.at(0, 0) == 1);
  CHECK(i.at(0, 1) == 0);

  FMatrix wide = m.hconcat(m);
  CHECK(wide.cols() == 6);
  CHECK(wide.at(0, 5) == 4);
  CHECK(wide.at(1, 4) == 2);
}

TEST_CASE("rank agrees with the span-counting reference") {
  Field f2(2);
  FMatrix z(3, 3, f2);
  CHECK(rank(z) == 0);
  CHECK(oracle::rank_by_span(z) == 0);

  FMatrix i3 = FMatrix::identity(3, f2);
  CHECK(rank(i3) == 3);
  CHECK(oracle::rank_by_span(i3) == 3);

  // rows 0 and 2 coincide, rank 2
  FMatrix dup(3, 3, f2);
  dup.set(0, 0, 1); dup.set(0, 1, 1);
  dup.set(1, 1, 1); dup.set(1, 2, 1);
  dup.set(2, 0, 1); dup.set(2, 1, 1);
  CHECK(rank(dup) == 2);
  CHECK(oracle::rank_by_span(dup) == 2);

  Field f3(3);
  // row2 = row0 + 2*row1 (mod 3), rank 2
  FMatrix dep(3, 4, f3);
  std::int64_t r0[] = {1, 2, 0, 1};
  std::int64_t r1[] = {0, 1, 1, 2};
  for (int c = 0; c < 4; ++c) {
    dep.set(0, c, r0[c]);
    dep.set(1, c, r1[c]);
    dep.set(2, c, (r0[c] + 2 * r1[c]) % 3);
  }
  CHECK(rank(dep) == 2);
  CHECK(oracle::rank_by_span(dep) == 2);

  // wide matrix, rank limited by rows
  FMatrix wide(2, 5, f3);
  for (int c = 0; c < 5; ++c) {
    wide.set(0, c, c % 3);
    wide.set(1, c, (c + 1) % 3);
  }
  CHECK(rank(wide) == oracle::rank_by_span(wide));
}

TEST_CASE("randomized rank cross-check") {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (std::int64_t q : {2, 3}) {
    Field f(q);
    for (int trial = 0; trial < 20; ++trial) {
      FMatrix m(3, 4, f);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) m.set(r, c, std::int64_t(next() % std::uint64_t(q)));
      CHECK(rank(m) == oracle::rank_by_span(m));
    }
  }
}

TEST_CASE("column space membership agrees with coefficient enumeration") {
  Field f(2);
  FMatrix b(4, 2, f);
  b.set(0, 0, 1); b.set(1, 0, 1);
  b.set(2, 1, 1); b.set(3, 1, 1);

  FMatrix in(4, 1, f);
  in.set(0, 0, 1); in.set(1, 0, 1); in.set(2, 0, 1); in.set(3, 0, 1);
  CHECK(column_space_contains(in, b));
  CHECK(oracle::colspace_contains_scan(in, b));

  FMatrix out(4, 1, f);
  out.set(0, 0, 1);
  CHECK_FALSE(column_space_contains(out, b));
  CHECK_FALSE(oracle::colspace_contains_scan(out, b));

  FMatrix wrong(3, 1, f);
  CHECK_THROWS_AS(column_space_contains(wrong, b), std::invalid_argument);

  Field f5(5);
  FMatrix base(3, 2, f5);
  base.set(0, 0, 2); base.set(1, 0, 1);
  base.set(1, 1, 3); base.set(2, 1, 4);
  FMatrix combo(3, 2, f5);
  // col0 = 2*b0 + 1*b1, col1 = 3*b1
  combo.set(0, 0, 4); combo.set(1, 0, 0); combo.set(2, 0, 4);
  combo.set(1, 1, 4); combo.set(2, 1, 2);
  CHECK(column_space_contains(combo, base));
  CHECK(oracle::colspace_contains_scan(combo, base));
}

TEST_CASE("pivot columns form a column basis") {
  Field f(2);
  // col1 = col0, col3 = col0 + col2
  FMatrix m(3, 4, f);
  m.set(0, 0, 1); m.set(0, 1, 1); m.set(0, 3, 1);
  m.set(1, 0, 1); m.set(1, 1, 1); m.set(1, 2, 1);
  m.set(2, 2, 1); m.set(2, 3, 1);
  auto piv = pivot_columns(m);
  REQUIRE(piv.size() == 2);
  CHECK(piv[0] == 0);
  CHECK(piv[1] == 2);

  FMatrix basis(3, int(piv.size()), f);
  for (std::size_t j = 0; j < piv.size(); ++j)
    for (int r = 0; r < 3; ++r) basis.set(r, int(j), m.at(r, piv[j]));
  CHECK(rank(basis) == rank(m));
  CHECK(column_space_contains(m, basis));

  FMatrix zero(2, 3, f);
  CHECK(pivot_columns(zero).empty());
}
