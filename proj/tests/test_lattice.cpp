// Copyright 2026 The dsplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include "dsplit/lattice.hpp"
#include "test_support.hpp"

using namespace dsplit;
using namespace dsplit::testing;

TEST_CASE("determinant examples") {
  CHECK(det_exact(IntMatrix::identity(2)) == 1);
  CHECK(det_exact(IntMatrix{{1, 1}, {0, 2}}) == 2);
  CHECK(det_exact(IntMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(det_exact(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK_THROWS_AS(det_exact(IntMatrix{{1, 2, 3}, {4, 5, 6}}), InputError);
}

TEST_CASE("determinant matches cofactor expansion") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 4));
    const IntMatrix m = random_matrix(n, n, -9, 9);
    CHECK(det_exact(m) == cofactor_det(m));
  }
}

TEST_CASE("determinant has no fixed-width overflow") {
  // 2^70 on the diagonal
  IntMatrix m = IntMatrix::identity(3);
  m(0, 0) = Integer(1) << 35;
  m(1, 1) = Integer(1) << 35;
  m(0, 1) = 7;
  CHECK(det_exact(m) == Integer(1) << 70);
}

TEST_CASE("hermite normal form examples") {
  HermiteData id = hermite_normal_form(IntMatrix::identity(2));
  CHECK(id.H == IntMatrix::identity(2));
  CHECK(id.U == IntMatrix::identity(2));

  HermiteData pair = hermite_normal_form(IntMatrix{{1, 1}, {0, 2}});
  CHECK(pair.H == IntMatrix{{1, 1}, {0, 2}});
  CHECK(pair.U == IntMatrix::identity(2));

  // columns (1,1),(0,2): subtracting row 0 from row 1 clears the corner
  HermiteData lower = hermite_normal_form(IntMatrix{{1, 0}, {1, 2}});
  CHECK(lower.H == IntMatrix{{1, 0}, {0, 2}});
  CHECK(lower.U == IntMatrix{{1, 0}, {-1, 1}});

  CHECK_THROWS_AS(hermite_normal_form(IntMatrix{{1, 2}, {2, 4}}), InputError);
}

TEST_CASE("hermite normal form properties on random matrices") {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 6));
    const IntMatrix b = nonsingular(n, -9, 9);
    const HermiteData h = hermite_normal_form(b);
    CHECK(h.U * b == h.H);
    CHECK(abs(det_exact(h.U)) == 1);
    CHECK(hermite_form_ok(h.H));
    CHECK(abs(det_exact(h.H)) == abs(det_exact(b)));
  }
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::identity(2)).invariant_factors == IntVector{1, 1});
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 2}}).invariant_factors == IntVector{2, 2});
  // [[2,1],[0,2]]: gcd of entries is 1 and det is 4
  CHECK(smith_normal_form(IntMatrix{{2, 1}, {0, 2}}).invariant_factors == IntVector{1, 4});
  CHECK(smith_normal_form(IntMatrix{{1, 1}, {0, 3}}).invariant_factors == IntVector{1, 3});
  CHECK_THROWS_AS(smith_normal_form(IntMatrix{{0, 0}, {0, 1}}), InputError);
}

TEST_CASE("smith normal form properties on random matrices") {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 6));
    const IntMatrix b = nonsingular(n, -9, 9);
    const SmithData s = smith_normal_form(b);
    CHECK(s.U * b * s.V == s.S);
    CHECK(s.S == diag(s.invariant_factors));
    CHECK(abs(det_exact(s.U)) == 1);
    CHECK(abs(det_exact(s.V)) == 1);
    Integer product = 1;
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(s.invariant_factors[k] > 0);
      if (k + 1 < n) CHECK(s.invariant_factors[k + 1] % s.invariant_factors[k] == 0);
      product *= s.invariant_factors[k];
    }
    CHECK(product == abs(det_exact(b)));
    // the first factor is the gcd of all entries
    Integer g = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) g = gcd(g, b(r, c));
    CHECK(s.invariant_factors[0] == g);
  }
}

TEST_CASE("rational inverse") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 5));
    const IntMatrix b = nonsingular(n, -5, 5);
    CHECK(to_rational(b) * inverse(b) == RationalMatrix::identity(n));
  }
}

TEST_CASE("linear solver examples") {
  RationalMatrix id = RationalMatrix::identity(3);
  RationalVector b{Rational(1, 2), Rational(-3), Rational(7, 5)};
  LinearSolution s = solve_rational_linear(id, b);
  CHECK(s.feasible);
  CHECK(s.particular == b);
  CHECK(s.nullspace_basis.empty());

  LinearSolution none = solve_rational_linear(RationalMatrix{{0}}, RationalVector{Rational(1)});
  CHECK_FALSE(none.feasible);

  LinearSolution line = solve_rational_linear(RationalMatrix{{1, 1}}, RationalVector{Rational(1)});
  REQUIRE(line.feasible);
  CHECK(line.particular[0] + line.particular[1] == 1);
  REQUIRE(line.nullspace_basis.size() == 1);
  const RationalVector& w = line.nullspace_basis[0];
  CHECK(w[0] + w[1] == 0);
  CHECK(w[0] != 0);

  CHECK_THROWS_AS(solve_rational_linear(RationalMatrix{{1, 1}}, RationalVector{1, 2}), InputError);
}

TEST_CASE("linear solver substitution property") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(uniform(1, 6));
    const std::size_t cols = static_cast<std::size_t>(uniform(1, 6));
    RationalMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        a(r, c) = uniform(0, 2) == 0 ? Rational(0) : Rational(uniform(-4, 4), uniform(1, 3));
    // half the time a consistent right-hand side
    RationalVector rhs(rows);
    if (trial % 2 == 0) {
      RationalVector x(cols);
      for (auto& v : x) v = Rational(uniform(-5, 5), uniform(1, 4));
      rhs = a * x;
    } else {
      for (auto& v : rhs) v = uniform(-3, 3);
    }
    LinearSolution s = solve_rational_linear(a, rhs);
    if (trial % 2 == 0) REQUIRE(s.feasible);
    if (!s.feasible) continue;
    RationalVector x = s.particular;
    for (const RationalVector& w : s.nullspace_basis) {
      CHECK(a * w == RationalVector(rows, Rational(0)));
      Rational t(uniform(-7, 7), uniform(1, 5));
      for (std::size_t c = 0; c < cols; ++c) x[c] += t * w[c];
    }
    CHECK(a * x == rhs);
    // rank-nullity: kernel dimension
    IntMatrix scaled(rows, cols);
    Integer lcm_all = 1;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        lcm_all = lcm(lcm_all, Integer(boost::multiprecision::denominator(a(r, c))));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        scaled(r, c) = boost::multiprecision::numerator(Rational(a(r, c) * lcm_all));
    CHECK(s.nullspace_basis.size() == cols - rank_of(scaled));
  }
}

TEST_CASE("sparse solver sees the same system") {
  std::vector<SparseRow> rows = {
      {{{0, Rational(1)}, {1, Rational(1)}}, Rational(2)},
      {{{1, Rational(1)}, {2, Rational(-1)}}, Rational(0)},
      {{{0, Rational(1)}, {2, Rational(1)}}, Rational(2)},
  };
  LinearSolution s = solve_sparse_linear(3, rows, true);
  REQUIRE(s.feasible);
  CHECK(s.particular[0] + s.particular[1] == 2);
  CHECK(s.particular[1] == s.particular[2]);
  CHECK(s.nullspace_basis.size() == 1);

  rows.push_back({{{0, Rational(2)}, {1, Rational(2)}}, Rational(5)});
  CHECK_FALSE(solve_sparse_linear(3, rows, false).feasible);
}

TEST_CASE("column basis enumeration examples") {
  CHECK(enumerate_column_bases(IntMatrix::identity(2)) == std::vector<IndexSet>{{0, 1}});
  CHECK(enumerate_column_bases(IntMatrix{{1, 0, 1}, {0, 1, 1}}) ==
        std::vector<IndexSet>{{0, 1}, {0, 2}, {1, 2}});
  CHECK_THROWS_AS(enumerate_column_bases(IntMatrix{{1, 2}, {2, 4}}), InputError);
}

TEST_CASE("column bases of the 4-dimensional seven-ray example") {
  const IntMatrix m = IntMatrix::from_columns(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, -1},
       {1, 1, -1, 0}, {1, -1, 1, 0}, {-1, 1, 1, 0}},
      4);
  // oracle: cofactor determinant over all C(7,4) subsets
  std::vector<IndexSet> expected;
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = a + 1; b < 7; ++b)
      for (std::size_t c = b + 1; c < 7; ++c)
        for (std::size_t d = c + 1; d < 7; ++d)
          if (cofactor_det(select_columns(m, {a, b, c, d})) != 0) expected.push_back({a, b, c, d});
  const auto bases = enumerate_column_bases(m);
  CHECK(bases == expected);
  // frozen from the oracle above
  CHECK(bases.size() == 25);
  // four bases have index 4, with quotient (Z/2)^2
  std::size_t index_four = 0;
  for (const auto& [basis, det] : enumerate_column_bases_with_det(m)) {
    CHECK((abs(det) == 1 || abs(det) == 2 || abs(det) == 4));
    if (abs(det) == 4) {
      ++index_four;
      CHECK(smith_normal_form(select_columns(m, basis)).invariant_factors == IntVector{1, 1, 2, 2});
    }
  }
  CHECK(index_four == 4);
}
