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

#include <cmath>

#include "dsplit/split.hpp"
#include "test_support.hpp"

using namespace dsplit;
using namespace dsplit::testing;

namespace {

VectorConfig make(std::size_t dim, std::vector<IntVector> rays) {
  return validate_config(dim, rays);
}

const std::vector<IntVector> kSevenRays = {{1, 0, 0, 0}, {0, 1, 0, 0},  {0, 0, 1, 1},
                                           {0, 0, 1, -1}, {1, 1, -1, 0}, {1, -1, 1, 0},
                                           {-1, 1, 1, 0}};

std::vector<std::vector<std::int64_t>> all_residues(std::int64_t q, std::size_t d) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> r(d, 0);
  for (;;) {
    out.push_back(r);
    std::size_t k = d;
    while (k > 0 && r[k - 1] == q - 1) r[--k] = 0;
    if (k == 0) return out;
    ++r[k - 1];
  }
}

// Oracle radius: 1-norm bound from the adjugate of the first nonsingular
// square subset of rays (rows), computed here without the library.
long oracle_radius(const VectorConfig& c) {
  const std::size_t d = c.dim, m = c.canonical.size();
  IndexSet idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  for (;;) {
    IntMatrix rows(d, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) rows(k, i) = c.canonical[idx[k]][i];
    Integer det = cofactor_det(rows);
    if (det != 0) {
      Integer worst = 0;
      for (std::size_t i = 0; i < d; ++i) {
        Integer norm = 0;
        for (std::size_t k = 0; k < d; ++k) {
          IntMatrix minor(d - 1, d - 1);
          for (std::size_t r = 0, rr = 0; r < d; ++r) {
            if (r == k) continue;
            for (std::size_t s = 0, ss = 0; s < d; ++s)
              if (s != i) minor(rr, ss++) = rows(r, s);
            ++rr;
          }
          norm += abs(cofactor_det(minor));
        }
        worst = std::max(worst, Integer(norm / abs(det) + 1));
      }
      return worst.convert_to<long>() + 1;
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == m - d + i - 1) --i;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool congruent(const RationalVector& u, const FractionalClass& c) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!is_integral(u[i] - Rational(c.residues[i], c.q))) return false;
  return true;
}

}  // namespace

TEST_CASE("f_sigma membership") {
  VectorConfig pair = builtin("index2-pair");
  CHECK(f_sigma_contains(pair, RationalVector(2, Rational(0))));
  CHECK(f_sigma_contains(pair, {Rational(-2, 3), Rational(1, 3)}));
  CHECK_FALSE(f_sigma_contains(pair, {Rational(1), Rational(0)}));
  CHECK_FALSE(f_sigma_contains(pair, {Rational(0), Rational(1, 2)}));
  CHECK_THROWS_AS(f_sigma_contains(pair, {Rational(0)}), InputError);
}

TEST_CASE("find_representative examples") {
  VectorConfig pair = builtin("index2-pair");
  auto zero = find_representative(pair, make_class(3, {0, 0}));
  REQUIRE(zero);
  CHECK(*zero == RationalVector(2, Rational(0)));

  auto one_one = find_representative(pair, make_class(3, {1, 1}));
  REQUIRE(one_one);
  CHECK(*one_one == RationalVector{Rational(-2, 3), Rational(1, 3)});

  VectorConfig seven = make(4, kSevenRays);
  CHECK_FALSE(find_representative(seven, make_class(3, {1, 1, -1, 1})));
  CHECK_FALSE(find_representative_reference(seven, make_class(3, {1, 1, -1, 1})));
}

TEST_CASE("slab search agrees with the reference box and a brute-force oracle") {
  int with = 0, without = 0;
  for (int trial = 0; trial < 120; ++trial) {
    VectorConfig c = random_config(3, 6, 2);
    const long radius = oracle_radius(c);
    if (c.dim == 3 && radius > 12) continue;
    const std::int64_t q = uniform(2, 5);
    for (int k = 0; k < 6; ++k) {
      std::vector<std::int64_t> r(c.dim);
      for (auto& x : r) x = uniform(0, q - 1);
      const FractionalClass cls = make_class(q, r);
      auto fast = find_representative(c, cls);
      auto ref = find_representative_reference(c, cls);
      auto brute = brute_representative(c, q, r, radius);
      CHECK(fast.has_value() == ref.has_value());
      CHECK(fast.has_value() == brute.has_value());
      if (fast) {
        ++with;
        CHECK(inside_open_symmetric(c, *fast));
        CHECK(congruent(*fast, cls));
        // both pick the lexicographically least shift
        CHECK(*fast == *ref);
      } else {
        ++without;
      }
      // symmetry
      CHECK(find_representative(c, cls.negated()).has_value() == fast.has_value());
    }
  }
  CHECK(with > 0);
  CHECK(without > 0);
}

TEST_CASE("bounding box soundness") {
  for (int trial = 0; trial < 60; ++trial) {
    VectorConfig c = random_config(3, 6, 3);
    const long radius = oracle_radius(c);
    if (c.dim == 3 && radius > 10) continue;
    const RationalVector bound = f_sigma_box(c);
    // sample points of F on a fine grid found by brute force
    const std::int64_t q = 7;
    for (int k = 0; k < 10; ++k) {
      std::vector<std::int64_t> r(c.dim);
      for (auto& x : r) x = uniform(0, q - 1);
      auto u = brute_representative(c, q, r, radius);
      if (!u) continue;
      for (std::size_t i = 0; i < c.dim; ++i) CHECK(abs((*u)[i]) < bound[i]);
    }
  }
}

TEST_CASE("is_split_at examples") {
  Verdict square = is_split_at(builtin("P1xP1"), 2);
  CHECK(square.split);
  CHECK(square.representatives.size() == 4);

  Verdict canonical = is_split_at(builtin("canonical-2d"), 2);
  CHECK_FALSE(canonical.split);
  REQUIRE(canonical.witness_class);
  CHECK(canonical.witness_class->residues == std::vector<std::int64_t>{1, 1});

  Verdict three = is_split_at(builtin("canonical-2d"), 3);
  CHECK(three.split);
  CHECK(three.representatives.size() == 9);
}

TEST_CASE("seven-ray example witnesses") {
  VectorConfig seven = make(4, kSevenRays);
  // the class floor(q/2)(e1+e2) - e3 + e4 over q has no representative
  for (std::int64_t q : {3, 5, 7, 9}) {
    const FractionalClass cls = make_class(q, {q / 2, q / 2, -1, 1});
    CHECK_FALSE(find_representative(seven, cls));
    CHECK_FALSE(find_representative_reference(seven, cls));
  }
  // At q = 5 the least failing class in residue order comes before
  // (2,2,4,1); the oracle walks classes in order with brute force.
  Verdict v = is_split_at(seven, 5);
  CHECK_FALSE(v.split);
  REQUIRE(v.witness_class);
  const long radius = oracle_radius(seven);
  std::optional<std::vector<std::int64_t>> first_failure;
  for (const auto& r : all_residues(5, 4)) {
    if (!brute_representative(seven, 5, r, radius)) {
      first_failure = r;
      break;
    }
  }
  REQUIRE(first_failure);
  CHECK(v.witness_class->residues == *first_failure);
  CHECK(v.witness_class->residues == std::vector<std::int64_t>{1, 2, 3, 2});
}

TEST_CASE("serial and parallel class loops agree") {
  for (const char* name : {"canonical-2d", "index3-pair", "example-6.3", "smith-1-1-4", "P2"}) {
    VectorConfig c = builtin(name);
    for (std::int64_t q : {2, 3, 4, 5}) {
      Verdict par = is_split_at(c, q, {kDefaultClassCap, true});
      Verdict ser = is_split_at(c, q, {kDefaultClassCap, false});
      CHECK(par.split == ser.split);
      CHECK(par.witness_class == ser.witness_class);
      CHECK(par.classes_checked == ser.classes_checked);
      CHECK(par.representatives == ser.representatives);
    }
  }
}

TEST_CASE("verdict certificates re-verify") {
  for (int trial = 0; trial < 40; ++trial) {
    VectorConfig c = random_config(3, 6, 2);
    const long radius = oracle_radius(c);
    if (c.dim == 3 && radius > 8) continue;
    const std::int64_t q = uniform(2, 5);
    Verdict v = is_split_at(c, q);
    if (v.split) {
      CHECK(v.representatives.size() == static_cast<std::size_t>(std::pow(q, c.dim)));
      for (const auto& [cls, u] : v.representatives) {
        CHECK(f_sigma_contains(c, u));
        CHECK(inside_open_symmetric(c, u));
        CHECK(congruent(u, cls));
      }
    } else {
      REQUIRE(v.witness_class);
      CHECK_FALSE(brute_representative(c, q, v.witness_class->residues, radius));
      CHECK_FALSE(find_representative_reference(c, *v.witness_class));
    }
  }
}

TEST_CASE("split spectrum examples") {
  CHECK(split_spectrum(builtin("index2-pair"), 2, 9).split_qs == std::vector<std::int64_t>{3, 5, 7, 9});
  CHECK(split_spectrum(builtin("P1xP1"), 2, 5).split_qs == std::vector<std::int64_t>{2, 3, 4, 5});
  SpectrumReport three = split_spectrum(builtin("index3-pair"), 2, 7);
  CHECK(three.split_qs.empty());
  CHECK(three.contradictions.empty());
  CHECK_THROWS_AS(split_spectrum(builtin("P1"), 5, 4), InputError);
}

TEST_CASE("class cap is enforced") {
  CHECK_THROWS_AS(is_split_at(builtin("birkhoff-3"), 7, {1000, true}), CapExceeded);
  CHECK_NOTHROW(is_split_at(builtin("P2"), 7, {49, true}));
  CHECK_THROWS_AS(is_split_at(builtin("P2"), 1), InputError);
}

TEST_CASE("unimodular rounding") {
  VectorConfig triangle = builtin("P2");
  IntVector x = unimodular_rounding(triangle, {Rational(1, 3), Rational(2, 3)});
  CHECK((x == IntVector{0, 1} || x == IntVector{1, 0}));
  CHECK(unimodular_rounding(triangle, {Rational(4), Rational(-2)}) == IntVector{4, -2});
  IntVector y = unimodular_rounding(builtin("P1xP1"), {Rational(1, 2), Rational(1, 2)});
  CHECK(y[0] >= 0);
  CHECK(y[0] <= 1);
  CHECK(y[1] >= 0);
  CHECK(y[1] <= 1);
  CHECK_THROWS_AS(unimodular_rounding(builtin("canonical-2d"), {Rational(0), Rational(0)}),
                  InputError);

  // every pairing of a - x lies in (-1, 1)
  for (const char* name : {"P1", "P1xP1", "P2", "birkhoff-3"}) {
    VectorConfig c = builtin(name);
    for (int trial = 0; trial < 40; ++trial) {
      RationalVector a(c.dim);
      for (auto& v : a) v = Rational(uniform(-20, 20), 7);
      IntVector r = unimodular_rounding(c, a);
      RationalVector u(c.dim);
      for (std::size_t i = 0; i < c.dim; ++i) u[i] = a[i] - r[i];
      for (const IntVector& v : c.canonical) {
        Rational p = 0, s = 0;
        for (std::size_t i = 0; i < c.dim; ++i) {
          p += a[i] * v[i];
          s += Rational(r[i]) * v[i];
        }
        CHECK(floor_of(p) <= s);
        CHECK(s <= ceil_of(p));
      }
      CHECK(f_sigma_contains(c, u));
    }
  }
}

TEST_CASE("subspace-restricted search matches the unrestricted one") {
  for (const char* name : {"index2-pair", "canonical-2d", "smith-1-1-4", "twice-identity-3d"}) {
    VectorConfig c = builtin(name);
    for (const IndexSet& basis : enumerate_column_bases(c.canonical_matrix())) {
      NormalFormData nf = normal_form(c, basis);
      for (std::size_t first = 0; first < c.dim; ++first) {
        SubspaceRestriction restriction{nf, first};
        RepresentativeFinder restricted(c, restriction);
        for (std::int64_t q : {2, 3, 5}) {
          for (const auto& r : all_residues(q, c.dim)) {
            FractionalClass cls{q, r};
            if (!class_in_subspace(cls, restriction)) {
              CHECK_THROWS_AS(restricted.find(cls), InputError);
              continue;
            }
            auto u = restricted.find(cls);
            CHECK(u.has_value() == find_representative(c, cls).has_value());
            if (u) {
              CHECK(f_sigma_contains(c, *u));
              CHECK(congruent(*u, cls));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("witness constructions from the normal form") {
  // f_d / 2 is unrepresented at q = 2 for any basis that is not unimodular,
  // and floor(q/2) f_j / q is unrepresented when B_jj >= 3.
  for (const char* name : {"canonical-2d", "index2-pair", "index3-pair", "smith-1-1-4", "example-6.3"}) {
    VectorConfig c = builtin(name);
    for (const auto& [basis, det] : enumerate_column_bases_with_det(c.canonical_matrix())) {
      if (abs(det) == 1) continue;
      NormalFormData nf = normal_form(c, basis);
      const std::size_t d = c.dim;
      std::vector<std::int64_t> f(d);
      for (std::size_t i = 0; i < d; ++i) f[i] = nf.basis_change(d - 1, i).convert_to<std::int64_t>();
      CHECK_FALSE(find_representative(c, make_class(2, f)));
      for (std::size_t j = 0; j < d; ++j) {
        if (nf.B(j, j) < 3) continue;
        for (std::int64_t q : {3, 4, 5, 7}) {
          std::vector<std::int64_t> a(d);
          for (std::size_t i = 0; i < d; ++i)
            a[i] = (q / 2) * nf.basis_change(j, i).convert_to<std::int64_t>();
          CHECK_FALSE(find_representative(c, make_class(q, a)));
        }
      }
    }
  }
}
