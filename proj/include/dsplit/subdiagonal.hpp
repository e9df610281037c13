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

// Splittings of X^n compatible with unions of subdiagonals.
//
// A candidate splitting is a finitely supported function a -> c_a on
// (1/q)M^n with support in the n-fold product of the one-sided polytope
// P = { u : <u, v> < 1 for every signed ray v } and c_0 = 1. For the i-th
// subdiagonal, L_i is the sublattice of M^n supported on blocks i, i+1 with
// opposite entries, and
//
//     D_i(b)([w]) = sum { c_a : a + b in M^n, (a + b) mod L_i = [w] }.
//
// The splitting is compatible with the i-th subdiagonal iff D_i(b) = D_i(b')
// whenever b = b' mod (1/q)L_i.
//
// Points of (1/q)M^n are stored as integer numerator vectors of length n*d
// over the shared denominator q, block-major.

#ifndef DSPLIT_SUBDIAGONAL_HPP
#define DSPLIT_SUBDIAGONAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dsplit/arith.hpp"
#include "dsplit/config.hpp"

namespace dsplit {

inline constexpr std::uint64_t kDefaultSupportCap = 100'000;

using LatticePoint = std::vector<std::int64_t>;

/// Bounding box of the closed one-sided polytope { u : <u, v> <= 1 }, from its
/// vertices. Throws InputError when the signed rays do not positively span
/// (the polytope is unbounded).
struct SupportBox {
  RationalVector lo;
  RationalVector hi;
};
SupportBox support_polytope_box(const VectorConfig& config);

/// Numerators of P ∩ (1/q)M, lexicographic.
std::vector<LatticePoint> support_points(const VectorConfig& config, std::int64_t q);

/// P^n ∩ (1/q)M^n as the n-fold product of support_points, lexicographic.
/// Throws CapExceeded past `cap` points.
std::vector<LatticePoint> product_support(const VectorConfig& config, std::int64_t q,
                                          std::size_t n,
                                          std::uint64_t cap = kDefaultSupportCap);

struct SplittingCandidate {
  std::int64_t q = 2;
  std::size_t n = 2;
  std::size_t d = 1;
  std::vector<LatticePoint> support;
  std::vector<Rational> coefficients;
};

/// Throws InputError unless: shapes agree, support points are distinct and lie
/// in P^n, and the coefficient at the origin is 1.
void validate_candidate(const VectorConfig& config, const SplittingCandidate& pi);

/// L_i with its generators lambda_k (f_k in block i, -f_k in block i+1) and
/// the block-summing quotient map M^n -> M^(n-1) whose kernel is L_i.
/// `i` is 1-based.
struct SubdiagonalLattice {
  std::size_t i = 1;
  std::size_t n = 2;
  std::size_t d = 1;
  std::vector<LatticePoint> generators;

  LatticePoint quotient(const LatticePoint& w) const;
};
SubdiagonalLattice subdiagonal_lattice(std::size_t n, std::size_t d, std::size_t i);

/// D_i(b) for b given by numerators over pi.q; zero entries are dropped so
/// two distributions are equal exactly when the maps are equal.
using Distribution = std::map<LatticePoint, Rational>;
Distribution distribution(const SplittingCandidate& pi, const SubdiagonalLattice& lattice,
                          const LatticePoint& b);

/// Compatibility with the i-th subdiagonal through the finite reduction:
/// D_i(b) = D_i(b + lambda_k / q) for each generator and each b, taken mod
/// M^n, whose class meets -supp or -supp -+ lambda_k / q.
bool compatibility_check(const SplittingCandidate& pi, std::size_t i);

/// The same condition evaluated from its definition on every pair b, b' of
/// the window { x in (1/q)M^n : |x_j| <= radius }. Validation oracle only.
bool compatibility_check_direct(const SplittingCandidate& pi, std::size_t i,
                                std::int64_t radius);

/// Sets up the linear conditions on c_a over the full product support for
/// every i in `i_set`, adds c_0 = 1 and solves exactly. Only the connected
/// block of equations containing c_0 carries a right-hand side; every other
/// block is homogeneous and is solved by zero. Returns the particular
/// solution (free variables zero) restricted to its nonzero coefficients.
std::optional<SplittingCandidate> find_compatible_splitting(
    const VectorConfig& config, std::int64_t q, std::size_t n,
    const std::vector<std::size_t>& i_set, std::uint64_t cap = kDefaultSupportCap);

struct NecessaryReport {
  bool holds = false;
  /// Residues t of the first class t/q * lambda with no representative.
  std::optional<std::vector<std::int64_t>> witness;
};

/// Every class of (1/q)L_i / L_i has a representative in P^n. A
/// representative of the class of t/q * lambda has the shape
/// (0, .., y, -y, .., 0), so the search runs over y = t/q + m in the box.
NecessaryReport necessary_condition(const VectorConfig& config, std::int64_t q,
                                    std::size_t n, std::size_t i,
                                    std::uint64_t class_cap = 10'000'000);

}  // namespace dsplit

#endif  // DSPLIT_SUBDIAGONAL_HPP
