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

// Exact integer and rational matrix kernel. Nothing in here touches floating
// point; every routine is a pure function of its arguments.

#ifndef DSPLIT_LATTICE_HPP
#define DSPLIT_LATTICE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dsplit/arith.hpp"
#include "dsplit/matrix.hpp"

namespace dsplit {

using IndexSet = std::vector<std::size_t>;

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer det_exact(const IntMatrix& m);

/// Left Hermite normal form: U * B == H with H upper triangular, positive
/// diagonal, and 0 <= H(i, j) < H(j, j) above the diagonal. U is unimodular.
struct HermiteData {
  IntMatrix H;
  IntMatrix U;
};
HermiteData hermite_normal_form(const IntMatrix& b);

/// U * B * V == S with S diagonal, nonnegative, and each diagonal entry
/// dividing the next.
struct SmithData {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  IntVector invariant_factors;
};
SmithData smith_normal_form(const IntMatrix& b);

/// Exact inverse of a nonsingular square matrix.
RationalMatrix inverse(const RationalMatrix& m);
RationalMatrix inverse(const IntMatrix& m);

struct LinearSolution {
  bool feasible = false;
  RationalVector particular;                // free variables set to zero
  std::vector<RationalVector> nullspace_basis;
};

/// Sparse row for large, mostly-zero systems.
struct SparseRow {
  std::vector<std::pair<std::size_t, Rational>> entries;  // (column, coefficient)
  Rational rhs;
};

/// Gaussian elimination over the rationals on a sparse system with
/// `num_vars` unknowns. Pivot columns are chosen as the smallest remaining
/// column of each incoming row; the particular solution sets every non-pivot
/// column to zero. The null space is only assembled when asked for.
LinearSolution solve_sparse_linear(std::size_t num_vars,
                                   const std::vector<SparseRow>& rows,
                                   bool with_nullspace);

/// Dense front end of the same elimination: A * x == rhs.
LinearSolution solve_rational_linear(const RationalMatrix& a,
                                     const RationalVector& rhs,
                                     bool with_nullspace = true);

/// Columns `indices` of m, in the given order.
IntMatrix select_columns(const IntMatrix& m, const IndexSet& indices);

std::size_t rank_of(const IntMatrix& m);

/// All size-`rows` column subsets with nonzero determinant, in lexicographic
/// order. Determinants are evaluated in parallel; the output order does not
/// depend on the thread count.
std::vector<IndexSet> enumerate_column_bases(const IntMatrix& m);

/// Same enumeration, also returning each basis determinant.
std::vector<std::pair<IndexSet, Integer>> enumerate_column_bases_with_det(
    const IntMatrix& m);

}  // namespace dsplit

#endif  // DSPLIT_LATTICE_HPP
