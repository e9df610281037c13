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

#ifndef DSPLIT_CONFIG_HPP
#define DSPLIT_CONFIG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dsplit/arith.hpp"
#include "dsplit/lattice.hpp"
#include "dsplit/matrix.hpp"

namespace dsplit {

/// Ray configuration of a fan: primitive vectors spanning Z^dim.
///
/// Two views are kept. `rays` is the list as given (exact repeats dropped);
/// the one-sided support polytope {u : <u, v> < 1} depends on signs, so the
/// subdiagonal solver reads it. `canonical` holds one representative per
/// +/- pair, sign-normalised so the first nonzero coordinate is positive;
/// every sign-invariant test (unimodularity, regularity, the symmetric
/// polytope) works on it, and basis index sets refer to it.
struct VectorConfig {
  std::string name;
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<IntVector> canonical;
  std::vector<std::string> warnings;

  /// dim x |canonical| matrix with the canonical rays as columns.
  IntMatrix canonical_matrix() const;
};

/// Throws InputError naming the offending ray on: empty input, wrong length,
/// zero or non-primitive vectors, or a set that does not span.
VectorConfig validate_config(std::size_t dim, const std::vector<IntVector>& raw,
                             std::string name = {});

IntVector sign_canonical(const IntVector& v);

struct UnimodularityReport {
  bool unimodular = false;
  std::optional<IndexSet> witness;  // lexicographically first |det| != 1 basis
  Integer witness_det;
};
UnimodularityReport is_unimodular(const VectorConfig& config);

struct RegularityReport {
  bool regular = false;
  std::optional<IndexSet> witness;
  Integer witness_factor;  // first invariant factor of the witness not dividing k
};

/// Every column basis spans a sublattice whose quotient is annihilated by k,
/// i.e. every Smith invariant factor divides k. k = 1 is unimodularity.
RegularityReport is_k_regular(const VectorConfig& config, const Integer& k);

/// Basis put in the ordered Hermite form
///
///     B = [ I_r  C  ]
///         [ 0    B' ]
///
/// where the first r columns span a saturated sublattice, no further column
/// can be added while keeping it saturated, and U * (ordered columns) = B.
struct NormalFormData {
  IndexSet column_order;  // indices into the caller's column list, in B order
  IntMatrix basis_change; // U
  IntMatrix B;
  std::size_t r = 0;
  IntMatrix B_prime;
  bool b_prime_is_twice_identity = false;
};

/// Normal form of an arbitrary nonsingular square integer matrix, treating
/// its columns as the basis. Ties in the greedy ordering go to the lower
/// column index.
NormalFormData normal_form_of_columns(const IntMatrix& columns);

/// Normal form of a column basis of the configuration (canonical indices).
NormalFormData normal_form(const VectorConfig& config, const IndexSet& basis);

/// True iff the columns span a saturated sublattice of Z^rows.
bool spans_saturated(const IntMatrix& columns);

/// Every canonical ray has coordinate 1-norm at most 2, in the given basis.
bool is_binet_coordinates(const VectorConfig& config);

enum class SplitSetTag { AllQ, OddOnly, NoneQ, UnknownOddCandidates };

const char* to_string(SplitSetTag tag);

struct Justification {
  std::string rule;
  std::string detail;
};

struct Prediction {
  SplitSetTag tag = SplitSetTag::UnknownOddCandidates;
  std::vector<Justification> justification;
};

/// First matching rule wins: unimodular -> AllQ; not 2-regular -> NoneQ;
/// 2-regular and (dim 2, binet in the given coordinates, or exactly dim rays
/// up to sign) -> OddOnly; anything else -> UnknownOddCandidates, where
/// even q are already excluded.
Prediction predict_split_set(const VectorConfig& config);

}  // namespace dsplit

#endif  // DSPLIT_CONFIG_HPP
