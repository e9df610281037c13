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

// Diagonal splitting decider.
//
// X is diagonally split at q exactly when the open polytope
//
//     F = { u : |<u, v>| < 1 for every ray v }
//
// contains a representative of every class of (1/q)M / M. Classes are
// residue vectors mod q; representatives are exact rational points.

#ifndef DSPLIT_SPLIT_HPP
#define DSPLIT_SPLIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsplit/arith.hpp"
#include "dsplit/config.hpp"
#include "dsplit/lattice.hpp"

namespace dsplit {

inline constexpr std::uint64_t kDefaultClassCap = 10'000'000;

/// Element of (1/q)M / M: the point residues / q, residues reduced mod q.
struct FractionalClass {
  std::int64_t q = 2;
  std::vector<std::int64_t> residues;

  RationalVector point() const;
  FractionalClass negated() const;
  friend auto operator<=>(const FractionalClass&, const FractionalClass&) = default;
};

/// Reduces arbitrary integer numerators mod q.
FractionalClass make_class(std::int64_t q, const std::vector<std::int64_t>& numerators);

/// |<u, v>| < 1 for every ray, in exact arithmetic.
bool f_sigma_contains(const VectorConfig& config, const RationalVector& u);

/// Integer shifts m with |<base + m, v>| < 1 for every ray, found through a
/// square nonsingular subset of the rays (the slab basis): each slab pairing
/// confines <m, v_k> to at most two integers, so at most 2^s candidates need
/// checking. Exhaustive, and exact.
class SlabSearch {
 public:
  /// `rays` in search coordinates; `slab` indexes a nonsingular subset.
  SlabSearch(std::vector<IntVector> rays, const IndexSet& slab);

  /// Lexicographically least admissible shift, if any.
  std::optional<IntVector> least_shift(const RationalVector& base) const;

  /// Every admissible shift, sorted lexicographically.
  std::vector<IntVector> all_shifts(const RationalVector& base) const;

 private:
  std::vector<IntVector> rays_;
  IndexSet slab_;
  RationalMatrix slab_inverse_;  // inverse of the matrix with slab rays as rows
};

/// Normal-form coordinates for subspace-restricted searches: representatives
/// are sought in (1/q)M_j, the span of the dual basis vectors f_j..f_d of the
/// basis that brings the chosen rays into normal form. `first` is 0-based.
struct SubspaceRestriction {
  NormalFormData normal_form;
  std::size_t first = 0;
};

/// Repeated representative search against one configuration.
class RepresentativeFinder {
 public:
  explicit RepresentativeFinder(const VectorConfig& config);
  RepresentativeFinder(const VectorConfig& config, SubspaceRestriction restriction);

  /// A point of F congruent to the class, with the lexicographically least
  /// shift from residues / q; nullopt when the class has no representative.
  /// Throws InputError when a restriction is active and the class is not in
  /// (1/q)M_j.
  std::optional<RationalVector> find(const FractionalClass& cls) const;

 private:
  std::size_t dim_;
  std::optional<SubspaceRestriction> restriction_;
  IntMatrix inverse_transpose_;  // U^{-T}: M coordinates -> normal-form coordinates
  IntMatrix basis_change_transpose_;  // U^T: the way back
  SlabSearch search_;
};

std::optional<RationalVector> find_representative(
    const VectorConfig& config, const FractionalClass& cls,
    const std::optional<SubspaceRestriction>& restriction = std::nullopt);

/// True iff the class lies in (1/q)M_j for the restriction's coordinates.
bool class_in_subspace(const FractionalClass& cls, const SubspaceRestriction& restriction);

/// Per-coordinate bound: every u in F has |u_i| < bound[i], the 1-norm of
/// row i of R^{-1}, R being the lexicographically first basis with rays as
/// rows.
RationalVector f_sigma_box(const VectorConfig& config);

/// Reference search: enumerate every integer shift that places residues / q
/// inside the closed f_sigma_box and test membership. Serial and slow; kept
/// to cross-check the slab search and to re-verify witness classes.
std::optional<RationalVector> find_representative_reference(const VectorConfig& config,
                                                            const FractionalClass& cls);

struct Verdict {
  bool split = false;
  std::int64_t q = 0;
  /// Every class with its representative, sorted by class (when split).
  std::vector<std::pair<FractionalClass, RationalVector>> representatives;
  /// Lexicographically least class without a representative (when not split).
  std::optional<FractionalClass> witness_class;
  /// Sign orbits {c, -c} decided before the verdict was reached.
  std::uint64_t classes_checked = 0;
};

struct SplitOptions {
  std::uint64_t class_cap = kDefaultClassCap;
  bool parallel = true;
};

/// Exhaustive class loop. The parallel and serial paths return identical
/// verdicts. Throws CapExceeded when q^d exceeds the cap.
Verdict is_split_at(const VectorConfig& config, std::int64_t q,
                    const SplitOptions& options = {});

struct SpectrumReport {
  std::vector<std::int64_t> split_qs;
  std::vector<Verdict> verdicts;  // one per q, ascending
  Prediction prediction;
  std::vector<std::string> contradictions;
};

/// is_split_at over q_lo..q_hi, checked against predict_split_set.
SpectrumReport split_spectrum(const VectorConfig& config, std::int64_t q_lo,
                              std::int64_t q_hi, const SplitOptions& options = {});

/// Lexicographically least x in Z^d with floor(<a,v>) <= <x,v> <= ceil(<a,v>)
/// for every ray. Requires a unimodular configuration; a - x then represents
/// the class of a inside F.
IntVector unimodular_rounding(const VectorConfig& config, const RationalVector& a);

}  // namespace dsplit

#endif  // DSPLIT_SPLIT_HPP
