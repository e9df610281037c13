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

// Random splitting candidates for compatibility tests: sparse random ones,
// sums of pi_(0,..,u,-u,..,0) over a full table of representatives of
// (1/q)M/M (which tend to be compatible), and perturbations of those.

#ifndef DSPLIT_TESTS_CANDIDATES_HPP
#define DSPLIT_TESTS_CANDIDATES_HPP

#include <map>

#include "dsplit/split.hpp"
#include "dsplit/subdiagonal.hpp"
#include "test_support.hpp"

namespace dsplit::testing {

inline Rational random_coefficient() {
  static const long kNum[] = {-2, -1, 1, 1, 2, 3};
  return Rational(kNum[uniform(0, 5)], uniform(1, 3));
}

inline SplittingCandidate sorted_candidate(std::int64_t q, std::size_t n, std::size_t d,
                                           const std::map<LatticePoint, Rational>& terms) {
  SplittingCandidate pi{q, n, d, {}, {}};
  for (const auto& [a, c] : terms) {
    pi.support.push_back(a);
    pi.coefficients.push_back(c);
  }
  return pi;
}

inline SplittingCandidate random_sparse_candidate(const std::vector<LatticePoint>& support,
                                                  std::int64_t q, std::size_t n, std::size_t d) {
  std::map<LatticePoint, Rational> terms;
  terms[LatticePoint(n * d, 0)] = 1;
  const long extra = uniform(1, 4);
  for (long k = 0; k < extra; ++k) {
    const LatticePoint& a = support[static_cast<std::size_t>(uniform(0, static_cast<long>(support.size()) - 1))];
    if (terms.count(a)) continue;
    terms[a] = random_coefficient();
  }
  return sorted_candidate(q, n, d, terms);
}

// Sum over classes t of pi at (0,..,u_t,-u_t,..,0) in blocks (block, block+1),
// u_t in F a representative of t / q. Numerators over q.
inline SplittingCandidate diagonal_candidate(const Verdict& verdict, std::size_t n,
                                             std::size_t d, std::size_t block) {
  std::map<LatticePoint, Rational> terms;
  for (const auto& [cls, u] : verdict.representatives) {
    LatticePoint a(n * d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      const Rational scaled = u[j] * verdict.q;
      const std::int64_t x = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>();
      a[block * d + j] = x;
      a[(block + 1) * d + j] = -x;
    }
    terms[a] += 1;
  }
  return sorted_candidate(verdict.q, n, d, terms);
}

inline SplittingCandidate perturbed(SplittingCandidate pi, const std::vector<LatticePoint>& support) {
  switch (uniform(0, 2)) {
    case 0: {  // rescale one non-origin coefficient
      if (pi.support.size() < 2) break;
      std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long>(pi.support.size()) - 1));
      bool origin = std::all_of(pi.support[k].begin(), pi.support[k].end(),
                                [](std::int64_t x) { return x == 0; });
      if (!origin) pi.coefficients[k] *= 2;
      break;
    }
    case 1: {  // add a stray term
      std::map<LatticePoint, Rational> terms;
      for (std::size_t k = 0; k < pi.support.size(); ++k) terms[pi.support[k]] = pi.coefficients[k];
      const LatticePoint& a = support[static_cast<std::size_t>(uniform(0, static_cast<long>(support.size()) - 1))];
      if (!terms.count(a)) terms[a] = random_coefficient();
      pi = sorted_candidate(pi.q, pi.n, pi.d, terms);
      break;
    }
    default:  // keep as is
      break;
  }
  return pi;
}

}  // namespace dsplit::testing

#endif  // DSPLIT_TESTS_CANDIDATES_HPP
