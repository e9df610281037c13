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

#include "dsplit/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

#include <omp.h>

namespace dsplit {

Integer det_exact(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

HermiteData hermite_normal_form(const IntMatrix& b) {
  if (!b.is_square()) throw InputError("Hermite normal form needs a square matrix");
  const std::size_t n = b.rows();
  IntMatrix h = b;
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      if (h(i, j) == 0) continue;
      Integer a = h(j, j), c = h(i, j), x, y;
      Integer g = extended_gcd(a, c, x, y);
      Integer a_g = a / g, c_g = c / g;
      // [row_j; row_i] <- [[x, y], [-c/g, a/g]] * [row_j; row_i], det 1
      for (IntMatrix* mat : {&h, &u}) {
        for (std::size_t col = 0; col < n; ++col) {
          Integer rj = (*mat)(j, col), ri = (*mat)(i, col);
          (*mat)(j, col) = x * rj + y * ri;
          (*mat)(i, col) = -c_g * rj + a_g * ri;
        }
      }
    }
    if (h(j, j) == 0) throw InputError("Hermite normal form of a singular matrix");
    if (h(j, j) < 0) {
      h.negate_row(j);
      u.negate_row(j);
    }
    for (std::size_t i = 0; i < j; ++i) {
      Integer f = floor_div(h(i, j), h(j, j));
      if (f != 0) {
        h.add_row_multiple(i, j, -f);
        u.add_row_multiple(i, j, -f);
      }
    }
  }
  return {std::move(h), std::move(u)};
}

SmithData smith_normal_form(const IntMatrix& b) {
  if (!b.is_square()) throw InputError("Smith normal form needs a square matrix");
  const std::size_t n = b.rows();
  if (det_exact(b) == 0) throw InputError("Smith normal form of a singular matrix");
  IntMatrix s = b;
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = t, pc = t;
      bool found = false;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (!found || abs(s(i, j)) < abs(s(pr, pc)))) {
            pr = i;
            pc = j;
            found = true;
          }
      s.swap_rows(t, pr);
      u.swap_rows(t, pr);
      s.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        Integer q = s(i, t) / s(t, t);
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q = s(t, j) / s(t, t);
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row_multiple(t, i, Integer(1));
            u.add_row_multiple(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  SmithData out{std::move(s), std::move(u), std::move(v), {}};
  for (std::size_t i = 0; i < n; ++i) out.invariant_factors.push_back(out.S(i, i));
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw InputError("inverse of a singular matrix");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational pivot = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) /= pivot;
      inv(k, c) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      a.add_row_multiple(i, k, -f);
      inv.add_row_multiple(i, k, -f);
    }
  }
  return inv;
}

RationalMatrix inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

LinearSolution solve_sparse_linear(std::size_t num_vars,
                                   const std::vector<SparseRow>& rows,
                                   bool with_nullspace) {
  struct Pivot {
    std::size_t col;
    std::map<std::size_t, Rational> row;  // includes the pivot with coefficient 1
    Rational rhs;
  };
  std::vector<Pivot> pivots;
  // pivot_of[c] = insertion index of the pivot owning column c
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pivot_of(num_vars, kNone);

  LinearSolution out;
  for (const SparseRow& in : rows) {
    std::map<std::size_t, Rational> row;
    for (const auto& [col, coef] : in.entries) {
      if (col >= num_vars) throw InputError("sparse row column out of range");
      if (coef != 0) row[col] += coef;
    }
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    Rational rhs = in.rhs;

    // Eliminate pivot columns oldest-first; a pivot row only mentions its own
    // column, free columns, and columns of younger pivots, so this terminates.
    for (;;) {
      std::size_t best = kNone;
      for (const auto& kv : row)
        if (pivot_of[kv.first] != kNone) best = std::min(best, pivot_of[kv.first]);
      if (best == kNone) break;
      const Pivot& p = pivots[best];
      Rational f = row.at(p.col);
      for (const auto& [col, coef] : p.row) {
        Rational& slot = row[col];
        slot -= f * coef;
        if (slot == 0) row.erase(col);
      }
      rhs -= f * p.rhs;
    }

    if (row.empty()) {
      if (rhs != 0) return out;  // infeasible
      continue;
    }
    auto lead = row.begin();
    Rational scale = lead->second;
    for (auto& kv : row) kv.second /= scale;
    rhs /= scale;
    pivot_of[lead->first] = pivots.size();
    pivots.push_back({lead->first, std::move(row), std::move(rhs)});
  }

  auto back_substitute = [&](RationalVector& x, bool homogeneous) {
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const Pivot& p = pivots[k];
      Rational value = homogeneous ? Rational(0) : p.rhs;
      for (const auto& [col, coef] : p.row)
        if (col != p.col && x[col] != 0) value -= coef * x[col];
      x[p.col] = value;
    }
  };

  out.feasible = true;
  out.particular.assign(num_vars, Rational(0));
  back_substitute(out.particular, false);
  if (with_nullspace) {
    for (std::size_t c = 0; c < num_vars; ++c) {
      if (pivot_of[c] != kNone) continue;
      RationalVector w(num_vars, Rational(0));
      w[c] = 1;
      back_substitute(w, true);
      out.nullspace_basis.push_back(std::move(w));
    }
  }
  return out;
}

LinearSolution solve_rational_linear(const RationalMatrix& a,
                                     const RationalVector& rhs,
                                     bool with_nullspace) {
  if (a.rows() != rhs.size())
    throw InputError("linear system: " + std::to_string(a.rows()) + " rows but " +
                     std::to_string(rhs.size()) + " right-hand sides");
  std::vector<SparseRow> rows(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) rows[r].entries.emplace_back(c, a(r, c));
    rows[r].rhs = rhs[r];
  }
  return solve_sparse_linear(a.cols(), rows, with_nullspace);
}

IntMatrix select_columns(const IntMatrix& m, const IndexSet& indices) {
  IntMatrix out(m.rows(), indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= m.cols()) throw InputError("column index out of range");
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, indices[j]);
  }
  return out;
}

std::size_t rank_of(const IntMatrix& m) {
  RationalMatrix a = to_rational(m);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(rank, p);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      a.add_row_multiple(i, rank, -a(i, c) / a(rank, c));
    }
    ++rank;
  }
  return rank;
}

namespace {

std::vector<IndexSet> all_subsets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > n) return out;
  IndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<std::pair<IndexSet, Integer>> enumerate_column_bases_with_det(
    const IntMatrix& m) {
  const std::size_t d = m.rows();
  const std::vector<IndexSet> subsets = all_subsets(m.cols(), d);
  std::vector<Integer> dets(subsets.size());
  const auto count = static_cast<std::int64_t>(subsets.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 0; s < count; ++s) {
    dets[s] = det_exact(select_columns(m, subsets[s]));
  }
  std::vector<std::pair<IndexSet, Integer>> out;
  for (std::size_t s = 0; s < subsets.size(); ++s)
    if (dets[s] != 0) out.emplace_back(subsets[s], std::move(dets[s]));
  if (out.empty()) throw InputError("column set does not have full row rank");
  return out;
}

std::vector<IndexSet> enumerate_column_bases(const IntMatrix& m) {
  std::vector<IndexSet> out;
  for (auto& [basis, det] : enumerate_column_bases_with_det(m))
    out.push_back(std::move(basis));
  return out;
}

}  // namespace dsplit
