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

#include "dsplit/subdiagonal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "dsplit/lattice.hpp"

namespace dsplit {

namespace {

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (std::int64_t x : p) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

template <typename V>
using PointMap = std::unordered_map<LatticePoint, V, PointHash>;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

LatticePoint residue(const LatticePoint& p, std::int64_t q) {
  LatticePoint r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r[j] = floor_mod(p[j], q);
  return r;
}

LatticePoint negate(const LatticePoint& p) {
  LatticePoint r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r[j] = -p[j];
  return r;
}

LatticePoint add(const LatticePoint& a, const LatticePoint& b, std::int64_t sign = 1) {
  LatticePoint r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + sign * b[j];
  return r;
}

void check_index(std::size_t n, std::size_t i) {
  if (i < 1 || i + 1 > n)
    throw InputError("subdiagonal index " + std::to_string(i) + " outside 1.." +
                     std::to_string(n == 0 ? 0 : n - 1));
}

// Support points grouped by residue class mod q, nonzero coefficients only.
class ClassIndex {
 public:
  ClassIndex(const std::vector<LatticePoint>& points, std::int64_t q) : q_(q) {
    for (std::size_t k = 0; k < points.size(); ++k) groups_[residue(points[k], q)].push_back(k);
  }

  // Points a with a + b in M^n.
  const std::vector<std::size_t>& partners(const LatticePoint& b) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = groups_.find(residue(negate(b), q_));
    return it == groups_.end() ? kEmpty : it->second;
  }

  const PointMap<std::vector<std::size_t>>& groups() const { return groups_; }

 private:
  std::int64_t q_;
  PointMap<std::vector<std::size_t>> groups_;
};

// key of (a + b) / q in M^n / L_i
LatticePoint class_key(const LatticePoint& a, const LatticePoint& b, std::int64_t q,
                       const SubdiagonalLattice& lattice) {
  LatticePoint w(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) w[j] = (a[j] + b[j]) / q;
  return lattice.quotient(w);
}

struct SparseCandidate {
  std::vector<LatticePoint> points;
  std::vector<Rational> coefficients;
};

SparseCandidate nonzero_part(const SplittingCandidate& pi) {
  if (pi.support.size() != pi.coefficients.size())
    throw InputError("support and coefficient lists differ in length");
  SparseCandidate s;
  for (std::size_t k = 0; k < pi.support.size(); ++k) {
    if (pi.support[k].size() != pi.n * pi.d)
      throw InputError("support point " + std::to_string(k) + " has the wrong length");
    if (pi.coefficients[k] == 0) continue;
    s.points.push_back(pi.support[k]);
    s.coefficients.push_back(pi.coefficients[k]);
  }
  return s;
}

Distribution distribution_from(const SparseCandidate& s, const ClassIndex& index,
                               std::int64_t q, const SubdiagonalLattice& lattice,
                               const LatticePoint& b) {
  Distribution out;
  for (std::size_t k : index.partners(b)) {
    Rational& slot = out[class_key(s.points[k], b, q, lattice)];
    slot += s.coefficients[k];
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// Canonical b (numerators mod q) worth testing against each generator.
std::set<LatticePoint> reduction_points(const std::vector<LatticePoint>& points,
                                        const SubdiagonalLattice& lattice, std::int64_t q) {
  std::set<LatticePoint> out;
  std::set<LatticePoint> seen;
  for (const LatticePoint& a : points) {
    LatticePoint base = residue(negate(a), q);
    if (!seen.insert(base).second) continue;
    out.insert(base);
    for (const LatticePoint& g : lattice.generators) {
      out.insert(residue(add(base, g, -1), q));
      out.insert(residue(add(base, g, +1), q));
    }
  }
  return out;
}

}  // namespace

void validate_candidate(const VectorConfig& config, const SplittingCandidate& pi) {
  if (pi.q < 2) throw InputError("candidate q must be at least 2");
  if (pi.d != config.dim) throw InputError("candidate dimension does not match the configuration");
  if (pi.n < 1) throw InputError("candidate needs at least one factor");
  if (pi.support.size() != pi.coefficients.size())
    throw InputError("support and coefficient lists differ in length");
  std::set<LatticePoint> seen;
  bool has_origin = false;
  for (std::size_t k = 0; k < pi.support.size(); ++k) {
    const LatticePoint& a = pi.support[k];
    if (a.size() != pi.n * pi.d)
      throw InputError("support point " + std::to_string(k) + " has the wrong length");
    if (!seen.insert(a).second)
      throw InputError("support point " + std::to_string(k) + " is repeated");
    for (std::size_t f = 0; f < pi.n; ++f)
      for (const IntVector& v : config.rays) {
        Integer s = 0;
        for (std::size_t j = 0; j < pi.d; ++j) s += Integer(a[f * pi.d + j]) * v[j];
        if (s >= pi.q)
          throw InputError("support point " + std::to_string(k) +
                           " leaves the support polytope in factor " + std::to_string(f + 1));
      }
    if (std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; })) {
      has_origin = true;
      if (pi.coefficients[k] != 1) throw InputError("coefficient at the origin must be 1");
    }
  }
  if (!has_origin) throw InputError("coefficient at the origin must be 1");
}

LatticePoint SubdiagonalLattice::quotient(const LatticePoint& w) const {
  LatticePoint out;
  out.reserve((n - 1) * d);
  for (std::size_t f = 0; f < n; ++f) {
    if (f + 1 == i) {  // block i absorbs block i + 1
      for (std::size_t j = 0; j < d; ++j) out.push_back(w[f * d + j] + w[(f + 1) * d + j]);
      ++f;
      continue;
    }
    for (std::size_t j = 0; j < d; ++j) out.push_back(w[f * d + j]);
  }
  return out;
}

SubdiagonalLattice subdiagonal_lattice(std::size_t n, std::size_t d, std::size_t i) {
  check_index(n, i);
  SubdiagonalLattice lattice{i, n, d, {}};
  for (std::size_t k = 0; k < d; ++k) {
    LatticePoint g(n * d, 0);
    g[(i - 1) * d + k] = 1;
    g[i * d + k] = -1;
    lattice.generators.push_back(std::move(g));
  }
  return lattice;
}

Distribution distribution(const SplittingCandidate& pi, const SubdiagonalLattice& lattice,
                          const LatticePoint& b) {
  if (b.size() != pi.n * pi.d) throw InputError("shift has the wrong length");
  SparseCandidate s = nonzero_part(pi);
  ClassIndex index(s.points, pi.q);
  return distribution_from(s, index, pi.q, lattice, b);
}

bool compatibility_check(const SplittingCandidate& pi, std::size_t i) {
  const SubdiagonalLattice lattice = subdiagonal_lattice(pi.n, pi.d, i);
  const SparseCandidate s = nonzero_part(pi);
  const ClassIndex index(s.points, pi.q);
  for (const LatticePoint& b : reduction_points(s.points, lattice, pi.q)) {
    const Distribution here = distribution_from(s, index, pi.q, lattice, b);
    for (const LatticePoint& g : lattice.generators) {
      if (distribution_from(s, index, pi.q, lattice, add(b, g)) != here) return false;
    }
  }
  return true;
}

bool compatibility_check_direct(const SplittingCandidate& pi, std::size_t i,
                                std::int64_t radius) {
  if (radius < 0) throw InputError("window radius must be nonnegative");
  const SubdiagonalLattice lattice = subdiagonal_lattice(pi.n, pi.d, i);
  const SparseCandidate s = nonzero_part(pi);
  const ClassIndex index(s.points, pi.q);
  const std::int64_t q = pi.q;
  const std::int64_t edge = radius * q;
  const std::size_t len = pi.n * pi.d;

  struct Group {
    std::uint64_t nonzero = 0;
    Distribution reference;
    LatticePoint sample;
  };
  PointMap<Group> groups;  // keyed by the class of b mod (1/q)L_i

  // Only classes meeting -supp can carry a nonzero distribution; walk every
  // window point of those classes.
  std::set<LatticePoint> classes;
  for (const LatticePoint& a : s.points) classes.insert(residue(negate(a), q));
  for (const LatticePoint& c : classes) {
    LatticePoint b(len);
    for (std::size_t j = 0; j < len; ++j) b[j] = -edge + c[j];
    for (;;) {
      Distribution dist = distribution_from(s, index, q, lattice, b);
      if (!dist.empty()) {
        Group& g = groups[lattice.quotient(b)];
        if (g.nonzero == 0) {
          g.reference = std::move(dist);
          g.sample = b;
        } else if (dist != g.reference) {
          return false;
        }
        ++g.nonzero;
      }
      std::size_t k = len;
      while (k > 0 && b[k - 1] + q > edge) {
        b[k - 1] = -edge + c[k - 1];
        --k;
      }
      if (k == 0) break;
      b[k - 1] += q;
    }
  }

  // A coset that also has window points with zero distribution disagrees.
  for (const auto& [key, g] : groups) {
    std::uint64_t members = 1;
    for (std::size_t k = 0; k < pi.d; ++k) {
      std::int64_t x = g.sample[(i - 1) * pi.d + k];
      std::int64_t y = g.sample[i * pi.d + k];
      std::int64_t lo = std::max(-edge - x, y - edge);
      std::int64_t hi = std::min(edge - x, y + edge);
      members *= static_cast<std::uint64_t>(hi >= lo ? hi - lo + 1 : 0);
    }
    if (g.nonzero < members) return false;
  }
  return true;
}

std::optional<SplittingCandidate> find_compatible_splitting(
    const VectorConfig& config, std::int64_t q, std::size_t n,
    const std::vector<std::size_t>& i_set, std::uint64_t cap) {
  if (q < 2) throw InputError("q must be at least 2");
  if (i_set.empty()) throw InputError("empty set of subdiagonals");
  for (std::size_t i : i_set) check_index(n, i);

  const std::vector<LatticePoint> points = product_support(config, q, n, cap);
  const std::size_t num_vars = points.size();
  const LatticePoint origin(n * config.dim, 0);
  const std::size_t origin_var = static_cast<std::size_t>(
      std::lower_bound(points.begin(), points.end(), origin) - points.begin());
  if (origin_var == num_vars || points[origin_var] != origin)
    throw std::logic_error("origin missing from the product support");

  const ClassIndex index(points, q);
  using Form = std::map<LatticePoint, std::vector<std::size_t>>;
  auto linear_form = [&](const SubdiagonalLattice& lattice, const LatticePoint& b) {
    Form form;
    for (std::size_t k : index.partners(b)) form[class_key(points[k], b, q, lattice)].push_back(k);
    return form;
  };

  std::set<std::vector<std::pair<std::size_t, int>>> equations;
  for (std::size_t i : i_set) {
    const SubdiagonalLattice lattice = subdiagonal_lattice(n, config.dim, i);
    for (const LatticePoint& b : reduction_points(points, lattice, q)) {
      const Form here = linear_form(lattice, b);
      for (const LatticePoint& g : lattice.generators) {
        const Form there = linear_form(lattice, add(b, g));
        std::set<LatticePoint> keys;
        for (const auto& kv : here) keys.insert(kv.first);
        for (const auto& kv : there) keys.insert(kv.first);
        for (const LatticePoint& key : keys) {
          std::vector<std::pair<std::size_t, int>> eq;
          if (auto it = here.find(key); it != here.end())
            for (std::size_t v : it->second) eq.emplace_back(v, 1);
          if (auto it = there.find(key); it != there.end())
            for (std::size_t v : it->second) eq.emplace_back(v, -1);
          std::sort(eq.begin(), eq.end());
          if (eq.front().second < 0)
            for (auto& e : eq) e.second = -e.second;
          equations.insert(std::move(eq));
        }
      }
    }
  }

  // Union-find over variables sharing an equation.
  std::vector<std::size_t> parent(num_vars);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& eq : equations)
    for (std::size_t k = 1; k < eq.size(); ++k) parent[root(eq[k].first)] = root(eq[0].first);

  const std::size_t target = root(origin_var);
  std::vector<std::size_t> local_of(num_vars, num_vars), global_of;
  for (std::size_t v = 0; v < num_vars; ++v)
    if (root(v) == target) {
      local_of[v] = global_of.size();
      global_of.push_back(v);
    }

  std::vector<SparseRow> rows;
  rows.push_back({{{local_of[origin_var], Rational(1)}}, Rational(1)});
  for (const auto& eq : equations) {
    if (root(eq.front().first) != target) continue;
    SparseRow row;
    for (const auto& [v, c] : eq) row.entries.emplace_back(local_of[v], Rational(c));
    row.rhs = 0;
    rows.push_back(std::move(row));
  }
  LinearSolution sol = solve_sparse_linear(global_of.size(), rows, false);
  if (!sol.feasible) return std::nullopt;

  SplittingCandidate pi{q, n, config.dim, {}, {}};
  for (std::size_t local = 0; local < global_of.size(); ++local) {
    if (sol.particular[local] == 0) continue;
    pi.support.push_back(points[global_of[local]]);
    pi.coefficients.push_back(sol.particular[local]);
  }
  // global_of is increasing, so the support stays lexicographic.
  for (std::size_t i : i_set)
    if (!compatibility_check(pi, i))
      throw std::logic_error("solver output fails the compatibility check");
  return pi;
}

NecessaryReport necessary_condition(const VectorConfig& config, std::int64_t q,
                                    std::size_t n, std::size_t i, std::uint64_t class_cap) {
  if (q < 2) throw InputError("q must be at least 2");
  check_index(n, i);
  const std::size_t d = config.dim;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (total > class_cap / static_cast<std::uint64_t>(q))
      throw CapExceeded("class count " + std::to_string(q) + "^" + std::to_string(d) +
                        " exceeds the cap of " + std::to_string(class_cap));
    total *= static_cast<std::uint64_t>(q);
  }

  const SupportBox box = support_polytope_box(config);
  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = to_int64_checked(ceil_of(box.lo[k] * q));
    hi[k] = to_int64_checked(floor_of(box.hi[k] * q));
  }
  // The point (0, .., y, -y, .., 0) lies in P^n iff y and -y both lie in P;
  // blocks holding 0 are always inside.
  auto in_support = [&](const std::vector<std::int64_t>& y) {
    for (const IntVector& v : config.rays) {
      Integer s = 0;
      for (std::size_t k = 0; k < d; ++k) s += Integer(y[k]) * v[k];
      if (s >= q || -s >= q) return false;
    }
    return true;
  };

  NecessaryReport report;
  std::vector<std::int64_t> t(d, 0);
  for (;;) {
    // y = t/q + m, numerators t + q m inside the box
    std::vector<std::int64_t> first(d), last(d);
    bool empty = false;
    for (std::size_t k = 0; k < d; ++k) {
      first[k] = lo[k] + floor_mod(t[k] - lo[k], q);
      last[k] = hi[k] - floor_mod(hi[k] - t[k], q);
      if (first[k] > last[k]) empty = true;
    }
    bool represented = false;
    if (!empty) {
      std::vector<std::int64_t> y = first;
      for (;;) {
        if (in_support(y)) {
          represented = true;
          break;
        }
        std::size_t k = d;
        while (k > 0 && y[k - 1] == last[k - 1]) {
          y[k - 1] = first[k - 1];
          --k;
        }
        if (k == 0) break;
        y[k - 1] += q;
      }
    }
    if (!represented) {
      report.witness = t;
      return report;
    }
    std::size_t k = d;
    while (k > 0 && t[k - 1] == q - 1) t[--k] = 0;
    if (k == 0) break;
    ++t[k - 1];
  }
  report.holds = true;
  return report;
}

}  // namespace dsplit
