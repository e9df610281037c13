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

#include <algorithm>
#include <functional>

#include "dsplit/lattice.hpp"
#include "dsplit/subdiagonal.hpp"

namespace dsplit {

namespace {

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const IndexSet&)>& fn) {
  if (k > n) return;
  IndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SupportBox support_polytope_box(const VectorConfig& config) {
  const std::size_t d = config.dim;
  const std::vector<IntVector>& rays = config.rays;

  // Recession directions: an extreme ray of { y : <y, v> <= 0 } is cut out by
  // d - 1 independent rays, and is their generalised cross product up to sign.
  bool unbounded = false;
  for_each_subset(rays.size(), d - 1, [&](const IndexSet& s) {
    if (unbounded) return;
    IntVector y(d);
    for (std::size_t j = 0; j < d; ++j) {
      IntMatrix minor(d - 1, d - 1);
      for (std::size_t r = 0; r + 1 < d; ++r)
        for (std::size_t c = 0, cc = 0; c < d; ++c) {
          if (c == j) continue;
          minor(r, cc++) = rays[s[r]][c];
        }
      y[j] = ((j % 2) ? -1 : 1) * det_exact(minor);
    }
    if (std::all_of(y.begin(), y.end(), [](const Integer& x) { return x == 0; })) return;
    for (int sign : {1, -1}) {
      bool recedes = std::all_of(rays.begin(), rays.end(),
                                 [&](const IntVector& v) { return sign * dot(y, v) <= 0; });
      if (recedes) unbounded = true;
    }
  });
  if (unbounded)
    throw InputError("signed rays do not positively span; the support polytope is unbounded");

  SupportBox box;
  bool first = true;
  for_each_subset(rays.size(), d, [&](const IndexSet& s) {
    IntMatrix rows(d, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) rows(k, i) = rays[s[k]][i];
    if (det_exact(rows) == 0) return;
    RationalVector ones(d, Rational(1));
    RationalVector u = inverse(rows) * ones;
    for (const IntVector& v : rays) {
      Rational p = 0;
      for (std::size_t i = 0; i < d; ++i) p += u[i] * v[i];
      if (p > 1) return;
    }
    if (first) {
      box.lo = u;
      box.hi = u;
      first = false;
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      box.lo[i] = std::min(box.lo[i], u[i]);
      box.hi[i] = std::max(box.hi[i], u[i]);
    }
  });
  return box;
}

std::vector<LatticePoint> support_points(const VectorConfig& config, std::int64_t q) {
  if (q < 1) throw InputError("q must be positive");
  const std::size_t d = config.dim;
  const SupportBox box = support_polytope_box(config);
  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = to_int64_checked(ceil_of(box.lo[i] * q));
    hi[i] = to_int64_checked(floor_of(box.hi[i] * q));
  }
  std::vector<std::vector<std::int64_t>> rays;
  for (const IntVector& v : config.rays) {
    std::vector<std::int64_t> r;
    for (const Integer& x : v) r.push_back(to_int64_checked(x));
    rays.push_back(std::move(r));
  }

  std::vector<LatticePoint> out;
  LatticePoint x = lo;
  for (;;) {
    bool inside = true;
    for (const auto& v : rays) {
      Integer s = 0;
      for (std::size_t i = 0; i < d; ++i) s += Integer(x[i]) * v[i];
      if (s >= q) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(x);
    std::size_t k = d;
    while (k > 0 && x[k - 1] == hi[k - 1]) {
      x[k - 1] = lo[k - 1];
      --k;
    }
    if (k == 0) break;
    ++x[k - 1];
  }
  return out;
}

std::vector<LatticePoint> product_support(const VectorConfig& config, std::int64_t q,
                                          std::size_t n, std::uint64_t cap) {
  if (n < 1) throw InputError("number of factors must be positive");
  const std::vector<LatticePoint> single = support_points(config, q);
  std::uint64_t total = 1;
  for (std::size_t f = 0; f < n; ++f) {
    if (total > cap / single.size())
      throw CapExceeded("product support has " + std::to_string(single.size()) + "^" +
                        std::to_string(n) + " points, above the cap of " +
                        std::to_string(cap));
    total *= single.size();
  }
  std::vector<LatticePoint> out;
  out.reserve(total);
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    LatticePoint p;
    p.reserve(n * config.dim);
    for (std::size_t f = 0; f < n; ++f)
      p.insert(p.end(), single[pick[f]].begin(), single[pick[f]].end());
    out.push_back(std::move(p));
    std::size_t k = n;
    while (k > 0 && pick[k - 1] + 1 == single.size()) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
  return out;
}

}  // namespace dsplit
