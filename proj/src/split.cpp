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

#include "dsplit/split.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include <omp.h>

namespace dsplit {

namespace {

Rational pairing(const RationalVector& u, const IntVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += u[i] * v[i];
  return s;
}

IndexSet first_basis(const std::vector<IntVector>& rays, std::size_t dim) {
  return enumerate_column_bases(IntMatrix::from_columns(rays, dim)).front();
}

IntMatrix integer_inverse(const IntMatrix& m) {
  RationalMatrix inv = inverse(m);
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(inv(i, j))) throw std::logic_error("matrix is not unimodular");
      out(i, j) = boost::multiprecision::numerator(inv(i, j));
    }
  return out;
}

std::uint64_t checked_power(std::int64_t q, std::size_t d, std::uint64_t cap,
                            const char* what) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > cap / static_cast<std::uint64_t>(q))
      throw CapExceeded(std::string(what) + ": " + std::to_string(q) + "^" +
                        std::to_string(d) + " exceeds the cap of " + std::to_string(cap));
    total *= static_cast<std::uint64_t>(q);
  }
  return total;
}

std::vector<std::int64_t> decode(std::uint64_t idx, std::int64_t q, std::size_t d) {
  std::vector<std::int64_t> r(d);
  for (std::size_t i = d; i-- > 0;) {
    r[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(q));
    idx /= static_cast<std::uint64_t>(q);
  }
  return r;
}

std::uint64_t encode(const std::vector<std::int64_t>& r, std::int64_t q) {
  std::uint64_t idx = 0;
  for (std::int64_t x : r) idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(x);
  return idx;
}

}  // namespace

RationalVector FractionalClass::point() const {
  RationalVector p;
  p.reserve(residues.size());
  for (std::int64_t r : residues) p.emplace_back(Integer(r), Integer(q));
  return p;
}

FractionalClass FractionalClass::negated() const {
  FractionalClass out{q, residues};
  for (std::int64_t& r : out.residues) r = (q - r) % q;
  return out;
}

FractionalClass make_class(std::int64_t q, const std::vector<std::int64_t>& numerators) {
  if (q < 1) throw InputError("denominator must be positive");
  FractionalClass c{q, numerators};
  for (std::int64_t& r : c.residues) r = ((r % q) + q) % q;
  return c;
}

bool f_sigma_contains(const VectorConfig& config, const RationalVector& u) {
  if (u.size() != config.dim)
    throw InputError("point has dimension " + std::to_string(u.size()) + ", expected " +
                     std::to_string(config.dim));
  for (const IntVector& v : config.canonical)
    if (abs(pairing(u, v)) >= 1) return false;
  return true;
}

SlabSearch::SlabSearch(std::vector<IntVector> rays, const IndexSet& slab)
    : rays_(std::move(rays)), slab_(slab) {
  const std::size_t s = slab_.size();
  IntMatrix rows(s, s);
  for (std::size_t k = 0; k < s; ++k) {
    if (rays_.at(slab_[k]).size() != s) throw InputError("slab ray has wrong length");
    for (std::size_t i = 0; i < s; ++i) rows(k, i) = rays_[slab_[k]][i];
  }
  slab_inverse_ = inverse(rows);
}

std::vector<IntVector> SlabSearch::all_shifts(const RationalVector& base) const {
  const std::size_t s = slab_.size();
  std::vector<std::vector<Integer>> options(s);
  for (std::size_t k = 0; k < s; ++k) {
    Rational alpha = pairing(base, rays_[slab_[k]]);
    if (is_integral(alpha)) {
      options[k] = {-floor_of(alpha)};
    } else {
      options[k] = {-ceil_of(alpha), -floor_of(alpha)};
    }
  }

  std::vector<IntVector> found;
  std::vector<std::size_t> pick(s, 0);
  for (;;) {
    RationalVector t(s);
    for (std::size_t k = 0; k < s; ++k) t[k] = options[k][pick[k]];
    RationalVector m = slab_inverse_ * t;
    bool integral = std::all_of(m.begin(), m.end(), is_integral);
    if (integral) {
      RationalVector u(s);
      for (std::size_t i = 0; i < s; ++i) u[i] = base[i] + m[i];
      bool inside = std::all_of(rays_.begin(), rays_.end(),
                                [&](const IntVector& v) { return abs(pairing(u, v)) < 1; });
      if (inside) {
        IntVector shift(s);
        for (std::size_t i = 0; i < s; ++i) shift[i] = boost::multiprecision::numerator(m[i]);
        found.push_back(std::move(shift));
      }
    }
    std::size_t k = s;
    while (k > 0 && pick[k - 1] + 1 == options[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::optional<IntVector> SlabSearch::least_shift(const RationalVector& base) const {
  std::vector<IntVector> all = all_shifts(base);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

std::vector<IntVector> restricted_rays(const VectorConfig& config,
                                       const SubspaceRestriction& r) {
  const IntMatrix& u = r.normal_form.basis_change;
  std::vector<IntVector> out;
  for (const IntVector& v : config.canonical) {
    IntVector w = u * v;
    out.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(r.first), w.end());
  }
  return out;
}

IndexSet restricted_slab(const SubspaceRestriction& r) {
  const IndexSet& order = r.normal_form.column_order;
  return IndexSet(order.begin() + static_cast<std::ptrdiff_t>(r.first), order.end());
}

void check_restriction(const VectorConfig& config, const SubspaceRestriction& r) {
  if (r.normal_form.B.rows() != config.dim || r.first > config.dim)
    throw InputError("subspace restriction does not match the configuration");
}

}  // namespace

RepresentativeFinder::RepresentativeFinder(const VectorConfig& config)
    : dim_(config.dim), search_(config.canonical, first_basis(config.canonical, config.dim)) {}

RepresentativeFinder::RepresentativeFinder(const VectorConfig& config,
                                           SubspaceRestriction restriction)
    : dim_(config.dim),
      restriction_((check_restriction(config, restriction), std::move(restriction))),
      inverse_transpose_(integer_inverse(restriction_->normal_form.basis_change).transposed()),
      basis_change_transpose_(restriction_->normal_form.basis_change.transposed()),
      search_(restricted_rays(config, *restriction_), restricted_slab(*restriction_)) {}

std::optional<RationalVector> RepresentativeFinder::find(const FractionalClass& cls) const {
  if (cls.residues.size() != dim_)
    throw InputError("class has dimension " + std::to_string(cls.residues.size()) +
                     ", expected " + std::to_string(dim_));
  if (cls.q < 1) throw InputError("class denominator must be positive");
  if (!restriction_) {
    RationalVector base = cls.point();
    std::optional<IntVector> shift = search_.least_shift(base);
    if (!shift) return std::nullopt;
    for (std::size_t i = 0; i < dim_; ++i) base[i] += (*shift)[i];
    return base;
  }

  const std::size_t first = restriction_->first;
  IntVector c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = cls.residues[i];
  IntVector transformed = inverse_transpose_ * c;
  RationalVector base;
  for (std::size_t i = 0; i < dim_; ++i) {
    Integer r = mod_floor(transformed[i], Integer(cls.q));
    if (i < first) {
      if (r != 0)
        throw InputError("class is not supported in the restricted subspace");
      continue;
    }
    base.emplace_back(r, Integer(cls.q));
  }
  std::optional<IntVector> shift = search_.least_shift(base);
  if (!shift) return std::nullopt;
  RationalVector local(dim_, Rational(0));
  for (std::size_t i = first; i < dim_; ++i) local[i] = base[i - first] + (*shift)[i - first];
  RationalVector u(dim_, Rational(0));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = first; k < dim_; ++k)
      if (basis_change_transpose_(i, k) != 0) u[i] += basis_change_transpose_(i, k) * local[k];
  return u;
}

std::optional<RationalVector> find_representative(
    const VectorConfig& config, const FractionalClass& cls,
    const std::optional<SubspaceRestriction>& restriction) {
  if (restriction) return RepresentativeFinder(config, *restriction).find(cls);
  return RepresentativeFinder(config).find(cls);
}

bool class_in_subspace(const FractionalClass& cls, const SubspaceRestriction& restriction) {
  IntMatrix inv_t = integer_inverse(restriction.normal_form.basis_change).transposed();
  IntVector c(cls.residues.begin(), cls.residues.end());
  IntVector t = inv_t * c;
  for (std::size_t i = 0; i < restriction.first; ++i)
    if (mod_floor(t[i], Integer(cls.q)) != 0) return false;
  return true;
}

RationalVector f_sigma_box(const VectorConfig& config) {
  IndexSet basis = first_basis(config.canonical, config.dim);
  const std::size_t d = config.dim;
  IntMatrix rows(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) rows(k, i) = config.canonical[basis[k]][i];
  RationalMatrix inv = inverse(rows);
  RationalVector bound(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) bound[i] += abs(inv(i, k));
  return bound;
}

std::optional<RationalVector> find_representative_reference(const VectorConfig& config,
                                                            const FractionalClass& cls) {
  const std::size_t d = config.dim;
  if (cls.residues.size() != d) throw InputError("class dimension mismatch");
  const RationalVector bound = f_sigma_box(config);
  const RationalVector base = cls.point();
  IntVector lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = ceil_of(-bound[i] - base[i]);
    hi[i] = floor_of(bound[i] - base[i]);
    if (lo[i] > hi[i]) return std::nullopt;
  }
  IntVector m = lo;
  for (;;) {
    RationalVector u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = base[i] + m[i];
    if (f_sigma_contains(config, u)) return u;
    std::size_t k = d;
    while (k > 0 && m[k - 1] == hi[k - 1]) {
      m[k - 1] = lo[k - 1];
      --k;
    }
    if (k == 0) return std::nullopt;
    ++m[k - 1];
  }
}

Verdict is_split_at(const VectorConfig& config, std::int64_t q, const SplitOptions& options) {
  if (q < 2) throw InputError("q must be at least 2");
  const std::size_t d = config.dim;
  const std::uint64_t total = checked_power(q, d, options.class_cap, "class count");
  const RepresentativeFinder finder(config);

  auto is_orbit_leader = [&](std::uint64_t idx) {
    std::vector<std::int64_t> r = decode(idx, q, d);
    for (std::int64_t& x : r) x = (q - x) % q;
    return idx <= encode(r, q);
  };

  std::vector<std::optional<RationalVector>> found(total);
  std::uint64_t first_failure = total;

  if (options.parallel) {
    std::atomic<std::uint64_t> best{total};
    const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 32)
    for (std::int64_t s = 0; s < n; ++s) {
      const auto idx = static_cast<std::uint64_t>(s);
      if (idx > best.load(std::memory_order_relaxed) || !is_orbit_leader(idx)) continue;
      found[idx] = finder.find(FractionalClass{q, decode(idx, q, d)});
      if (!found[idx]) {
        std::uint64_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
    first_failure = best.load();
  } else {
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (!is_orbit_leader(idx)) continue;
      found[idx] = finder.find(FractionalClass{q, decode(idx, q, d)});
      if (!found[idx]) {
        first_failure = idx;
        break;
      }
    }
  }

  Verdict v;
  v.q = q;
  const std::uint64_t last = std::min(first_failure, total - 1);
  for (std::uint64_t idx = 0; idx <= last; ++idx)
    if (is_orbit_leader(idx)) ++v.classes_checked;

  if (first_failure < total) {
    v.split = false;
    v.witness_class = FractionalClass{q, decode(first_failure, q, d)};
    return v;
  }
  v.split = true;
  v.representatives.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    FractionalClass cls{q, decode(idx, q, d)};
    if (found[idx]) {
      v.representatives.emplace_back(std::move(cls), *found[idx]);
    } else {
      RationalVector rep = *found[encode(cls.negated().residues, q)];
      for (Rational& x : rep) x = -x;
      v.representatives.emplace_back(std::move(cls), std::move(rep));
    }
  }
  return v;
}

SpectrumReport split_spectrum(const VectorConfig& config, std::int64_t q_lo,
                              std::int64_t q_hi, const SplitOptions& options) {
  if (q_lo < 2 || q_hi < q_lo) throw InputError("spectrum range must satisfy 2 <= qmin <= qmax");
  SpectrumReport report;
  report.prediction = predict_split_set(config);
  for (std::int64_t q = q_lo; q <= q_hi; ++q) {
    Verdict v = is_split_at(config, q, options);
    if (v.split) report.split_qs.push_back(q);

    bool expected_known = true, expected = false;
    switch (report.prediction.tag) {
      case SplitSetTag::AllQ: expected = true; break;
      case SplitSetTag::NoneQ: expected = false; break;
      case SplitSetTag::OddOnly: expected = (q % 2 == 1); break;
      case SplitSetTag::UnknownOddCandidates:
        expected_known = (q % 2 == 0);
        expected = false;
        break;
    }
    if (expected_known && v.split != expected)
      report.contradictions.push_back("q = " + std::to_string(q) + ": prediction " +
                                      to_string(report.prediction.tag) + " says " +
                                      (expected ? "split" : "not split") +
                                      ", class loop says " +
                                      (v.split ? "split" : "not split"));
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

IntVector unimodular_rounding(const VectorConfig& config, const RationalVector& a) {
  if (a.size() != config.dim) throw InputError("point dimension mismatch");
  if (!is_unimodular(config).unimodular)
    throw InputError("unimodular rounding needs a unimodular configuration");
  const std::size_t d = config.dim;
  const IndexSet basis = first_basis(config.canonical, d);
  IntMatrix rows(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) rows(k, i) = config.canonical[basis[k]][i];
  const RationalMatrix inv = inverse(rows);

  // Every lattice point of the rounding polytope meets the basis constraints,
  // so the <= 2^d choices of basis pairings cover all of them.
  std::vector<std::vector<Integer>> options(d);
  for (std::size_t k = 0; k < d; ++k) {
    Rational alpha = pairing(a, config.canonical[basis[k]]);
    Integer lo = floor_of(alpha), hi = ceil_of(alpha);
    options[k] = (lo == hi) ? std::vector<Integer>{lo} : std::vector<Integer>{lo, hi};
  }
  std::vector<IntVector> hits;
  std::vector<std::size_t> pick(d, 0);
  for (;;) {
    RationalVector t(d);
    for (std::size_t k = 0; k < d; ++k) t[k] = options[k][pick[k]];
    RationalVector x = inv * t;
    if (std::all_of(x.begin(), x.end(), is_integral)) {
      bool ok = true;
      for (const IntVector& v : config.canonical) {
        Rational alpha = pairing(a, v), value = pairing(x, v);
        if (value < floor_of(alpha) || value > ceil_of(alpha)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        IntVector xi(d);
        for (std::size_t i = 0; i < d; ++i) xi[i] = boost::multiprecision::numerator(x[i]);
        hits.push_back(std::move(xi));
      }
    }
    std::size_t k = d;
    while (k > 0 && pick[k - 1] + 1 == options[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
  if (hits.empty())
    throw std::logic_error("rounding polytope of a unimodular configuration has no lattice point");
  return *std::min_element(hits.begin(), hits.end());
}

}  // namespace dsplit
