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

#include "dsplit/config.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dsplit {

namespace {

std::string vector_text(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string index_text(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const Integer& x : v) g = gcd(g, abs(x));
  return g;
}

// All size-k row subsets of {0..n-1}, lexicographic.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const IndexSet&)>& fn) {
  IndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

IntMatrix VectorConfig::canonical_matrix() const {
  return IntMatrix::from_columns(canonical, dim);
}

IntVector sign_canonical(const IntVector& v) {
  for (const Integer& x : v) {
    if (x == 0) continue;
    if (x > 0) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
  }
  return v;
}

VectorConfig validate_config(std::size_t dim, const std::vector<IntVector>& raw,
                             std::string name) {
  if (dim == 0) throw InputError("dimension must be positive");
  if (raw.empty()) throw InputError("configuration has no rays");
  VectorConfig config;
  config.name = std::move(name);
  config.dim = dim;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const IntVector& v = raw[i];
    if (v.size() != dim)
      throw InputError("ray " + std::to_string(i) + " has length " +
                       std::to_string(v.size()) + ", expected " + std::to_string(dim));
    Integer g = content(v);
    if (g == 0) throw InputError("ray " + std::to_string(i) + " is the zero vector");
    if (g != 1)
      throw InputError("ray " + std::to_string(i) + " " + vector_text(v) +
                       " is not primitive (gcd " + g.str() + ")");

    auto same = std::find(config.rays.begin(), config.rays.end(), v);
    if (same != config.rays.end()) {
      config.warnings.push_back("ray " + std::to_string(i) + " " + vector_text(v) +
                                " repeats an earlier ray; dropped");
      continue;
    }
    config.rays.push_back(v);

    IntVector c = sign_canonical(v);
    if (std::find(config.canonical.begin(), config.canonical.end(), c) !=
        config.canonical.end()) {
      config.warnings.push_back("ray " + std::to_string(i) + " " + vector_text(v) +
                                " is the negative of an earlier ray; the pair counts "
                                "once in sign-invariant tests");
      continue;
    }
    config.canonical.push_back(std::move(c));
  }
  std::size_t rank = rank_of(config.canonical_matrix());
  if (rank < dim)
    throw InputError("rays span rank " + std::to_string(rank) + " < " +
                     std::to_string(dim));
  return config;
}

UnimodularityReport is_unimodular(const VectorConfig& config) {
  UnimodularityReport report;
  for (auto& [basis, det] : enumerate_column_bases_with_det(config.canonical_matrix())) {
    if (abs(det) != 1) {
      report.witness = basis;
      report.witness_det = det;
      return report;
    }
  }
  report.unimodular = true;
  return report;
}

RegularityReport is_k_regular(const VectorConfig& config, const Integer& k) {
  if (k < 1) throw InputError("regularity order must be at least 1");
  RegularityReport report;
  const IntMatrix a = config.canonical_matrix();
  for (auto& [basis, det] : enumerate_column_bases_with_det(a)) {
    if (abs(det) == 1) continue;
    SmithData snf = smith_normal_form(select_columns(a, basis));
    for (const Integer& f : snf.invariant_factors) {
      if (k % f != 0) {
        report.witness = basis;
        report.witness_factor = f;
        return report;
      }
    }
  }
  report.regular = true;
  return report;
}

bool spans_saturated(const IntMatrix& columns) {
  const std::size_t k = columns.cols();
  if (k == 0) return true;
  Integer g = 0;
  for_each_subset(columns.rows(), k, [&](const IndexSet& rows) {
    if (g == 1) return;
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = columns(rows[i], j);
    g = gcd(g, abs(det_exact(minor)));
  });
  return g == 1;
}

NormalFormData normal_form_of_columns(const IntMatrix& columns) {
  if (!columns.is_square()) throw InputError("normal form needs a square basis");
  if (det_exact(columns) == 0) throw InputError("basis columns are dependent");
  const std::size_t d = columns.rows();

  NormalFormData nf;
  std::vector<bool> used(d, false);
  // One pass suffices: a column rejected against a prefix stays rejected
  // against any larger saturated prefix.
  for (std::size_t j = 0; j < d; ++j) {
    IndexSet trial = nf.column_order;
    trial.push_back(j);
    if (spans_saturated(select_columns(columns, trial))) {
      nf.column_order = std::move(trial);
      used[j] = true;
    }
  }
  nf.r = nf.column_order.size();
  for (std::size_t j = 0; j < d; ++j)
    if (!used[j]) nf.column_order.push_back(j);

  HermiteData hnf = hermite_normal_form(select_columns(columns, nf.column_order));
  nf.basis_change = std::move(hnf.U);
  nf.B = std::move(hnf.H);
  const std::size_t rest = d - nf.r;
  nf.B_prime = IntMatrix(rest, rest);
  nf.b_prime_is_twice_identity = true;
  for (std::size_t i = 0; i < rest; ++i)
    for (std::size_t j = 0; j < rest; ++j) {
      nf.B_prime(i, j) = nf.B(nf.r + i, nf.r + j);
      if (nf.B_prime(i, j) != (i == j ? 2 : 0)) nf.b_prime_is_twice_identity = false;
    }
  return nf;
}

NormalFormData normal_form(const VectorConfig& config, const IndexSet& basis) {
  if (basis.size() != config.dim)
    throw InputError("basis needs " + std::to_string(config.dim) + " indices, got " +
                     std::to_string(basis.size()));
  for (std::size_t idx : basis)
    if (idx >= config.canonical.size())
      throw InputError("basis index " + std::to_string(idx) + " out of range");
  NormalFormData nf = normal_form_of_columns(select_columns(config.canonical_matrix(), basis));
  for (std::size_t& pos : nf.column_order) pos = basis[pos];
  return nf;
}

bool is_binet_coordinates(const VectorConfig& config) {
  for (const IntVector& v : config.canonical) {
    Integer norm = 0;
    for (const Integer& x : v) norm += abs(x);
    if (norm > 2) return false;
  }
  return true;
}

const char* to_string(SplitSetTag tag) {
  switch (tag) {
    case SplitSetTag::AllQ: return "AllQ";
    case SplitSetTag::OddOnly: return "OddOnly";
    case SplitSetTag::NoneQ: return "NoneQ";
    case SplitSetTag::UnknownOddCandidates: return "UnknownOddCandidates";
  }
  return "?";
}

Prediction predict_split_set(const VectorConfig& config) {
  Prediction p;
  UnimodularityReport uni = is_unimodular(config);
  if (uni.unimodular) {
    p.tag = SplitSetTag::AllQ;
    p.justification.push_back(
        {"unimodular", "every column basis has determinant +-1; split at every q >= 2"});
    return p;
  }
  p.justification.push_back({"not-unimodular",
                             "basis " + index_text(*uni.witness) + " has determinant " +
                                 uni.witness_det.str() + "; not split at any even q"});

  RegularityReport reg = is_k_regular(config, 2);
  if (!reg.regular) {
    p.tag = SplitSetTag::NoneQ;
    p.justification.push_back({"not-2-regular",
                               "basis " + index_text(*reg.witness) +
                                   " has invariant factor " + reg.witness_factor.str() +
                                   "; not split at any q"});
    return p;
  }

  if (config.dim == 2) {
    p.tag = SplitSetTag::OddOnly;
    p.justification.push_back({"2-regular-dim-2", "split exactly at odd q"});
    return p;
  }
  if (is_binet_coordinates(config)) {
    p.tag = SplitSetTag::OddOnly;
    p.justification.push_back(
        {"binet", "every ray has 1-norm <= 2; split exactly at odd q"});
    return p;
  }
  if (config.canonical.size() == config.dim) {
    p.tag = SplitSetTag::OddOnly;
    p.justification.push_back(
        {"plus-minus-basis", "rays lie in +- a single basis; split exactly at odd q"});
    return p;
  }
  p.tag = SplitSetTag::UnknownOddCandidates;
  p.justification.push_back(
      {"2-regular-open", "2-regular, no odd-q rule applies; only odd q can split"});
  return p;
}

}  // namespace dsplit
