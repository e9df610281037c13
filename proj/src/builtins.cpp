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

#include <map>

#include "dsplit/documents.hpp"

namespace dsplit {

namespace {

struct Entry {
  std::size_t dim;
  std::vector<std::vector<long>> rays;
  const char* source;
};

// Rays carry both signs where the fan needs them: the one-sided support
// polytope used for splittings of products is bounded only when the signed
// rays positively span.
const std::map<std::string, Entry>& library() {
  static const std::map<std::string, Entry> lib = {
      {"P1", {1, {{1}, {-1}}, "projective line"}},
      {"P1xP1", {2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, "product of two projective lines"}},
      {"P2", {2, {{1, 0}, {0, 1}, {-1, -1}}, "projective plane"}},
      {"index2-pair",
       {2, {{1, 0}, {-1, 0}, {1, 2}, {-1, -2}}, "basis of index 2 with both signs"}},
      {"index3-pair",
       {2, {{1, 0}, {-1, 0}, {1, 3}, {-1, -3}}, "basis of index 3 with both signs"}},
      {"canonical-2d",
       {2,
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}},
        "(1,0),(0,1),(1,1),(1,-1) with both signs"}},
      {"canonical-2d-12",
       {2,
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, 2}, {-1, -2}},
        "(1,0),(0,1),(1,1),(1,2) with both signs"}},
      {"canonical-2d-m1m2",
       {2,
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}, {1, -2}, {-1, 2}},
        "(1,0),(0,1),(1,-1),(1,-2) with both signs"}},
      {"smith-1-1-4",
       {3,
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {1, 1, 4}, {-1, -1, -4}},
        "basis with Smith invariant factors 1, 1, 4"}},
      {"twice-identity-3d",
       {3,
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {1, 1, 2}, {-1, -1, -2}},
        "basis whose normal form has lower block 2I (size 1)"}},
      {"twice-identity-4d",
       {4,
        {{1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, 0},
         {1, 1, 2, 0}, {-1, -1, -2, 0}, {1, 0, 0, 2}, {-1, 0, 0, -2}},
        "basis whose normal form has lower block 2I (size 2)"}},
      {"binet-3d",
       {3,
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
         {1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {0, 1, 1}, {0, -1, -1},
         {0, 1, -1}, {0, -1, 1}},
        "every ray has coordinate 1-norm at most 2"}},
      {"example-6.3",
       {4,
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, -1},
         {1, 1, -1, 0}, {1, -1, 1, 0}, {-1, 1, 1, 0}},
        "2-regular, not unimodular, never diagonally split"}},
      // Regenerate with tools/derive_birkhoff3.py.
      {"birkhoff-3",
       {4,
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, 0, 0},
         {0, 0, -1, -1}, {-1, 0, -1, 0}, {0, -1, 0, -1}, {1, 1, 1, 1}},
        "normal fan of the Birkhoff polytope B3 in coordinates x11, x12, x21, x22"}},
  };
  return lib;
}

}  // namespace

std::optional<ConfigDocument> builtin_config(const std::string& name) {
  auto it = library().find(name);
  if (it == library().end()) return std::nullopt;
  ConfigDocument doc;
  doc.name = name;
  doc.dim = it->second.dim;
  for (const auto& ray : it->second.rays) {
    IntVector v;
    for (long x : ray) v.emplace_back(x);
    doc.rays.push_back(std::move(v));
  }
  doc.source = it->second.source;
  return doc;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& kv : library()) out.push_back(kv.first);
  return out;
}

}  // namespace dsplit
