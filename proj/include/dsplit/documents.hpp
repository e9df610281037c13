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

// JSON documents: ray configurations, splitting candidates, the builtin
// library.
//
// Configuration:  {"name": "P1xP1", "dim": 2, "rays": [[1,0],[-1,0]], "source": "..."}
// Splitting:      {"q": 3, "n": 2, "d": 1, "support": [[0,0],[1,-1]],
//                  "coefficients": ["1/1","-1/2"]}
//
// Ray entries may be JSON integers or decimal strings (for values past
// 64 bits). Rationals are always "num/den" strings in lowest terms. The
// canonical text of a document is its compact dump with keys in the order
// above; parse followed by serialize reproduces canonical text byte for byte.

#ifndef DSPLIT_DOCUMENTS_HPP
#define DSPLIT_DOCUMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dsplit/arith.hpp"
#include "dsplit/config.hpp"
#include "dsplit/subdiagonal.hpp"

namespace dsplit {

using Json = nlohmann::ordered_json;

struct ConfigDocument {
  std::string name;
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::optional<std::string> source;
};

/// Structure only; throws InputError on malformed text or fields.
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument parse_config_file(const std::string& path);
std::string serialize_config(const ConfigDocument& doc);

/// validate_config on the document's rays.
VectorConfig to_config(const ConfigDocument& doc);

SplittingCandidate parse_splitting_text(const std::string& text);
SplittingCandidate parse_splitting_file(const std::string& path);
Json splitting_to_json(const SplittingCandidate& pi);
std::string serialize_splitting(const SplittingCandidate& pi);

std::optional<ConfigDocument> builtin_config(const std::string& name);
std::vector<std::string> builtin_names();

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace dsplit

#endif  // DSPLIT_DOCUMENTS_HPP
