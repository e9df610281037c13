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

#include "dsplit/documents.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace dsplit {

namespace {

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " document: " + e.what());
  }
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known,
                         const char* what) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw InputError(std::string(what) + " document has unknown field \"" + item.key() + "\"");
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(std::string(what) + " document is missing \"" + key + "\"");
  return *it;
}

std::int64_t require_int(const Json& j, const char* key, const char* what) {
  const Json& v = require(j, key, what);
  if (!v.is_number_integer() ||
      (v.is_number_unsigned() &&
       v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())))
    throw InputError(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

Integer integer_entry(const Json& v, const std::string& where) {
  if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    bool ok = !s.empty();
    for (std::size_t i = 0; i < s.size(); ++i)
      ok = ok && (std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-' && s.size() > 1));
    if (ok) return Integer(s);
  }
  throw InputError(where + " is not an integer");
}

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(x.convert_to<std::int64_t>());
  return Json(x.str());
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConfigDocument parse_config_text(const std::string& text) {
  const Json j = parse_json(text, "configuration");
  if (!j.is_object()) throw InputError("configuration document must be a JSON object");
  reject_unknown_keys(j, {"name", "dim", "rays", "source"}, "configuration");
  ConfigDocument doc;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw InputError("\"name\" must be a string");
    doc.name = it->get<std::string>();
  }
  std::int64_t dim = require_int(j, "dim", "configuration");
  if (dim < 1) throw InputError("dimension must be positive");
  doc.dim = static_cast<std::size_t>(dim);
  const Json& rays = require(j, "rays", "configuration");
  if (!rays.is_array()) throw InputError("\"rays\" must be an array");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string where = "ray " + std::to_string(i);
    if (!rays[i].is_array()) throw InputError(where + " is not an array");
    IntVector v;
    for (std::size_t c = 0; c < rays[i].size(); ++c)
      v.push_back(integer_entry(rays[i][c], where + " entry " + std::to_string(c)));
    doc.rays.push_back(std::move(v));
  }
  if (auto it = j.find("source"); it != j.end()) {
    if (!it->is_string()) throw InputError("\"source\" must be a string");
    doc.source = it->get<std::string>();
  }
  return doc;
}

ConfigDocument parse_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

std::string serialize_config(const ConfigDocument& doc) {
  Json j;
  j["name"] = doc.name;
  j["dim"] = doc.dim;
  Json rays = Json::array();
  for (const IntVector& v : doc.rays) {
    Json row = Json::array();
    for (const Integer& x : v) row.push_back(integer_json(x));
    rays.push_back(std::move(row));
  }
  j["rays"] = std::move(rays);
  if (doc.source) j["source"] = *doc.source;
  return j.dump();
}

VectorConfig to_config(const ConfigDocument& doc) {
  return validate_config(doc.dim, doc.rays, doc.name);
}

SplittingCandidate parse_splitting_text(const std::string& text) {
  const Json j = parse_json(text, "splitting");
  if (!j.is_object()) throw InputError("splitting document must be a JSON object");
  reject_unknown_keys(j, {"q", "n", "d", "support", "coefficients"}, "splitting");
  SplittingCandidate pi;
  pi.q = require_int(j, "q", "splitting");
  std::int64_t n = require_int(j, "n", "splitting");
  std::int64_t d = require_int(j, "d", "splitting");
  if (pi.q < 2 || n < 1 || d < 1) throw InputError("splitting needs q >= 2, n >= 1, d >= 1");
  pi.n = static_cast<std::size_t>(n);
  pi.d = static_cast<std::size_t>(d);
  const Json& support = require(j, "support", "splitting");
  const Json& coefficients = require(j, "coefficients", "splitting");
  if (!support.is_array() || !coefficients.is_array())
    throw InputError("\"support\" and \"coefficients\" must be arrays");
  if (support.size() != coefficients.size())
    throw InputError("support and coefficient lists differ in length");
  for (std::size_t k = 0; k < support.size(); ++k) {
    const std::string where = "support point " + std::to_string(k);
    if (!support[k].is_array() || support[k].size() != pi.n * pi.d)
      throw InputError(where + " must be an array of n*d integers");
    LatticePoint a;
    for (const Json& x : support[k]) {
      if (!x.is_number_integer()) throw InputError(where + " has a non-integer entry");
      a.push_back(x.get<std::int64_t>());
    }
    pi.support.push_back(std::move(a));
    if (!coefficients[k].is_string())
      throw InputError("coefficient " + std::to_string(k) + " must be a \"num/den\" string");
    pi.coefficients.push_back(parse_fraction_string(coefficients[k].get<std::string>()));
  }
  return pi;
}

SplittingCandidate parse_splitting_file(const std::string& path) {
  return parse_splitting_text(read_text_file(path));
}

Json splitting_to_json(const SplittingCandidate& pi) {
  Json j;
  j["q"] = pi.q;
  j["n"] = pi.n;
  j["d"] = pi.d;
  Json support = Json::array();
  for (const LatticePoint& a : pi.support) support.push_back(a);
  j["support"] = std::move(support);
  Json coefficients = Json::array();
  for (const Rational& c : pi.coefficients) coefficients.push_back(to_fraction_string(c));
  j["coefficients"] = std::move(coefficients);
  return j;
}

std::string serialize_splitting(const SplittingCandidate& pi) {
  return splitting_to_json(pi).dump();
}

}  // namespace dsplit
