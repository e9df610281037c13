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

#include "dsplit/commands.hpp"

#include <chrono>
#include <limits>
#include <sstream>

#include "dsplit/split.hpp"
#include "dsplit/subdiagonal.hpp"

namespace dsplit {

namespace {

constexpr std::size_t kTextTableRows = 64;

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(x.convert_to<std::int64_t>());
  return Json(x.str());
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(integer_json(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

std::string vector_text(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ')';
  return os.str();
}

template <typename T>
std::string list_text(const std::vector<T>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ')';
  return os.str();
}

std::string matrix_text(const IntMatrix& m, const std::string& indent) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << indent << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os.str();
}

std::int64_t need(const std::optional<std::int64_t>& v, const char* flag) {
  if (!v) throw InputError(std::string("missing ") + flag);
  return *v;
}

std::size_t need_index(const std::optional<std::int64_t>& v, const char* flag) {
  std::int64_t x = need(v, flag);
  if (x < 1) throw InputError(std::string(flag) + " must be positive");
  return static_cast<std::size_t>(x);
}

Json class_json(const FractionalClass& c) { return Json(c.residues); }

// u in (1/q)M as numerators over q.
Json numerators_json(const RationalVector& u, std::int64_t q) {
  Json out = Json::array();
  for (const Rational& x : u) {
    Rational scaled = x * q;
    if (!is_integral(scaled)) throw std::logic_error("representative is not in (1/q)M");
    out.push_back(integer_json(boost::multiprecision::numerator(scaled)));
  }
  return out;
}

std::string point_text(const RationalVector& u) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < u.size(); ++k) os << (k ? "," : "") << u[k];
  os << ')';
  return os.str();
}

Json prediction_json(const Prediction& p) {
  Json j;
  j["tag"] = to_string(p.tag);
  Json why = Json::array();
  for (const Justification& s : p.justification) why.push_back({{"rule", s.rule}, {"detail", s.detail}});
  j["justification"] = std::move(why);
  return j;
}

std::string prediction_text(const Prediction& p) {
  std::ostringstream os;
  os << "prediction: " << to_string(p.tag) << '\n';
  for (const Justification& s : p.justification) os << "  " << s.rule << ": " << s.detail << '\n';
  return os.str();
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["q"] = v.q;
  j["split"] = v.split;
  j["classes_checked"] = v.classes_checked;
  if (v.witness_class)
    j["witness_class"] = class_json(*v.witness_class);
  else
    j["witness_class"] = nullptr;
  Json table = Json::array();
  for (const auto& [cls, u] : v.representatives)
    table.push_back({{"class", class_json(cls)}, {"numerators", numerators_json(u, v.q)}});
  j["representatives"] = std::move(table);
  return j;
}

Report analyze(const VectorConfig& config) {
  Report rep;
  Json& r = rep.json["result"];
  std::ostringstream os;
  r["dim"] = config.dim;
  r["rays"] = config.rays.size();
  Json canon = Json::array();
  for (const IntVector& v : config.canonical) canon.push_back(vector_json(v));
  r["canonical_rays"] = std::move(canon);
  os << "dimension " << config.dim << ", " << config.rays.size() << " rays, "
     << config.canonical.size() << " up to sign\n";
  for (std::size_t k = 0; k < config.canonical.size(); ++k)
    os << "  [" << k << "] " << vector_text(config.canonical[k]) << '\n';

  const UnimodularityReport uni = is_unimodular(config);
  Json& ju = r["unimodular"];
  ju["value"] = uni.unimodular;
  os << "unimodular: " << (uni.unimodular ? "yes" : "no");
  if (uni.witness) {
    ju["witness_basis"] = *uni.witness;
    ju["witness_det"] = integer_json(uni.witness_det);
    os << " (basis " << list_text(*uni.witness) << " has determinant " << uni.witness_det << ')';
  }
  os << '\n';

  const RegularityReport reg = is_k_regular(config, 2);
  Json& jr = r["two_regular"];
  jr["value"] = reg.regular;
  os << "2-regular: " << (reg.regular ? "yes" : "no");
  if (reg.witness) {
    jr["witness_basis"] = *reg.witness;
    jr["witness_factor"] = integer_json(reg.witness_factor);
    os << " (basis " << list_text(*reg.witness) << " has invariant factor "
       << reg.witness_factor << ')';
  }
  os << '\n';

  const bool binet = is_binet_coordinates(config);
  r["binet_coordinates"] = binet;
  os << "binet in these coordinates: " << (binet ? "yes" : "no") << '\n';

  const Prediction p = predict_split_set(config);
  r["prediction"] = prediction_json(p);
  os << prediction_text(p);
  rep.text = os.str();
  return rep;
}

Report split_at(const VectorConfig& config, const CommandArgs& args, const SplitOptions& opts) {
  const std::int64_t q = need(args.q, "--q");
  const Verdict v = is_split_at(config, q, opts);
  Report rep;
  rep.json["result"] = verdict_json(v);
  std::ostringstream os;
  os << "q = " << q << ": " << (v.split ? "split" : "not split") << '\n';
  os << "sign orbits checked: " << v.classes_checked << '\n';
  if (v.witness_class)
    os << "witness class: " << list_text(v.witness_class->residues) << " / " << q << '\n';
  if (v.split) {
    os << "representatives (" << v.representatives.size() << " classes):\n";
    std::size_t shown = 0;
    for (const auto& [cls, u] : v.representatives) {
      if (shown++ == kTextTableRows) {
        os << "  ... (use --json for the full table)\n";
        break;
      }
      os << "  " << list_text(cls.residues) << " -> " << point_text(u) << '\n';
    }
  }
  rep.text = os.str();
  return rep;
}

Report spectrum(const VectorConfig& config, const CommandArgs& args, const SplitOptions& opts) {
  const std::int64_t lo = need(args.q_min, "--qmin");
  const std::int64_t hi = need(args.q_max, "--qmax");
  const SpectrumReport s = split_spectrum(config, lo, hi, opts);
  Report rep;
  Json& r = rep.json["result"];
  r["q_min"] = lo;
  r["q_max"] = hi;
  r["split_qs"] = s.split_qs;
  Json per_q = Json::array();
  std::ostringstream os;
  os << "split at q in " << list_text(s.split_qs) << " within [" << lo << ", " << hi << "]\n";
  for (const Verdict& v : s.verdicts) {
    Json item = verdict_json(v);
    per_q.push_back(std::move(item));
    os << "  q = " << v.q << ": " << (v.split ? "split" : "not split");
    if (v.witness_class) os << ", witness " << list_text(v.witness_class->residues);
    os << '\n';
  }
  r["verdicts"] = std::move(per_q);
  r["prediction"] = prediction_json(s.prediction);
  r["contradictions"] = s.contradictions;
  os << prediction_text(s.prediction);
  for (const std::string& c : s.contradictions) os << "CONTRADICTION: " << c << '\n';
  rep.text = os.str();
  return rep;
}

Report hnf(const VectorConfig& config, const CommandArgs& args) {
  if (args.basis.empty()) throw InputError("missing --basis");
  const NormalFormData nf = normal_form(config, args.basis);
  const SmithData snf = smith_normal_form(nf.B);
  Report rep;
  Json& r = rep.json["result"];
  r["basis"] = args.basis;
  r["column_order"] = nf.column_order;
  r["U"] = matrix_json(nf.basis_change);
  r["B"] = matrix_json(nf.B);
  r["r"] = nf.r;
  r["B_prime"] = matrix_json(nf.B_prime);
  r["b_prime_is_twice_identity"] = nf.b_prime_is_twice_identity;
  r["smith_invariant_factors"] = vector_json(snf.invariant_factors);
  r["index"] = integer_json(abs(det_exact(nf.B)));
  std::ostringstream os;
  os << "column order: " << list_text(nf.column_order) << '\n';
  os << "U =\n" << matrix_text(nf.basis_change, "  ");
  os << "B = U * columns =\n" << matrix_text(nf.B, "  ");
  os << "unit prefix r = " << nf.r << '\n';
  os << "B' =\n" << matrix_text(nf.B_prime, "  ");
  os << "B' = 2I: " << (nf.b_prime_is_twice_identity ? "yes" : "no") << '\n';
  os << "Smith invariant factors: " << vector_text(snf.invariant_factors) << '\n';
  rep.text = os.str();
  return rep;
}

Report subdiagonal_check(const VectorConfig& config, const CommandArgs& args) {
  if (!args.splitting) throw InputError("missing splitting file");
  const std::int64_t q = need(args.q, "--q");
  const std::size_t n = need_index(args.n, "--n");
  const std::size_t i = need_index(args.i, "--i");
  const SplittingCandidate pi = parse_splitting_text(*args.splitting);
  if (pi.q != q || pi.n != n)
    throw InputError("splitting file has q = " + std::to_string(pi.q) + ", n = " +
                     std::to_string(pi.n) + ", arguments say q = " + std::to_string(q) +
                     ", n = " + std::to_string(n));
  validate_candidate(config, pi);
  const bool ok = compatibility_check(pi, i);
  Report rep;
  Json& r = rep.json["result"];
  r["q"] = q;
  r["n"] = n;
  r["i"] = i;
  r["support_size"] = pi.support.size();
  r["compatible"] = ok;
  rep.text = "splitting with " + std::to_string(pi.support.size()) + " support points is " +
             (ok ? "" : "not ") + "compatible with subdiagonal " + std::to_string(i) + '\n';
  return rep;
}

Report subdiagonal_find(const VectorConfig& config, const CommandArgs& args, std::uint64_t cap) {
  const std::int64_t q = need(args.q, "--q");
  const std::size_t n = need_index(args.n, "--n");
  if (args.i_set.empty()) throw InputError("missing --i-set");
  const auto pi = find_compatible_splitting(config, q, n, args.i_set, cap);
  Report rep;
  Json& r = rep.json["result"];
  r["q"] = q;
  r["n"] = n;
  r["i_set"] = args.i_set;
  r["feasible"] = pi.has_value();
  std::ostringstream os;
  os << "splitting of X^" << n << " at q = " << q << " compatible with subdiagonals "
     << list_text(args.i_set) << ": " << (pi ? "exists" : "none") << '\n';
  if (pi) {
    r["splitting"] = splitting_to_json(*pi);
    os << "support (" << pi->support.size() << " points, numerators over " << q << "):\n";
    for (std::size_t k = 0; k < pi->support.size(); ++k) {
      if (k == kTextTableRows) {
        os << "  ... (use --json for the full list)\n";
        break;
      }
      os << "  " << list_text(pi->support[k]) << " : " << to_fraction_string(pi->coefficients[k])
         << '\n';
    }
  } else {
    r["splitting"] = nullptr;
  }
  rep.text = os.str();
  return rep;
}

Report necessary(const VectorConfig& config, const CommandArgs& args, std::uint64_t cap) {
  const std::int64_t q = need(args.q, "--q");
  const std::size_t n = need_index(args.n, "--n");
  const std::size_t i = need_index(args.i, "--i");
  const NecessaryReport nr = necessary_condition(config, q, n, i, cap);
  Report rep;
  Json& r = rep.json["result"];
  r["q"] = q;
  r["n"] = n;
  r["i"] = i;
  r["holds"] = nr.holds;
  if (nr.witness)
    r["witness_residues"] = *nr.witness;
  else
    r["witness_residues"] = nullptr;
  std::ostringstream os;
  os << "every class of (1/q)L_" << i << " / L_" << i << " has a representative: "
     << (nr.holds ? "yes" : "no") << '\n';
  if (nr.witness) os << "unrepresented class: " << list_text(*nr.witness) << " / " << q << '\n';
  rep.text = os.str();
  return rep;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "analyze", "split-at", "spectrum", "hnf", "subdiagonal-check", "subdiagonal-find", "necessary"};
  return names;
}

Report execute_command(const std::string& command, const CommandArgs& args,
                       const ConfigDocument& doc) {
  const auto start = std::chrono::steady_clock::now();
  const VectorConfig config = to_config(doc);

  const bool support_cap = command == "subdiagonal-find";
  const std::uint64_t cap = args.cap.value_or(support_cap ? kDefaultSupportCap : kDefaultClassCap);
  SplitOptions opts;
  opts.class_cap = cap;
  opts.parallel = args.parallel;

  Report rep;
  if (command == "analyze")
    rep = analyze(config);
  else if (command == "split-at")
    rep = split_at(config, args, opts);
  else if (command == "spectrum")
    rep = spectrum(config, args, opts);
  else if (command == "hnf")
    rep = hnf(config, args);
  else if (command == "subdiagonal-check")
    rep = subdiagonal_check(config, args);
  else if (command == "subdiagonal-find")
    rep = subdiagonal_find(config, args, cap);
  else if (command == "necessary")
    rep = necessary(config, args, cap);
  else
    throw InputError("unknown command \"" + command + "\"");

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json out;
  out["command"] = command;
  Json echo;
  if (args.q) echo["q"] = *args.q;
  if (args.q_min) echo["qmin"] = *args.q_min;
  if (args.q_max) echo["qmax"] = *args.q_max;
  if (args.n) echo["n"] = *args.n;
  if (args.i) echo["i"] = *args.i;
  if (!args.i_set.empty()) echo["i_set"] = args.i_set;
  if (!args.basis.empty()) echo["basis"] = args.basis;
  out["arguments"] = echo.is_null() ? Json::object() : echo;
  out["config"] = {{"name", config.name}, {"dim", config.dim}, {"warnings", config.warnings}};
  out["status"] = "ok";
  out["result"] = std::move(rep.json["result"]);
  out["timing_ms"] = ms;
  out["cap"] = {{"limit", cap}, {"exceeded", false}};
  rep.json = std::move(out);

  std::string header = command + " on " + (config.name.empty() ? "<unnamed>" : config.name) + '\n';
  for (const std::string& w : config.warnings) header += "warning: " + w + '\n';
  rep.text = header + rep.text;
  return rep;
}

Json error_report(const std::string& command, const std::string& status,
                  const std::string& message, std::optional<std::uint64_t> cap) {
  Json out;
  out["command"] = command;
  out["status"] = status;
  out["error"] = message;
  if (cap)
    out["cap"] = {{"limit", *cap}, {"exceeded", status == "cap-exceeded"}};
  else
    out["cap"] = {{"limit", nullptr}, {"exceeded", status == "cap-exceeded"}};
  return out;
}

}  // namespace dsplit
