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

// dsplit: diagonal splitting of toric varieties from ray configurations.
//
// Exit status: 0 when a verdict was computed (whatever it is), 2 on input
// errors, 3 when a resource cap stopped the computation.

#include <iostream>

#include "CLI11.hpp"
#include "dsplit/commands.hpp"

namespace {

std::vector<std::size_t> parse_index_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw dsplit::InputError(std::string(flag) + " expects comma-separated nonnegative integers");
    out.push_back(std::stoull(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide diagonal splitting of toric varieties from ray configurations"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  bool json = false;
  bool serial = false;
  bool list = false;
  std::string builtin;
  std::optional<std::uint64_t> cap;
  app.add_flag("--json", json, "Print the report as JSON");
  app.add_option("--cap", cap, "Class cap (split-at, spectrum, necessary) or support cap (subdiagonal-find)");
  app.add_option("--builtin", builtin, "Use a configuration from the builtin library");
  app.add_flag("--serial", serial, "Use the serial class loop");
  app.add_flag("--list-builtins", list, "List the builtin configurations (documents with --json) and exit");

  dsplit::CommandArgs args;
  std::string file, splitting_file, basis_text, i_set_text;
  std::int64_t q = 0, q_min = 0, q_max = 0, n = 0, i = 0;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Configuration document (omit with --builtin)");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "Unimodularity, regularity and the predicted split set");
  add_file(analyze);
  CLI::App* split_at = app.add_subcommand("split-at", "Decide splitting at one q");
  split_at->add_option("--q", q, "Denominator")->required();
  add_file(split_at);
  CLI::App* spectrum = app.add_subcommand("spectrum", "Decide splitting over a range of q");
  spectrum->add_option("--qmin", q_min)->required();
  spectrum->add_option("--qmax", q_max)->required();
  add_file(spectrum);
  CLI::App* hnf = app.add_subcommand("hnf", "Normal form of a basis of rays");
  hnf->add_option("--basis", basis_text, "Comma-separated indices into the sign-canonical rays")
      ->required();
  add_file(hnf);
  CLI::App* check = app.add_subcommand("subdiagonal-check", "Check a splitting against subdiagonal i");
  check->add_option("--q", q)->required();
  check->add_option("--n", n)->required();
  check->add_option("--i", i)->required();
  check->add_option("splitting", splitting_file, "Splitting document")->required();
  add_file(check);
  CLI::App* find = app.add_subcommand("subdiagonal-find", "Solve for a compatible splitting");
  find->add_option("--q", q)->required();
  find->add_option("--n", n)->required();
  find->add_option("--i-set", i_set_text, "Comma-separated 1-based subdiagonal indices")->required();
  add_file(find);
  CLI::App* nec = app.add_subcommand("necessary", "Class coverage condition for subdiagonal i");
  nec->add_option("--q", q)->required();
  nec->add_option("--n", n)->required();
  nec->add_option("--i", i)->required();
  add_file(nec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list) {
    // with --json, one configuration document per line
    for (const std::string& name : dsplit::builtin_names())
      std::cout << (json ? dsplit::serialize_config(*dsplit::builtin_config(name)) : name) << '\n';
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  auto fail = [&](const char* status, const std::string& message, int code) {
    if (json)
      std::cout << dsplit::error_report(command, status, message, cap).dump(2) << '\n';
    std::cerr << "error: " << message << '\n';
    return code;
  };

  auto given = [&](const char* name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  try {
    if (given("--q")) args.q = q;
    if (given("--qmin")) args.q_min = q_min;
    if (given("--qmax")) args.q_max = q_max;
    if (given("--n")) args.n = n;
    if (given("--i")) args.i = i;
    if (!i_set_text.empty()) args.i_set = parse_index_list(i_set_text, "--i-set");
    if (!basis_text.empty()) args.basis = parse_index_list(basis_text, "--basis");
    if (!splitting_file.empty()) args.splitting = dsplit::read_text_file(splitting_file);
    args.cap = cap;
    args.parallel = !serial;

    dsplit::ConfigDocument doc;
    if (!builtin.empty() && !file.empty())
      throw dsplit::InputError("give either a configuration file or --builtin, not both");
    if (!builtin.empty()) {
      auto found = dsplit::builtin_config(builtin);
      if (!found) throw dsplit::InputError("no builtin configuration named \"" + builtin + "\"");
      doc = *found;
    } else if (!file.empty()) {
      doc = dsplit::parse_config_file(file);
    } else {
      throw dsplit::InputError("no configuration given");
    }

    const dsplit::Report report = dsplit::execute_command(command, args, doc);
    if (json)
      std::cout << report.json.dump(2) << '\n';
    else
      std::cout << report.text;
    return 0;
  } catch (const dsplit::CapExceeded& e) {
    return fail("cap-exceeded", e.what(), 3);
  } catch (const dsplit::InputError& e) {
    return fail("input-error", e.what(), 2);
  }
}
