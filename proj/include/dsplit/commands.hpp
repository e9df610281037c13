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

#ifndef DSPLIT_COMMANDS_HPP
#define DSPLIT_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsplit/documents.hpp"

namespace dsplit {

struct CommandArgs {
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> q_min;
  std::optional<std::int64_t> q_max;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> i;
  std::vector<std::size_t> i_set;
  std::vector<std::size_t> basis;       // indices into the sign-canonical rays
  std::optional<std::string> splitting;  // splitting document text
  std::optional<std::uint64_t> cap;      // overrides the class or support cap
  bool parallel = true;
};

struct Report {
  Json json;
  std::string text;
};

/// The names accepted by execute_command.
const std::vector<std::string>& command_names();

/// Runs one command. Throws InputError on an unknown command, missing
/// arguments or invalid input, and CapExceeded on a resource-cap abort.
Report execute_command(const std::string& command, const CommandArgs& args,
                       const ConfigDocument& doc);

/// Report for a run that threw: {"command", "status", "error", "cap"}.
Json error_report(const std::string& command, const std::string& status,
                  const std::string& message, std::optional<std::uint64_t> cap);

}  // namespace dsplit

#endif  // DSPLIT_COMMANDS_HPP
