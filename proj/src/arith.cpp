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

#include "dsplit/arith.hpp"

#include <limits>

namespace dsplit {

Rational parse_fraction_string(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> Integer {
    if (s.empty()) throw InputError("empty integer in \"" + text + "\"");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw InputError("bad integer in \"" + text + "\"");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw InputError("bad integer in \"" + text + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in \"" + text + "\"");
  return Rational(num, den);
}

std::int64_t to_int64_checked(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw CapExceeded("integer " + x.str() + " does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

}  // namespace dsplit
