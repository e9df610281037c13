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

#ifndef DSPLIT_ARITH_HPP
#define DSPLIT_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace dsplit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Malformed or out-of-contract input. The CLI maps this to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource cap would be exceeded. The CLI maps this to exit
/// status 3; no partial or sampled result is ever produced.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer floor_of(const Rational& x) {
  Integer n = boost::multiprecision::numerator(x);
  Integer d = boost::multiprecision::denominator(x);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline Integer ceil_of(const Rational& x) { return -floor_of(-x); }

inline bool is_integral(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

/// Floor division for integers (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Extended Euclid: returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& x,
                            Integer& y) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

/// Lowest-terms "num/den" with den >= 1; the document format for rationals.
inline std::string to_fraction_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

/// Accepts "num/den" or a bare integer. Throws InputError on anything else.
Rational parse_fraction_string(const std::string& text);

/// Narrowing with an explicit overflow check; never wraps silently.
std::int64_t to_int64_checked(const Integer& x);

}  // namespace dsplit

#endif  // DSPLIT_ARITH_HPP
