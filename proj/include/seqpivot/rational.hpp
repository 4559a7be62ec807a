// Copyright 2026 The seqpivot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQPIVOT_RATIONAL_HPP_
#define SEQPIVOT_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace seqpivot {

// Exact rational number p/q with q > 0 and gcd(|p|, q) = 1.
//
// Storage is 64-bit; intermediate products are computed in 128 bits and any
// result that does not fit back into 64 bits raises std::overflow_error rather
// than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "p", "p/q" and finite decimals such as "-0.25" (converted exactly).
  // Throws std::invalid_argument on malformed text.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  // "p" when the denominator is 1, otherwise "p/q".
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace seqpivot

template <>
struct std::hash<seqpivot::Rational> {
  std::size_t operator()(const seqpivot::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.num());
    return h ^ (std::hash<std::int64_t>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

#endif  // SEQPIVOT_RATIONAL_HPP_
