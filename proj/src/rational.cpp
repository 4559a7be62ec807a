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

#include "seqpivot/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace seqpivot {
namespace {

using Wide = __int128;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_integer(std::string_view digits, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t p = parse_integer(s.substr(0, slash), text);
    std::int64_t q = parse_integer(s.substr(slash + 1), text);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    if (frac_part.empty() && int_part.empty()) {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    if (frac_part.size() > 18) {
      throw std::invalid_argument("too many decimal places: '" + std::string(text) + "'");
    }
    for (char ch : frac_part) {
      if (ch < '0' || ch > '9') {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
      }
    }
    std::int64_t whole = int_part.empty() ? 0 : parse_integer(int_part, text);
    std::int64_t frac = frac_part.empty() ? 0 : parse_integer(frac_part, text);
    Wide scale = 1;
    for (std::size_t k = 0; k < frac_part.size(); ++k) scale *= 10;
    Wide num = Wide(whole) * scale + frac;
    return from_wide(negative ? -num : num, scale);
  }

  if (s.front() == '+') s.remove_prefix(1);
  return Rational(parse_integer(s, text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-Wide(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  return *this = from_wide(Wide(num_) * rhs.den_ + Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
}

Rational& Rational::operator-=(const Rational& rhs) {
  return *this = from_wide(Wide(num_) * rhs.den_ - Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
}

Rational& Rational::operator*=(const Rational& rhs) {
  return *this = from_wide(Wide(num_) * rhs.num_, Wide(den_) * rhs.den_);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  return *this = from_wide(Wide(num_) * rhs.den_, Wide(den_) * rhs.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace seqpivot
