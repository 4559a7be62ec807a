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

#ifndef SEQPIVOT_VERDICT_HPP_
#define SEQPIVOT_VERDICT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "seqpivot/rational.hpp"

namespace seqpivot {

// A concrete counterexample to a checked inequality `lhs >= rhs`.
//
// `profile` is the full type profile the inequality was evaluated at; for
// sequential checks it is (prefix, own type, tail) in stage order. `player`
// is 1-based, 0 when the property is not about a single player.
struct Witness {
  std::vector<Rational> profile;
  int player = 0;
  std::string deviation;
  Rational lhs;
  Rational rhs;
  std::string detail;
  // Announced profiles behind lhs and rhs, when the inequality compares two
  // plays or two reports. Empty otherwise.
  std::vector<Rational> announced;
  std::vector<Rational> alternative;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
  std::string property;
  bool holds = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  // At most VerifyOptions::max_witnesses entries, in enumeration order.
  std::vector<Witness> witnesses;

  const Witness* witness() const { return witnesses.empty() ? nullptr : &witnesses.front(); }

  // Records a violation, keeping the witness while under `keep`.
  void fail(Witness w, std::size_t keep);

  // Folds a partial verdict over a later range into this one.
  void merge(const Verdict& part, std::size_t keep);

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

}  // namespace seqpivot

#endif  // SEQPIVOT_VERDICT_HPP_
