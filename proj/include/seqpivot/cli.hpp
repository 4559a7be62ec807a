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

#ifndef SEQPIVOT_CLI_HPP_
#define SEQPIVOT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "seqpivot/model.hpp"
#include "seqpivot/sequential.hpp"

namespace seqpivot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// One embedded reference play and the values it must reproduce.
struct GoldenPlay {
  std::string name;
  Rational cost;
  TypeProfile true_types;
  std::vector<int> order;
  // Per-player strategy ids; "const:x" announces x.
  std::vector<std::string> strategies;
  TypeProfile announcements;
  std::vector<Rational> taxes;
  std::vector<Rational> utilities;
  Rational social_welfare;
};

const std::vector<GoldenPlay>& golden_plays();

// Field-level differences between a replayed trace and its golden record;
// empty on an exact match.
std::vector<std::string> golden_diff(const GoldenPlay& golden, const PlayTrace& trace);

PlayTrace replay(const GoldenPlay& golden);

// Runs one command line (args excludes the program name). Reports go to
// `out` unless --out is given; diagnostics go to `err`. Returns 0 when
// everything holds, 1 on a failed property or golden mismatch, 2 on a usage
// or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqpivot

#endif  // SEQPIVOT_CLI_HPP_
