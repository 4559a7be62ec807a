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

#ifndef SEQPIVOT_REPORT_HPP_
#define SEQPIVOT_REPORT_HPP_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqpivot/model.hpp"
#include "seqpivot/sequential.hpp"
#include "seqpivot/strategy.hpp"
#include "seqpivot/verdict.hpp"

namespace seqpivot {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings ("p" when q = 1).
Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json profile_to_json(std::span<const Rational> values);
std::vector<Rational> profile_from_json(const Json& j);

// {order, labels, true_types, announcements, stages, decision, taxes,
//  utilities, social_welfare}; order is the 1-based player array.
Json to_json(const PlayTrace& trace);
PlayTrace trace_from_json(const Json& j);

Json to_json(const Witness& witness);
Witness witness_from_json(const Json& j);

// {property, holds, checked, violations, witness, witnesses}; `witness` is the
// first witness or null.
Json to_json(const Verdict& verdict);
Verdict verdict_from_json(const Json& j);

// Keys are "p1,p2|own" with an empty prefix written as "|own".
Json to_json(const StrategyTable& table);
StrategyTable strategy_table_from_json(const Json& j);

// One row per player: player,label,type,submitted,tax,utility.
std::string trace_csv(const PlayTrace& trace);

// One row per trace: order,announcements,taxes,decision,social_welfare,budget_balanced.
// List fields are ';'-separated.
std::string sweep_csv(std::span<const PlayTrace> traces);

// property,holds,checked,violations,player,profile,deviation,lhs,rhs
std::string verdicts_csv(std::span<const Verdict> verdicts);

// Columns player, type, submitted type, tax, u_i, followed by the decision
// and social welfare.
std::string trace_table(const PlayTrace& trace);

std::string sweep_table(std::span<const PlayTrace> traces);

// "PASS name (checked N)" or "FAIL name ..." plus the first witness.
std::string verdict_line(const Verdict& verdict);

}  // namespace seqpivot

#endif  // SEQPIVOT_REPORT_HPP_
