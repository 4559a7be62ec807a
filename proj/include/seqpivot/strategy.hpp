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

#ifndef SEQPIVOT_STRATEGY_HPP_
#define SEQPIVOT_STRATEGY_HPP_

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "seqpivot/model.hpp"

namespace seqpivot {

// What a player sees when it is their turn: the announcements made so far
// (in stage order) and their own true type.
struct StrategyInput {
  std::vector<Rational> prefix;
  Rational own;

  friend bool operator==(const StrategyInput&, const StrategyInput&) = default;
  friend auto operator<=>(const StrategyInput&, const StrategyInput&) = default;
};

using StrategyTable = std::map<StrategyInput, Rational>;

// A pure announcement rule s_i(theta_1, ..., theta_i) for one player.
//
// The stage position is prefix.size() + 1; rules that single out the last
// mover test prefix.size() == n - 1, so they follow the player through any
// reordering. Outputs outside [0, c] are rejected at evaluation time.
class Strategy {
 public:
  using Rule = std::function<Rational(std::span<const Rational> prefix, const Rational& own)>;

  Strategy(ProjectInstance instance, int player, std::string name, Rule rule);

  int player() const { return player_; }
  const std::string& name() const { return name_; }
  const ProjectInstance& instance() const { return instance_; }

  Rational operator()(std::span<const Rational> prefix, const Rational& own) const;
  Rational operator()(const StrategyInput& input) const { return (*this)(input.prefix, input.own); }

  // Non-null only for strategies produced by tabulate() or mutate().
  const StrategyTable* table() const { return table_.get(); }

  Strategy renamed(std::string name) const;

 private:
  friend Strategy tabulate(const Strategy&, std::span<const StrategyInput>);
  friend Strategy tabulated_strategy(ProjectInstance, int, std::string, StrategyTable);

  ProjectInstance instance_;
  int player_;
  std::string name_;
  Rule rule_;
  std::shared_ptr<const StrategyTable> table_;
};

// pi_i: announce the true type.
Strategy truth_telling(const ProjectInstance& instance, int player);

// Announce the true type while the running total stays below c (0 if last),
// and c once the running total, own type included, reaches c. Never changes
// the efficient decision. Registered as "thm3".
Strategy deficit_reducing(const ProjectInstance& instance, int player);

// As deficit_reducing, except that a last mover who lands exactly on c with a
// type above the cost share announces 0 and cancels the project. Registered
// as "thm5".
Strategy welfare_maximizing(const ProjectInstance& instance, int player);

// Prefix-independent: 0 if own type <= c/n, c otherwise. Registered as
// "greedy".
Strategy greedy(const ProjectInstance& instance, int player);

Strategy constant(const ProjectInstance& instance, int player, const Rational& announcement);

// (outer . inner)(prefix, own) = outer(prefix, inner(prefix, own)).
// Throws std::invalid_argument when the player indices differ.
Strategy compose(const Strategy& outer, const Strategy& inner);

// Finite copy of `strategy` on `inputs`. Lookups outside the table throw
// std::out_of_range.
Strategy tabulate(const Strategy& strategy, std::span<const StrategyInput> inputs);

Strategy tabulated_strategy(ProjectInstance instance, int player, std::string name,
                            StrategyTable table);

// Copy of a tabulated strategy with the entry at `input` replaced.
Strategy mutate(const Strategy& tabulated, const StrategyInput& input, const Rational& announcement);

// `base` everywhere except at `input`, where it announces `announcement`.
// Unlike mutate() the result is not tabulated and shares `base`.
Strategy override_at(const Strategy& base, const StrategyInput& input, const Rational& announcement);

// Every (prefix, own) with prefix in points^(position-1) and own in points.
std::vector<StrategyInput> stage_inputs(std::span<const Rational> points, int position);

// Identifiers accepted on the command line.
const std::vector<std::string>& named_strategy_ids();

// Throws std::invalid_argument for unknown identifiers.
Strategy named_strategy(const std::string& id, const ProjectInstance& instance, int player);

class StrategyVector {
 public:
  // Entry k must belong to player k + 1.
  explicit StrategyVector(std::vector<Strategy> strategies);

  // The same named rule for every player.
  static StrategyVector uniform(const std::string& id, const ProjectInstance& instance);

  int size() const { return static_cast<int>(strategies_.size()); }
  const Strategy& operator[](int player) const { return strategies_.at(player - 1); }

  StrategyVector with(const Strategy& replacement) const;

  auto begin() const { return strategies_.begin(); }
  auto end() const { return strategies_.end(); }

 private:
  std::vector<Strategy> strategies_;
};

}  // namespace seqpivot

#endif  // SEQPIVOT_STRATEGY_HPP_
