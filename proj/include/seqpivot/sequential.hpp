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

#ifndef SEQPIVOT_SEQUENTIAL_HPP_
#define SEQPIVOT_SEQUENTIAL_HPP_

#include <span>
#include <string>
#include <vector>

#include "seqpivot/model.hpp"
#include "seqpivot/strategy.hpp"

namespace seqpivot {

// A permutation of the players 1..n; entry k is the player moving at stage k+1.
class PlayerOrder {
 public:
  explicit PlayerOrder(std::vector<int> sequence);
  static PlayerOrder identity(int players);

  int size() const { return static_cast<int>(sequence_.size()); }
  int operator[](int stage) const { return sequence_.at(stage); }
  int last() const { return sequence_.back(); }
  const std::vector<int>& sequence() const { return sequence_; }

  // Player labels in stage order, e.g. "A,C,B".
  std::string labels() const;

  friend bool operator==(const PlayerOrder&, const PlayerOrder&) = default;
  friend auto operator<=>(const PlayerOrder&, const PlayerOrder&) = default;

 private:
  std::vector<int> sequence_;
};

// "A", "B", ... for players 1, 2, ...; "P27" and beyond.
std::string player_label(int player);

// All n! orders in lexicographic order.
std::vector<PlayerOrder> all_orders(int players);

struct Stage {
  int player = 0;
  std::vector<Rational> prefix;
  Rational announcement;

  friend bool operator==(const Stage&, const Stage&) = default;
};

struct PlayTrace {
  PlayerOrder order = PlayerOrder({1, 2});
  TypeProfile true_types;
  // Indexed by player, not by stage.
  TypeProfile announcements;
  std::vector<Stage> stages;
  Outcome outcome;

  friend bool operator==(const PlayTrace&, const PlayTrace&) = default;
};

// Sequential play: at each stage the moving player applies their own strategy
// to the announcements made so far plus their true type. The outcome is then
// the mechanism's outcome on the announced profile.
PlayTrace play(const ProjectInstance& instance, const Mechanism& mechanism, const PlayerOrder& order,
               const StrategyVector& strategies, std::span<const Rational> true_types);

// Player i (1-based) is pivotal iff their Clarke tax at `profile` is nonzero.
bool is_pivotal(const ProjectInstance& instance, std::span<const Rational> profile, int player);

// Lexicographically smallest order whose last player is not pivotal at the
// true profile and whose "thm3" play leaves every tax at zero. Throws
// std::logic_error if no such order exists, which would be a bug.
PlayerOrder find_budget_balanced_order(const ProjectInstance& instance,
                                       std::span<const Rational> true_types);

inline constexpr int kMaxSweepPlayers = 8;

// One trace per permutation, in lexicographic order of the permutations.
// Throws std::invalid_argument for more than kMaxSweepPlayers players.
std::vector<PlayTrace> sweep_orders(const ProjectInstance& instance, const Mechanism& mechanism,
                                    const StrategyVector& strategies,
                                    std::span<const Rational> true_types);

}  // namespace seqpivot

#endif  // SEQPIVOT_SEQUENTIAL_HPP_
