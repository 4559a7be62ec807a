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

#include "seqpivot/sequential.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "seqpivot/parallel.hpp"

namespace seqpivot {

PlayerOrder::PlayerOrder(std::vector<int> sequence) : sequence_(std::move(sequence)) {
  std::vector<int> sorted = sequence_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != static_cast<int>(k + 1)) {
      throw std::invalid_argument("player order is not a permutation of 1..n");
    }
  }
  if (sequence_.empty()) throw std::invalid_argument("empty player order");
}

PlayerOrder PlayerOrder::identity(int players) {
  std::vector<int> seq(players);
  std::iota(seq.begin(), seq.end(), 1);
  return PlayerOrder(std::move(seq));
}

std::string PlayerOrder::labels() const {
  std::string s;
  for (std::size_t k = 0; k < sequence_.size(); ++k) {
    if (k) s += ",";
    s += player_label(sequence_[k]);
  }
  return s;
}

std::string player_label(int player) {
  if (player >= 1 && player <= 26) return std::string(1, static_cast<char>('A' + player - 1));
  return "P" + std::to_string(player);
}

std::vector<PlayerOrder> all_orders(int players) {
  std::vector<int> seq(players);
  std::iota(seq.begin(), seq.end(), 1);
  std::vector<PlayerOrder> out;
  do {
    out.emplace_back(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

PlayTrace play(const ProjectInstance& instance, const Mechanism& mechanism, const PlayerOrder& order,
               const StrategyVector& strategies, std::span<const Rational> true_types) {
  validate_profile(instance, true_types);
  const int n = instance.players();
  if (order.size() != n || strategies.size() != n) {
    throw std::invalid_argument("order, strategies and types disagree on the player count");
  }
  PlayTrace trace;
  trace.order = order;
  trace.true_types.assign(true_types.begin(), true_types.end());
  trace.announcements.assign(n, Rational(0));
  std::vector<Rational> prefix;
  prefix.reserve(n);
  for (int stage = 0; stage < n; ++stage) {
    const int player = order[stage];
    Rational announced = strategies[player](prefix, true_types[player - 1]);
    trace.stages.push_back(Stage{player, prefix, announced});
    trace.announcements[player - 1] = announced;
    prefix.push_back(std::move(announced));
  }
  trace.outcome = outcome(instance, mechanism, trace.announcements, true_types);
  return trace;
}

bool is_pivotal(const ProjectInstance& instance, std::span<const Rational> profile, int player) {
  if (player < 1 || player > instance.players()) {
    throw std::invalid_argument("player index out of range");
  }
  return !pivotal_tax(instance, profile)[player - 1].is_zero();
}

PlayerOrder find_budget_balanced_order(const ProjectInstance& instance,
                                       std::span<const Rational> true_types) {
  validate_profile(instance, true_types);
  const std::vector<Rational> taxes = pivotal_tax(instance, true_types);
  const StrategyVector strategies = StrategyVector::uniform("thm3", instance);
  const Mechanism pivotal = Mechanism::pivotal();
  for (const PlayerOrder& order : all_orders(instance.players())) {
    if (!taxes[order.last() - 1].is_zero()) continue;
    const PlayTrace trace = play(instance, pivotal, order, strategies, true_types);
    if (std::all_of(trace.outcome.taxes.begin(), trace.outcome.taxes.end(),
                    [](const Rational& t) { return t.is_zero(); })) {
      return order;
    }
  }
  std::string profile;
  for (const Rational& t : true_types) profile += " " + t.str();
  throw std::logic_error("no budget-balancing order found for profile" + profile);
}

std::vector<PlayTrace> sweep_orders(const ProjectInstance& instance, const Mechanism& mechanism,
                                    const StrategyVector& strategies,
                                    std::span<const Rational> true_types) {
  if (instance.players() > kMaxSweepPlayers) {
    throw std::invalid_argument("refusing to sweep " + std::to_string(instance.players()) +
                                "! orders; at most " + std::to_string(kMaxSweepPlayers) +
                                " players are supported");
  }
  const std::vector<PlayerOrder> orders = all_orders(instance.players());
  return parallel_map(orders.size(), [&](std::size_t k) {
    return play(instance, mechanism, orders[k], strategies, true_types);
  });
}

}  // namespace seqpivot
