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

#include "seqpivot/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqpivot {
namespace {

bool is_last(const ProjectInstance& instance, std::span<const Rational> prefix) {
  return static_cast<int>(prefix.size()) == instance.players() - 1;
}

std::string key_string(const StrategyInput& input) {
  std::string s = "(";
  for (std::size_t k = 0; k < input.prefix.size(); ++k) {
    if (k) s += ",";
    s += input.prefix[k].str();
  }
  return s + "; " + input.own.str() + ")";
}

}  // namespace

Strategy::Strategy(ProjectInstance instance, int player, std::string name, Rule rule)
    : instance_(std::move(instance)), player_(player), name_(std::move(name)), rule_(std::move(rule)) {
  if (player_ < 1 || player_ > instance_.players()) {
    throw std::invalid_argument("player index " + std::to_string(player_) + " out of range");
  }
}

Rational Strategy::operator()(std::span<const Rational> prefix, const Rational& own) const {
  if (static_cast<int>(prefix.size()) >= instance_.players()) {
    throw std::invalid_argument("prefix longer than n - 1");
  }
  Rational out = rule_(prefix, own);
  if (!instance_.admissible(out)) {
    throw std::domain_error("strategy " + name_ + " announced " + out.str() + " outside [0, " +
                            instance_.cost().str() + "]");
  }
  return out;
}

Strategy Strategy::renamed(std::string name) const {
  Strategy copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Strategy truth_telling(const ProjectInstance& instance, int player) {
  return Strategy(instance, player, "truth",
                  [](std::span<const Rational>, const Rational& own) { return own; });
}

Strategy deficit_reducing(const ProjectInstance& instance, int player) {
  return Strategy(instance, player, "thm3",
                  [instance](std::span<const Rational> prefix, const Rational& own) {
                    const Rational running = sum(prefix) + own;
                    if (running < instance.cost()) {
                      return is_last(instance, prefix) ? Rational(0) : own;
                    }
                    return instance.cost();
                  });
}

Strategy welfare_maximizing(const ProjectInstance& instance, int player) {
  return Strategy(instance, player, "thm5",
                  [instance](std::span<const Rational> prefix, const Rational& own) {
                    const Rational running = sum(prefix) + own;
                    const bool last = is_last(instance, prefix);
                    if (running < instance.cost()) return last ? Rational(0) : own;
                    if (running == instance.cost() && own > instance.share() && last) {
                      return Rational(0);
                    }
                    return instance.cost();
                  });
}

Strategy greedy(const ProjectInstance& instance, int player) {
  return Strategy(instance, player, "greedy",
                  [instance](std::span<const Rational>, const Rational& own) {
                    return own <= instance.share() ? Rational(0) : instance.cost();
                  });
}

Strategy constant(const ProjectInstance& instance, int player, const Rational& announcement) {
  if (!instance.admissible(announcement)) {
    throw std::domain_error("constant announcement " + announcement.str() + " outside [0, c]");
  }
  return Strategy(instance, player, "const:" + announcement.str(),
                  [announcement](std::span<const Rational>, const Rational&) { return announcement; });
}

Strategy compose(const Strategy& outer, const Strategy& inner) {
  if (outer.player() != inner.player()) {
    throw std::invalid_argument("cannot compose strategies of players " +
                                std::to_string(outer.player()) + " and " +
                                std::to_string(inner.player()));
  }
  return Strategy(outer.instance(), outer.player(), outer.name() + "*" + inner.name(),
                  [outer, inner](std::span<const Rational> prefix, const Rational& own) {
                    return outer(prefix, inner(prefix, own));
                  });
}

Strategy tabulate(const Strategy& strategy, std::span<const StrategyInput> inputs) {
  StrategyTable table;
  for (const StrategyInput& input : inputs) table.emplace(input, strategy(input));
  return tabulated_strategy(strategy.instance(), strategy.player(), strategy.name(), std::move(table));
}

Strategy tabulated_strategy(ProjectInstance instance, int player, std::string name,
                            StrategyTable table) {
  for (const auto& [input, announcement] : table) {
    if (!instance.admissible(announcement)) {
      throw std::domain_error("table entry " + key_string(input) + " announces " +
                              announcement.str() + " outside [0, c]");
    }
  }
  auto shared = std::make_shared<const StrategyTable>(std::move(table));
  Strategy s(std::move(instance), player, std::move(name),
             [shared](std::span<const Rational> prefix, const Rational& own) {
               StrategyInput key{std::vector<Rational>(prefix.begin(), prefix.end()), own};
               auto it = shared->find(key);
               if (it == shared->end()) {
                 throw std::out_of_range("no table entry for input " + key_string(key));
               }
               return it->second;
             });
  s.table_ = std::move(shared);
  return s;
}

Strategy mutate(const Strategy& tabulated, const StrategyInput& input, const Rational& announcement) {
  const StrategyTable* source = tabulated.table();
  if (source == nullptr) throw std::invalid_argument("mutate needs a tabulated strategy");
  if (!source->contains(input)) {
    throw std::out_of_range("no table entry for input " + key_string(input));
  }
  StrategyTable table = *source;
  table[input] = announcement;
  return tabulated_strategy(tabulated.instance(), tabulated.player(),
                            tabulated.name() + "[" + key_string(input) + "->" + announcement.str() + "]",
                            std::move(table));
}

Strategy override_at(const Strategy& base, const StrategyInput& input, const Rational& announcement) {
  if (!base.instance().admissible(announcement)) {
    throw std::domain_error("override announces " + announcement.str() + " outside [0, c]");
  }
  return Strategy(base.instance(), base.player(),
                  base.name() + "[" + key_string(input) + "->" + announcement.str() + "]",
                  [base, input, announcement](std::span<const Rational> prefix, const Rational& own) {
                    if (own == input.own && std::equal(prefix.begin(), prefix.end(),
                                                       input.prefix.begin(), input.prefix.end())) {
                      return announcement;
                    }
                    return base(prefix, own);
                  });
}

std::vector<StrategyInput> stage_inputs(std::span<const Rational> points, int position) {
  if (position < 1) throw std::invalid_argument("stage positions start at 1");
  std::vector<StrategyInput> inputs;
  std::vector<std::size_t> digits(position, 0);
  const std::size_t base = points.size();
  if (base == 0) return inputs;
  while (true) {
    StrategyInput in;
    for (int k = 0; k + 1 < position; ++k) in.prefix.push_back(points[digits[k]]);
    in.own = points[digits[position - 1]];
    inputs.push_back(std::move(in));
    int k = position - 1;
    while (k >= 0 && ++digits[k] == base) digits[k--] = 0;
    if (k < 0) break;
  }
  return inputs;
}

const std::vector<std::string>& named_strategy_ids() {
  static const std::vector<std::string> ids = {"truth", "thm3", "thm5", "greedy"};
  return ids;
}

Strategy named_strategy(const std::string& id, const ProjectInstance& instance, int player) {
  if (id == "truth") return truth_telling(instance, player);
  if (id == "thm3") return deficit_reducing(instance, player);
  if (id == "thm5") return welfare_maximizing(instance, player);
  if (id == "greedy") return greedy(instance, player);
  throw std::invalid_argument("unknown strategy '" + id + "' (expected truth, thm3, thm5 or greedy)");
}

StrategyVector::StrategyVector(std::vector<Strategy> strategies) : strategies_(std::move(strategies)) {
  for (std::size_t k = 0; k < strategies_.size(); ++k) {
    if (strategies_[k].player() != static_cast<int>(k + 1)) {
      throw std::invalid_argument("strategy vector entry " + std::to_string(k + 1) +
                                  " belongs to player " + std::to_string(strategies_[k].player()));
    }
  }
  if (!strategies_.empty() &&
      static_cast<int>(strategies_.size()) != strategies_.front().instance().players()) {
    throw std::invalid_argument("strategy vector size does not match the player count");
  }
}

StrategyVector StrategyVector::uniform(const std::string& id, const ProjectInstance& instance) {
  std::vector<Strategy> v;
  for (int i = 1; i <= instance.players(); ++i) v.push_back(named_strategy(id, instance, i));
  return StrategyVector(std::move(v));
}

StrategyVector StrategyVector::with(const Strategy& replacement) const {
  std::vector<Strategy> v = strategies_;
  v.at(replacement.player() - 1) = replacement;
  return StrategyVector(std::move(v));
}

}  // namespace seqpivot
