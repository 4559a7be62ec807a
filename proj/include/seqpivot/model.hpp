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

#ifndef SEQPIVOT_MODEL_HPP_
#define SEQPIVOT_MODEL_HPP_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "seqpivot/rational.hpp"
#include "seqpivot/verdict.hpp"

namespace seqpivot {

// Public project problem: n players share the cost c of a project that is
// built iff the reported values cover the cost.
class ProjectInstance {
 public:
  ProjectInstance(int players, Rational cost);

  int players() const { return players_; }
  const Rational& cost() const { return cost_; }
  Rational share() const { return cost_ / Rational(players_); }

  bool admissible(const Rational& type) const { return type.sign() >= 0 && type <= cost_; }

  friend bool operator==(const ProjectInstance&, const ProjectInstance&) = default;

 private:
  int players_;
  Rational cost_;
};

// Types (true or announced), indexed by player 1..n at positions 0..n-1.
using TypeProfile = std::vector<Rational>;

enum class Decision : int { kCancel = 0, kBuild = 1 };

inline int as_int(Decision d) { return static_cast<int>(d); }

// Throws std::domain_error unless `profile` has n entries, each in [0, c].
void validate_profile(const ProjectInstance& instance, std::span<const Rational> profile);

Rational sum(std::span<const Rational> values);

// v_i(d, theta) = d * (theta - c/n).
Rational valuation(const ProjectInstance& instance, Decision d, const Rational& type);

// Efficient decision rule: build iff the profile sums to at least c.
Decision decide(const ProjectInstance& instance, std::span<const Rational> profile);

// Closed-form Clarke taxes:
//   cancelled: t_i = min(0, (n-1)c/n - sum_{k!=i} theta_k)
//   built:     t_i = min(0, sum_{k!=i} theta_k - (n-1)c/n)
std::vector<Rational> pivotal_tax(const ProjectInstance& instance,
                                  std::span<const Rational> profile);

// The h_i term of a Groves tax. `others` is the announced profile with player
// i's entry removed, so h_i cannot observe player i's own report.
using GrovesTerm = std::function<Rational(const ProjectInstance& instance,
                                          std::span<const Rational> others, int player)>;

struct GrovesSpec {
  std::string name;
  GrovesTerm h;

  // h_i = -max_d sum_{j!=i} v_j(d, theta_j).
  static GrovesSpec pivotal();
  // h_i = 0.
  static GrovesSpec zero_h();
};

// t_i = sum_{j!=i} v_j(f(theta), theta_j) + h_i(theta_{-i}).
std::vector<Rational> groves_tax(const ProjectInstance& instance, const GrovesSpec& spec,
                                 std::span<const Rational> profile);

// A direct mechanism for the public project problem: the efficient decision
// rule paired with a tax function. Groves mechanisms are the common case; the
// general form exists so that non-Groves baselines can be checked too.
class Mechanism {
 public:
  using TaxFunction = std::function<std::vector<Rational>(const ProjectInstance& instance,
                                                          std::span<const Rational> announced)>;

  Mechanism(GrovesSpec spec);  // NOLINT: a Groves spec is a mechanism
  Mechanism(std::string name, TaxFunction taxes);

  static Mechanism pivotal() { return Mechanism(GrovesSpec::pivotal()); }
  // t = 0 everywhere. Not a Groves mechanism.
  static Mechanism zero_tax();

  const std::string& name() const { return name_; }
  bool is_groves() const { return groves_ != nullptr; }
  const GrovesSpec* groves() const { return groves_.get(); }

  std::vector<Rational> taxes(const ProjectInstance& instance,
                              std::span<const Rational> announced) const;

 private:
  std::string name_;
  std::shared_ptr<const GrovesSpec> groves_;
  TaxFunction taxes_;
};

struct Outcome {
  Decision decision = Decision::kCancel;
  std::vector<Rational> taxes;
  std::vector<Rational> utilities;
  Rational social_welfare;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Decision and taxes come from the announced profile; utilities and social
// welfare are evaluated against the true types.
Outcome outcome(const ProjectInstance& instance, const Mechanism& mechanism,
                std::span<const Rational> announced, std::span<const Rational> true_types);

// Final utility of one player; equals outcome(...).utilities[player - 1].
Rational final_utility(const ProjectInstance& instance, const Mechanism& mechanism,
                       std::span<const Rational> announced, const Rational& true_type,
                       int player);

struct MechanismPredicates {
  Verdict feasible;
  Verdict budget_balanced;
  Verdict pay_only;
  Verdict incentive_compatible;
};

// Exhaustive evaluation over `profiles`. Unilateral IC deviations range over
// every value occurring in some profile of the set.
MechanismPredicates mechanism_predicates(const ProjectInstance& instance,
                                         const Mechanism& mechanism,
                                         std::span<const TypeProfile> profiles);

// `a` welfare dominates `b` over `profiles` under truthful reports: weakly
// higher social welfare everywhere, strictly higher somewhere. On failure the
// witness is a profile where `a` is strictly worse, or no witness when `a`
// merely never improves on `b`.
Verdict welfare_dominates(const ProjectInstance& instance, const Mechanism& a,
                          const Mechanism& b, std::span<const TypeProfile> profiles);

}  // namespace seqpivot

#endif  // SEQPIVOT_MODEL_HPP_
