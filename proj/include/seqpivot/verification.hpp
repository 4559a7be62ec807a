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

#ifndef SEQPIVOT_VERIFICATION_HPP_
#define SEQPIVOT_VERIFICATION_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqpivot/grid.hpp"
#include "seqpivot/model.hpp"
#include "seqpivot/sequential.hpp"
#include "seqpivot/strategy.hpp"
#include "seqpivot/verdict.hpp"

namespace seqpivot {

// Which later-player types an optimality quantifier ranges over.
//
// kGrid uses grid tails only. Because the decision flips exactly at a sum of
// c, a grid tail never lands strictly between two grid breakpoints, so some
// announcements look optimal on the grid and are not optimal over [0, c].
// kGridAndCritical adds one tail for every critical tail sum (each point at
// which some candidate announcement changes the decision, plus the midpoints
// between consecutive ones). For a Groves mechanism the utility difference
// between two announcements depends on the tail only through its sum, so this
// makes the quantifier exact over [0, c].
enum class TailDomain { kGrid, kGridAndCritical };

// What the strategy dominance relation compares: the valuation of the induced
// decision, or the final utility including taxes.
enum class PreferenceBasis { kValuation, kFinalUtility };

std::string to_string(TailDomain domain);
std::string to_string(PreferenceBasis basis);

struct VerifyOptions {
  Mechanism mechanism = Mechanism::pivotal();
  TailDomain tails = TailDomain::kGridAndCritical;
  PreferenceBasis basis = PreferenceBasis::kFinalUtility;
  std::size_t max_witnesses = 8;
  // Invoked on the calling thread as (units done, units total). Units are
  // profiles or stage inputs in lexicographic rank order.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
  // Resume point: units with a smaller rank are skipped.
  std::uint64_t start_rank = 0;
};

// Tails (types of players i+1..n) used at a stage with the given prefix.
// Empty inner vector for the last player.
std::vector<std::vector<Rational>> stage_tails(const Grid& grid, std::span<const Rational> prefix,
                                               const Rational& own, TailDomain domain);

// A witness when announcing `a` at (prefix, own) is beaten by some grid
// announcement at some tail; std::nullopt when `a` is optimal there.
std::optional<Witness> optimality_violation(const Grid& grid, const StrategyInput& input,
                                            const Rational& a, const VerifyOptions& options);

// The optimal announcements among the grid points at every stage input of one
// player.
class OptSet {
 public:
  OptSet(int player, std::map<StrategyInput, std::vector<Rational>> members);

  int player() const { return player_; }
  // Throws std::out_of_range off the grid.
  const std::vector<Rational>& at(const StrategyInput& input) const;
  bool contains(const StrategyInput& input, const Rational& a) const;
  const std::map<StrategyInput, std::vector<Rational>>& table() const { return members_; }

 private:
  int player_;
  std::map<StrategyInput, std::vector<Rational>> members_;
};

OptSet compute_opt_set(const Grid& grid, int player, const VerifyOptions& options = {});

// One OptSet per player, built once and then only read.
class OptSetCache {
 public:
  OptSetCache(const Grid& grid, const VerifyOptions& options = {});
  const OptSet& operator[](int player) const { return sets_.at(player - 1); }
  const Grid& grid() const { return grid_; }
  const Mechanism& mechanism() const { return mechanism_; }

 private:
  Grid grid_;
  Mechanism mechanism_;
  std::vector<OptSet> sets_;
};

// The strategy's announcement is optimal at every stage input on the grid.
Verdict verify_optimal(const Strategy& strategy, const Grid& grid, const VerifyOptions& options = {});

// Optimal, and at every stage input and tail its announcement gives social
// welfare at least that of every other optimal announcement.
Verdict verify_socially_optimal(const Strategy& strategy, const Grid& grid, const OptSet& opt,
                                const VerifyOptions& options = {});
Verdict verify_socially_optimal(const Strategy& strategy, const Grid& grid,
                                const VerifyOptions& options = {});

// Structure of optimal announcements, with S the running total including the
// player's own type and P the prefix total:
//   (i)   S < c, not last: only the true type is optimal;
//   (ii)  S < c, last: every optimal a keeps P + a < c;
//   (iii) S = c, not last: every optimal a is at least the true type;
//   (iv)  S > c: every optimal a keeps P + a >= c.
struct CompatReport {
  std::array<Verdict, 4> clauses;
  bool holds() const;
};

CompatReport check_lemma_compat(const OptSetCache& opt, const VerifyOptions& options = {});
CompatReport check_lemma_compat(const Grid& grid, const VerifyOptions& options = {});

// Truth-telling is a best response to every unilateral grid deviation at every
// grid profile under options.mechanism.
Verdict verify_ic(const Grid& grid, const VerifyOptions& options = {});

struct InvarianceReport {
  Verdict under_a;
  Verdict under_b;
  bool agree = false;
};

// verify_optimal under two Groves mechanisms; they should agree.
InvarianceReport check_groves_invariance(const Strategy& strategy, const Grid& grid,
                                         const Mechanism& a, const Mechanism& b,
                                         const VerifyOptions& options = {});

// h_i is deterministic on repeat evaluation and the residual t_i minus the
// other players' valuations does not move with player i's own report.
Verdict check_groves_spec(const Grid& grid, const GrovesSpec& spec, const VerifyOptions& options = {});

enum class Dominance { kEqual, kGreater, kLess, kIncomparable };

std::string to_string(Dominance d);

struct DominanceResult {
  Dominance relation = Dominance::kEqual;
  // First profiles where the first (second) strategy is strictly better.
  std::optional<Witness> first_better;
  std::optional<Witness> second_better;
};

// Compares player i's preference value when announcing s(theta_1..theta_i)
// versus s2(theta_1..theta_i) while the others report truthfully, at every
// grid stage input of player i and every tail in options.tails. Uses
// options.basis and options.mechanism.
DominanceResult dominance_relation(const Strategy& s, const Strategy& s2, const Grid& grid,
                                   const VerifyOptions& options = {});

// Per player (index player - 1), the deviations a Nash check considers.
using DeviationUniverse = std::vector<std::vector<Strategy>>;

// Named strategies, constants over the grid points, and every single-point
// change of checked[i] tabulated over the stage inputs of the grid.
DeviationUniverse standard_deviation_universe(const Grid& grid, const StrategyVector& checked);

// For every player i and deviation s': (s_i, s_-i) is preferred by i to
// (s'_i, s_-i). That is, s_i strictly dominates s'_i, or they tie and i's
// preference value from the joint play is never lower over the same profiles.
// With `base`, both sides are first composed entrywise with it (the starred
// relation). Play uses stage order 1..n.
Verdict nash_check(const StrategyVector& vector, const DeviationUniverse& universe,
                   const Grid& grid, const VerifyOptions& options = {},
                   const StrategyVector* base = nullptr);

struct WelfarePath {
  Rational social_welfare;
  TypeProfile announcements;
};

// Maximum social welfare over all announcement paths in which every player
// announces an optimal value at the announced prefix and their true type.
// Throws std::domain_error when a true type is not a grid point.
WelfarePath max_welfare_over_optimal(const OptSetCache& opt, std::span<const Rational> true_types,
                                     const VerifyOptions& options = {});

// At every grid profile, the vector's play (stage order 1..n) reaches the
// maximum of max_welfare_over_optimal.
Verdict verify_welfare_maximality(const StrategyVector& vector, const OptSetCache& opt,
                                  const VerifyOptions& options = {});

// Replacing only the last player's strategy by `last` never lowers welfare
// against any path of optimal announcements.
Verdict check_last_mover_welfare(const Strategy& last, const OptSetCache& opt,
                                 const VerifyOptions& options = {});

struct CrossCheckRow {
  std::string strategy;
  int player = 0;
  PreferenceBasis basis = PreferenceBasis::kValuation;
  bool optimal = false;
  bool dominates_universe = false;
  // First deviation that the strategy does not weakly dominate.
  std::string counter_deviation;

  bool agree() const { return optimal == dominates_universe; }
};

// For each strategy: does verify_optimal agree with weak dominance over the
// player's deviation universe? Disagreements are data, not errors.
std::vector<CrossCheckRow> optimality_dominance_crosscheck(std::span<const Strategy> strategies,
                                                           const DeviationUniverse& universe,
                                                           const Grid& grid,
                                                           const VerifyOptions& options = {});

// Every grid profile admits a budget-balancing order whose "thm3" play has
// zero taxes.
Verdict verify_budget_balance_orders(const Grid& grid, const VerifyOptions& options = {});

// Pointwise invariants over all grid profiles: pay-only, feasibility,
// agreement of the closed-form and Groves pivotal taxes, efficiency of the
// decision rule, outcome consistency, truthful play equal to the simultaneous
// outcome in every order, "thm3" preserving the decision and weakly raising
// welfare in every order, the "thm5" decision flip, and not every player
// pivotal.
std::vector<Verdict> property_suite(const Grid& grid, const VerifyOptions& options = {});

}  // namespace seqpivot

#endif  // SEQPIVOT_VERIFICATION_HPP_
