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

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "seqpivot/verification.hpp"

using namespace seqpivot;

namespace {

const ProjectInstance kInst(3, 300);
const oracle::Problem kProblem{3, 300};

TypeProfile P(std::initializer_list<std::int64_t> v) { return TypeProfile(v.begin(), v.end()); }

Grid enriched(int steps) { return enrich(build_grid(kInst, steps), P({110, 80, 250, 60, 70})); }

oracle::Vec ints(std::span<const Rational> v) {
  oracle::Vec out;
  for (const Rational& r : v) {
    REQUIRE(r.is_integer());
    out.push_back(r.num());
  }
  return out;
}

// Optimality witnesses must describe a real strict improvement.
void check_witness_sound(const Witness& w) {
  REQUIRE(w.announced.size() == 3);
  REQUIRE(w.alternative.size() == 3);
  const std::size_t i = static_cast<std::size_t>(w.player - 1);
  const oracle::Int own = w.profile[i].num();
  const oracle::Int ua = oracle::scaled_utility(kProblem, ints(w.announced), own, i);
  const oracle::Int ub = oracle::scaled_utility(kProblem, ints(w.alternative), own, i);
  CHECK(ub > ua);
  CHECK(w.lhs * Rational(3) == Rational(ua));
  CHECK(w.rhs * Rational(3) == Rational(ub));
}

}  // namespace

TEST_CASE("stage tails") {
  const Grid grid = build_grid(kInst, 3);
  CHECK(stage_tails(grid, P({0, 0}), Rational(0), TailDomain::kGrid) == std::vector<TypeProfile>{{}});
  CHECK(stage_tails(grid, P({}), Rational(0), TailDomain::kGrid).size() == 16);
  const auto tails = stage_tails(grid, P({100}), Rational(0), TailDomain::kGridAndCritical);
  CHECK(tails.size() > 4);
  std::vector<Rational> sums;
  for (const auto& t : tails) {
    REQUIRE(t.size() == 1);
    CHECK(kInst.admissible(t[0]));
    sums.push_back(t[0]);
  }
  // c - prefix - x for x = 0, 100, 200, 300, and the midpoints between them.
  for (std::int64_t s : {0, 50, 100, 150, 200, 250, 300}) {
    CHECK(std::find(sums.begin(), sums.end(), Rational(s)) != sums.end());
  }
  CHECK_THROWS_AS(stage_tails(grid, P({0, 0, 0}), Rational(0), TailDomain::kGrid), std::invalid_argument);
}

TEST_CASE("optimal sets agree with the brute-force oracle") {
  for (const Grid& grid : {build_grid(kInst, 3), build_grid(kInst, 6), enriched(3)}) {
    const oracle::Vec points = ints(grid.points);
    SUBCASE("grid tails") {
      VerifyOptions opts;
      opts.tails = TailDomain::kGrid;
      for (int i = 1; i <= 3; ++i) {
        const OptSet opt = compute_opt_set(grid, i, opts);
        for (const auto& [in, members] : opt.table()) {
          CHECK(ints(members) == oracle::optimal_members(kProblem, ints(in.prefix), in.own.num(), points, points));
        }
      }
    }
    SUBCASE("critical tails match a dense tail domain") {
      const oracle::Vec dense = oracle::range(0, 300, 5);
      for (int i = 2; i <= 3; ++i) {
        const OptSet opt = compute_opt_set(grid, i);
        for (const auto& [in, members] : opt.table()) {
          CHECK(ints(members) == oracle::optimal_members(kProblem, ints(in.prefix), in.own.num(), points, dense));
        }
      }
    }
  }
}

TEST_CASE("critical tails match a dense tail domain for the first mover") {
  const Grid grid = build_grid(kInst, 3);
  const oracle::Vec points = ints(grid.points);
  const oracle::Vec dense = oracle::range(0, 300, 10);
  const OptSet opt = compute_opt_set(grid, 1);
  for (const auto& [in, members] : opt.table()) {
    CHECK(ints(members) == oracle::optimal_members(kProblem, {}, in.own.num(), points, dense));
  }
}

TEST_CASE("opt set lookups") {
  const Grid grid = build_grid(kInst, 3);
  const OptSet opt = compute_opt_set(grid, 3);
  CHECK(opt.player() == 3);
  CHECK(opt.table().size() == 64);
  CHECK_THROWS_AS(opt.at({P({50, 0}), Rational(0)}), std::out_of_range);
  CHECK_THROWS_AS(compute_opt_set(grid, 4), std::invalid_argument);
  // Last mover with prefix 200: building is worth it exactly when own > 100.
  CHECK(opt.at({P({100, 100}), Rational(200)}) == P({100, 200, 300}));
  CHECK(opt.at({P({100, 100}), Rational(0)}) == P({0}));
}

TEST_CASE("constructed strategies are optimal, greedy is not") {
  for (int steps : {3, 6}) {
    const Grid grid = enriched(steps);
    for (const char* id : {"truth", "thm3", "thm5"}) {
      for (int i = 1; i <= 3; ++i) {
        const Verdict v = verify_optimal(named_strategy(id, kInst, i), grid);
        CAPTURE(v.property);
        CHECK(v.holds);
        CHECK(v.checked == grid.tuple_count(i));
      }
    }
    VerifyOptions opts;
    opts.max_witnesses = 1000;
    bool found = false;
    for (int i = 1; i <= 3; ++i) {
      const Verdict v = verify_optimal(greedy(kInst, i), grid, opts);
      if (v.holds) continue;
      CHECK(v.witnesses.size() == std::min<std::size_t>(v.violations, opts.max_witnesses));
      for (const Witness& w : v.witnesses) {
        check_witness_sound(w);
        const Rational own = w.profile[w.player - 1];
        found = found || (own > kInst.share() && sum(w.profile) < kInst.cost());
      }
    }
    CHECK(found);
  }
}

TEST_CASE("social optimality") {
  for (int steps : {3, 6}) {
    const Grid grid = enriched(steps);
    for (int i = 1; i <= 3; ++i) {
      CHECK(verify_socially_optimal(welfare_maximizing(kInst, i), grid).holds);
    }
    VerifyOptions opts;
    opts.max_witnesses = 1000;
    const Verdict v = verify_socially_optimal(deficit_reducing(kInst, 3), grid, opts);
    CHECK_FALSE(v.holds);
    bool found = false;
    for (const Witness& w : v.witnesses) {
      CHECK(w.rhs > w.lhs);
      found = found || (sum(w.profile) == kInst.cost() && w.profile[2] > kInst.share());
    }
    CHECK(found);
  }
}

TEST_CASE("compatibility lemma") {
  const Grid grid = build_grid(kInst, 6);
  const CompatReport r = check_lemma_compat(grid);
  for (const Verdict& v : r.clauses) {
    CAPTURE(v.property);
    CHECK(v.holds);
    CHECK(v.checked > 0);
  }
  CHECK(r.holds());
  CHECK(check_lemma_compat(enriched(3)).holds());
}

TEST_CASE("grid-only tails break the first compatibility clause") {
  VerifyOptions opts;
  opts.tails = TailDomain::kGrid;
  const CompatReport r = check_lemma_compat(build_grid(kInst, 6), opts);
  CHECK_FALSE(r.clauses[0].holds);
}

TEST_CASE("incentive compatibility") {
  const Grid grid = build_grid(kInst, 6);
  CHECK(verify_ic(grid).holds);
  VerifyOptions h0;
  h0.mechanism = Mechanism(GrovesSpec::zero_h());
  CHECK(verify_ic(grid, h0).holds);

  VerifyOptions zero;
  zero.mechanism = Mechanism::zero_tax();
  zero.max_witnesses = 1000;
  const Verdict v = verify_ic(grid, zero);
  CHECK_FALSE(v.holds);
  bool found = false;
  for (const Witness& w : v.witnesses) {
    CHECK(w.rhs > w.lhs);
    const Rational own = w.profile[w.player - 1];
    const Rational report = w.alternative[w.player - 1];
    found = found || (own < kInst.share() && report.is_zero());
  }
  CHECK(found);
}

TEST_CASE("groves invariance") {
  const Grid grid = enriched(3);
  const Mechanism pivotal = Mechanism::pivotal();
  const Mechanism h0(GrovesSpec::zero_h());
  for (const std::string& id : named_strategy_ids()) {
    for (int i = 1; i <= 3; ++i) {
      const InvarianceReport r = check_groves_invariance(named_strategy(id, kInst, i), grid, pivotal, h0);
      CHECK(r.agree);
      CHECK(r.under_a.holds == r.under_b.holds);
    }
  }
  CHECK_THROWS_AS(check_groves_invariance(truth_telling(kInst, 1), grid, pivotal, Mechanism::zero_tax()),
                  std::invalid_argument);
  CHECK(check_groves_spec(build_grid(kInst, 6), GrovesSpec::zero_h()).holds);
}

TEST_CASE("dominance relation") {
  const Grid grid = build_grid(kInst, 3);
  CHECK(dominance_relation(truth_telling(kInst, 1), truth_telling(kInst, 1), grid).relation == Dominance::kEqual);
  for (int i = 1; i <= 3; ++i) {
    for (const std::string& a : named_strategy_ids()) {
      for (const std::string& b : named_strategy_ids()) {
        const DominanceResult ab = dominance_relation(named_strategy(a, kInst, i), named_strategy(b, kInst, i), grid);
        const DominanceResult ba = dominance_relation(named_strategy(b, kInst, i), named_strategy(a, kInst, i), grid);
        const Dominance mirrored = ab.relation == Dominance::kGreater ? Dominance::kLess
                                   : ab.relation == Dominance::kLess  ? Dominance::kGreater
                                                                      : ab.relation;
        CHECK(ba.relation == mirrored);
        CHECK(ab.first_better.has_value() == ba.second_better.has_value());
      }
    }
  }
  // thm5 is optimal, greedy is not, so thm5 must not lose to greedy.
  const Dominance d = dominance_relation(welfare_maximizing(kInst, 2), greedy(kInst, 2), grid).relation;
  CHECK((d == Dominance::kGreater || d == Dominance::kEqual));
}

TEST_CASE("optimality agrees with dominance over the deviation universe") {
  const Grid grid = build_grid(kInst, 3);
  const StrategyVector thm5 = StrategyVector::uniform("thm5", kInst);
  const DeviationUniverse universe = standard_deviation_universe(grid, thm5);
  std::vector<Strategy> strategies;
  for (const std::string& id : named_strategy_ids()) {
    for (int i = 1; i <= 3; ++i) strategies.push_back(named_strategy(id, kInst, i));
  }
  for (const CrossCheckRow& row : optimality_dominance_crosscheck(strategies, universe, grid)) {
    CAPTURE(row.strategy);
    CAPTURE(row.player);
    CHECK(row.agree());
  }
}

TEST_CASE("nash equilibria on the m=3 grid") {
  const Grid grid = build_grid(kInst, 3);
  for (const char* id : {"thm3", "thm5"}) {
    const StrategyVector v = StrategyVector::uniform(id, kInst);
    const Verdict plain = nash_check(v, standard_deviation_universe(grid, v), grid);
    CAPTURE(plain.property);
    CHECK(plain.holds);
    const StrategyVector truth = StrategyVector::uniform("truth", kInst);
    const Verdict starred = nash_check(truth, standard_deviation_universe(grid, truth), grid, {}, &v);
    CAPTURE(starred.property);
    CHECK(starred.holds);
  }
}

TEST_CASE("nash under the valuation-only preference fails") {
  const Grid grid = build_grid(kInst, 3);
  VerifyOptions opts;
  opts.basis = PreferenceBasis::kValuation;
  const StrategyVector v = StrategyVector::uniform("thm3", kInst);
  const Verdict r = nash_check(v, standard_deviation_universe(grid, v), grid, opts);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness());
  CHECK(r.witness()->rhs > r.witness()->lhs);
}

TEST_CASE("deviation universe contents") {
  const Grid grid = build_grid(kInst, 3);
  const StrategyVector v = StrategyVector::uniform("thm3", kInst);
  const DeviationUniverse u = standard_deviation_universe(grid, v);
  REQUIRE(u.size() == 3);
  // 4 named + 4 constants + 3 overrides per stage input.
  CHECK(u[0].size() == 4 + 4 + 4 * 3);
  CHECK(u[2].size() == 4 + 4 + 64 * 3);
  CHECK_THROWS_AS(standard_deviation_universe(grid, StrategyVector::uniform("thm3", ProjectInstance(2, 300))),
                  std::invalid_argument);
}

TEST_CASE("welfare maximality over optimal paths") {
  const Grid grid = enriched(6);
  const OptSetCache cache(grid);
  const WelfarePath best = max_welfare_over_optimal(cache, P({60, 70, 250}));
  CHECK(best.social_welfare == Rational(10));
  CHECK(max_welfare_over_optimal(cache, P({110, 80, 110})).social_welfare == Rational(0));
  CHECK(max_welfare_over_optimal(cache, P({0, 0, 0})).social_welfare == Rational(0));
  CHECK(oracle::scaled_welfare(kProblem, ints(best.announcements), {60, 70, 250}) == 30);
  CHECK(oracle::scaled_welfare(kProblem, {60, 300, 300}, {60, 70, 250}) == 240);
  CHECK_THROWS_AS(max_welfare_over_optimal(cache, P({61, 70, 250})), std::domain_error);

  CHECK(verify_welfare_maximality(StrategyVector::uniform("thm5", kInst), cache).holds);
  CHECK_FALSE(verify_welfare_maximality(StrategyVector::uniform("thm3", kInst), cache).holds);
  CHECK(check_last_mover_welfare(welfare_maximizing(kInst, 3), cache).holds);
  CHECK_THROWS_AS(check_last_mover_welfare(welfare_maximizing(kInst, 2), cache), std::invalid_argument);
}

TEST_CASE("maximum welfare matches exhaustive search over oracle-optimal paths") {
  const Grid grid = build_grid(kInst, 3);
  const OptSetCache cache(grid);
  const oracle::Vec points = ints(grid.points);
  const oracle::Vec dense = oracle::range(0, 300, 10);
  for (const TypeProfile& theta : grid.all_profiles()) {
    const oracle::Vec t = ints(theta);
    oracle::Int best = INT64_MIN;
    for (oracle::Int a : oracle::optimal_members(kProblem, {}, t[0], points, dense)) {
      for (oracle::Int b : oracle::optimal_members(kProblem, {a}, t[1], points, dense)) {
        for (oracle::Int d : oracle::optimal_members(kProblem, {a, b}, t[2], points, dense)) {
          best = std::max(best, oracle::scaled_welfare(kProblem, {a, b, d}, t));
        }
      }
    }
    CHECK(max_welfare_over_optimal(cache, theta).social_welfare * Rational(3) == Rational(best));
  }
}

TEST_CASE("budget balance and property suites") {
  const Grid grid = build_grid(kInst, 6);
  CHECK(verify_budget_balance_orders(grid).holds);
  CHECK(verify_budget_balance_orders(enriched(6)).holds);
  const std::vector<Verdict> suite = property_suite(grid);
  CHECK(suite.size() == 11);
  for (const Verdict& v : suite) {
    CAPTURE(v.property);
    CHECK(v.holds);
    CHECK(v.checked == grid.profile_count());
  }
}

TEST_CASE("scans are deterministic and resumable") {
  const Grid grid = enriched(3);
  VerifyOptions opts;
  opts.mechanism = Mechanism::zero_tax();
  opts.max_witnesses = 5;
  ::setenv("SEQPIVOT_THREADS", "1", 1);
  const Verdict serial = verify_ic(grid, opts);
  ::setenv("SEQPIVOT_THREADS", "3", 1);
  const Verdict parallel = verify_ic(grid, opts);
  ::unsetenv("SEQPIVOT_THREADS");
  CHECK(serial == parallel);
  CHECK(serial.witnesses.size() == 5);
  CHECK(serial.violations > 5);

  std::uint64_t last = 0;
  std::uint64_t total_seen = 0;
  opts.progress = [&](std::uint64_t done, std::uint64_t total) {
    CHECK(done >= last);
    last = done;
    total_seen = total;
  };
  opts.start_rank = 128;
  const Verdict tail = verify_ic(grid, opts);
  CHECK(last == grid.profile_count());
  CHECK(total_seen == grid.profile_count());
  CHECK(tail.checked == grid.profile_count() - 128);
  CHECK(tail.violations <= serial.violations);
}
