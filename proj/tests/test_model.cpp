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

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "seqpivot/grid.hpp"
#include "seqpivot/model.hpp"

using namespace seqpivot;

namespace {

const ProjectInstance kInst(3, 300);

TypeProfile P(std::initializer_list<std::int64_t> v) { return TypeProfile(v.begin(), v.end()); }

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(ProjectInstance(1, 300), std::invalid_argument);
  CHECK_THROWS_AS(ProjectInstance(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(ProjectInstance(3, Rational(-1)), std::invalid_argument);
  CHECK(kInst.share() == Rational(100));
  CHECK(ProjectInstance(3, 1).share() == Rational(1, 3));
}

TEST_CASE("valuation") {
  CHECK(valuation(kInst, Decision::kBuild, 110) == Rational(10));
  CHECK(valuation(kInst, Decision::kBuild, 80) == Rational(-20));
  CHECK(valuation(kInst, Decision::kCancel, 250) == Rational(0));
  CHECK_THROWS_AS(valuation(kInst, Decision::kBuild, 301), std::domain_error);
  CHECK_THROWS_AS(valuation(kInst, Decision::kBuild, -1), std::domain_error);
}

TEST_CASE("decision rule builds at the boundary") {
  CHECK(decide(kInst, P({110, 80, 110})) == Decision::kBuild);
  CHECK(decide(kInst, P({0, 0, 0})) == Decision::kCancel);
  CHECK(decide(kInst, P({100, 100, 100})) == Decision::kBuild);
  CHECK(decide(kInst, P({100, 100, 99})) == Decision::kCancel);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(validate_profile(kInst, P({1, 2})), std::domain_error);
  CHECK_THROWS_AS(validate_profile(kInst, P({1, 2, 400})), std::domain_error);
  CHECK_NOTHROW(validate_profile(kInst, P({0, 300, 150})));
}

TEST_CASE("closed-form pivotal taxes") {
  CHECK(pivotal_tax(kInst, P({110, 80, 110})) == P({-10, 0, -10}));
  CHECK(pivotal_tax(kInst, P({60, 70, 300})) == P({0, 0, -70}));
  CHECK(pivotal_tax(kInst, P({0, 0, 0})) == P({0, 0, 0}));
}

TEST_CASE("groves taxes") {
  CHECK(groves_tax(kInst, GrovesSpec::pivotal(), P({110, 80, 110})) == P({-10, 0, -10}));
  // t_i = sum_{j!=i} v_j(1, theta_j): player 2 collects 10 + 10.
  CHECK(groves_tax(kInst, GrovesSpec::zero_h(), P({110, 80, 110})) == P({-10, 20, -10}));
  CHECK(groves_tax(kInst, GrovesSpec::zero_h(), P({0, 0, 0})) == P({0, 0, 0}));
}

TEST_CASE("outcome evaluates utilities against true types") {
  const Mechanism m = Mechanism::pivotal();
  const Outcome truthful = outcome(kInst, m, P({110, 80, 110}), P({110, 80, 110}));
  CHECK(truthful.decision == Decision::kBuild);
  CHECK(truthful.utilities == P({0, -20, 0}));
  CHECK(truthful.social_welfare == Rational(-20));

  const Outcome seq = outcome(kInst, m, P({110, 80, 300}), P({110, 80, 110}));
  CHECK(seq.taxes == P({0, 0, -10}));
  CHECK(seq.utilities == P({10, -20, 0}));
  CHECK(seq.social_welfare == Rational(-10));

  const Outcome zero = outcome(kInst, m, P({0, 0, 0}), P({0, 0, 0}));
  CHECK(zero.utilities == P({0, 0, 0}));
  CHECK(zero.social_welfare == Rational(0));

  CHECK(final_utility(kInst, m, P({110, 80, 300}), 110, 3) == Rational(0));
}

TEST_CASE("clarke taxes match the integer oracle on a grid") {
  for (const auto& [n, c] : {std::pair{3, 300}, std::pair{2, 10}, std::pair{4, 8}}) {
    const ProjectInstance inst(n, c);
    const oracle::Problem p{n, c};
    const Grid grid = build_grid(inst, n == 4 ? 4 : 6);
    for (const TypeProfile& theta : grid.all_profiles()) {
      oracle::Vec reports;
      bool integral = true;
      for (const Rational& t : theta) {
        integral = integral && t.is_integer();
        reports.push_back(t.num());
      }
      if (!integral) continue;
      const std::vector<Rational> taxes = pivotal_tax(inst, theta);
      const std::vector<Rational> h0 = groves_tax(inst, GrovesSpec::zero_h(), theta);
      const oracle::Vec want = oracle::scaled_clarke(p, reports);
      const oracle::Vec want_h0 = oracle::scaled_groves_h0(p, reports);
      for (int i = 0; i < n; ++i) {
        CAPTURE(theta[i]);
        CHECK(taxes[i] * Rational(n) == Rational(want[i]));
        CHECK(h0[i] * Rational(n) == Rational(want_h0[i]));
      }
    }
  }
}

TEST_CASE("pivotal invariants over the m=6 grid") {
  const Grid grid = build_grid(kInst, 6);
  const Mechanism m = Mechanism::pivotal();
  for (const TypeProfile& theta : grid.all_profiles()) {
    const std::vector<Rational> closed = pivotal_tax(kInst, theta);
    CHECK(closed == groves_tax(kInst, GrovesSpec::pivotal(), theta));
    for (const Rational& t : closed) CHECK(t.sign() <= 0);
    CHECK(sum(closed).sign() <= 0);

    Rational at_f;
    Rational at_other;
    const Decision f = decide(kInst, theta);
    const Decision g = f == Decision::kBuild ? Decision::kCancel : Decision::kBuild;
    for (const Rational& t : theta) {
      at_f += valuation(kInst, f, t);
      at_other += valuation(kInst, g, t);
    }
    CHECK(at_f >= at_other);

    const Outcome o = outcome(kInst, m, theta, theta);
    CHECK(o.social_welfare == sum(o.utilities));
    for (int i = 0; i < 3; ++i) {
      CHECK(o.utilities[i] == valuation(kInst, o.decision, theta[i]) + o.taxes[i]);
    }
  }
}

TEST_CASE("pivotal h term ignores the player's own report") {
  const Grid grid = build_grid(kInst, 6);
  const GrovesSpec spec = GrovesSpec::pivotal();
  for (const TypeProfile& theta : grid.all_profiles()) {
    for (int i = 1; i <= 3; ++i) {
      std::vector<Rational> others = theta;
      others.erase(others.begin() + (i - 1));
      const Rational h = spec.h(kInst, others, i);
      for (const Rational& b : grid.points) {
        TypeProfile moved = theta;
        moved[i - 1] = b;
        Rational residual = groves_tax(kInst, spec, moved)[i - 1];
        for (int j = 1; j <= 3; ++j) {
          if (j != i) residual -= valuation(kInst, decide(kInst, moved), moved[j - 1]);
        }
        CHECK(residual == h);
      }
    }
  }
}

TEST_CASE("mechanism predicates") {
  const Grid grid = build_grid(kInst, 6);
  std::vector<TypeProfile> profiles = enrich(grid, P({110, 80})).all_profiles();

  const MechanismPredicates pivotal = mechanism_predicates(kInst, Mechanism::pivotal(), profiles);
  CHECK(pivotal.pay_only.holds);
  CHECK(pivotal.feasible.holds);
  CHECK(pivotal.incentive_compatible.holds);
  CHECK_FALSE(pivotal.budget_balanced.holds);
  REQUIRE(pivotal.budget_balanced.witness());

  const std::vector<TypeProfile> table_one{P({110, 80, 110})};
  const MechanismPredicates single = mechanism_predicates(kInst, Mechanism::pivotal(), table_one);
  REQUIRE(single.budget_balanced.witness());
  CHECK(single.budget_balanced.witness()->lhs == Rational(-20));

  const std::vector<TypeProfile> zero{P({0, 0, 0})};
  CHECK(mechanism_predicates(kInst, Mechanism::pivotal(), zero).budget_balanced.holds);

  const MechanismPredicates h0 = mechanism_predicates(kInst, Mechanism(GrovesSpec::zero_h()), profiles);
  CHECK_FALSE(h0.pay_only.holds);
  CHECK(h0.incentive_compatible.holds);
  const std::vector<TypeProfile> point{P({100, 150, 150})};
  const MechanismPredicates h0_point = mechanism_predicates(kInst, Mechanism(GrovesSpec::zero_h()), point);
  CHECK_FALSE(h0_point.pay_only.holds);
  REQUIRE(h0_point.pay_only.witness());
  CHECK(h0_point.pay_only.witness()->player == 1);
  CHECK(h0_point.pay_only.witness()->rhs == Rational(100));

  const MechanismPredicates none = mechanism_predicates(kInst, Mechanism::zero_tax(), profiles);
  CHECK(none.budget_balanced.holds);
  CHECK_FALSE(none.incentive_compatible.holds);
  const Witness* w = none.incentive_compatible.witness();
  REQUIRE(w);
  const Rational truthful = final_utility(kInst, Mechanism::zero_tax(), w->announced, w->profile[w->player - 1], w->player);
  const Rational deviated = final_utility(kInst, Mechanism::zero_tax(), w->alternative, w->profile[w->player - 1], w->player);
  CHECK(truthful == w->lhs);
  CHECK(deviated == w->rhs);
  CHECK(deviated > truthful);

  CHECK_THROWS_AS(mechanism_predicates(kInst, Mechanism::pivotal(), std::vector<TypeProfile>{}),
                  std::invalid_argument);
}

TEST_CASE("welfare dominance") {
  std::vector<TypeProfile> profiles = enrich(build_grid(kInst, 6), P({110, 80})).all_profiles();
  CHECK_FALSE(welfare_dominates(kInst, Mechanism::pivotal(), Mechanism::pivotal(), profiles).holds);
  CHECK(welfare_dominates(kInst, Mechanism::zero_tax(), Mechanism::pivotal(), profiles).holds);
  const Verdict reverse = welfare_dominates(kInst, Mechanism::pivotal(), Mechanism::zero_tax(), profiles);
  CHECK_FALSE(reverse.holds);
  REQUIRE(reverse.witness());
  CHECK(reverse.witness()->lhs < reverse.witness()->rhs);
}
