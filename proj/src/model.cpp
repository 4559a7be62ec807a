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

#include "seqpivot/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace seqpivot {

void Verdict::fail(Witness w, std::size_t keep) {
  holds = false;
  ++violations;
  if (witnesses.size() < keep) witnesses.push_back(std::move(w));
}

void Verdict::merge(const Verdict& part, std::size_t keep) {
  holds = holds && part.holds;
  checked += part.checked;
  violations += part.violations;
  for (const Witness& w : part.witnesses) {
    if (witnesses.size() >= keep) break;
    witnesses.push_back(w);
  }
}

ProjectInstance::ProjectInstance(int players, Rational cost)
    : players_(players), cost_(std::move(cost)) {
  if (players_ < 2) throw std::invalid_argument("a project instance needs at least 2 players");
  if (cost_.sign() <= 0) throw std::invalid_argument("project cost must be positive");
}

void validate_profile(const ProjectInstance& instance, std::span<const Rational> profile) {
  if (static_cast<int>(profile.size()) != instance.players()) {
    throw std::domain_error("profile has " + std::to_string(profile.size()) +
                            " entries, expected " + std::to_string(instance.players()));
  }
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (!instance.admissible(profile[k])) {
      throw std::domain_error("type " + profile[k].str() + " of player " + std::to_string(k + 1) +
                              " is outside [0, " + instance.cost().str() + "]");
    }
  }
}

Rational sum(std::span<const Rational> values) {
  Rational total;
  for (const Rational& v : values) total += v;
  return total;
}

Rational valuation(const ProjectInstance& instance, Decision d, const Rational& type) {
  if (!instance.admissible(type)) {
    throw std::domain_error("type " + type.str() + " is outside [0, " + instance.cost().str() + "]");
  }
  if (d == Decision::kCancel) return Rational(0);
  return type - instance.share();
}

Decision decide(const ProjectInstance& instance, std::span<const Rational> profile) {
  validate_profile(instance, profile);
  return sum(profile) >= instance.cost() ? Decision::kBuild : Decision::kCancel;
}

std::vector<Rational> pivotal_tax(const ProjectInstance& instance,
                                  std::span<const Rational> profile) {
  const Decision d = decide(instance, profile);
  const Rational total = sum(profile);
  const Rational others_share = instance.cost() * Rational(instance.players() - 1, instance.players());
  std::vector<Rational> taxes;
  taxes.reserve(profile.size());
  for (const Rational& own : profile) {
    const Rational others = total - own;
    taxes.push_back(d == Decision::kCancel ? min(Rational(0), others_share - others)
                                           : min(Rational(0), others - others_share));
  }
  return taxes;
}

GrovesSpec GrovesSpec::pivotal() {
  return GrovesSpec{
      "pivotal", [](const ProjectInstance& instance, std::span<const Rational> others, int) {
        Rational best;
        for (Decision d : {Decision::kCancel, Decision::kBuild}) {
          Rational welfare;
          for (const Rational& t : others) welfare += valuation(instance, d, t);
          best = max(best, welfare);
        }
        return -best;
      }};
}

GrovesSpec GrovesSpec::zero_h() {
  return GrovesSpec{"groves-h0",
                    [](const ProjectInstance&, std::span<const Rational>, int) { return Rational(0); }};
}

std::vector<Rational> groves_tax(const ProjectInstance& instance, const GrovesSpec& spec,
                                 std::span<const Rational> profile) {
  const Decision d = decide(instance, profile);
  const int n = instance.players();
  std::vector<Rational> values;
  values.reserve(n);
  for (const Rational& t : profile) values.push_back(valuation(instance, d, t));
  const Rational total = sum(values);

  std::vector<Rational> others;
  others.reserve(n - 1);
  std::vector<Rational> taxes;
  taxes.reserve(n);
  for (int i = 0; i < n; ++i) {
    others.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) others.push_back(profile[j]);
    }
    taxes.push_back(total - values[i] + spec.h(instance, others, i + 1));
  }
  return taxes;
}

Mechanism::Mechanism(GrovesSpec spec)
    : name_(spec.name), groves_(std::make_shared<const GrovesSpec>(std::move(spec))) {
  taxes_ = [g = groves_](const ProjectInstance& instance, std::span<const Rational> announced) {
    return groves_tax(instance, *g, announced);
  };
}

Mechanism::Mechanism(std::string name, TaxFunction taxes)
    : name_(std::move(name)), taxes_(std::move(taxes)) {}

Mechanism Mechanism::zero_tax() {
  return Mechanism("zero-tax", [](const ProjectInstance& instance, std::span<const Rational> announced) {
    validate_profile(instance, announced);
    return std::vector<Rational>(announced.size());
  });
}

std::vector<Rational> Mechanism::taxes(const ProjectInstance& instance,
                                       std::span<const Rational> announced) const {
  return taxes_(instance, announced);
}

Outcome outcome(const ProjectInstance& instance, const Mechanism& mechanism,
                std::span<const Rational> announced, std::span<const Rational> true_types) {
  validate_profile(instance, true_types);
  Outcome out;
  out.decision = decide(instance, announced);
  out.taxes = mechanism.taxes(instance, announced);
  out.utilities.reserve(true_types.size());
  for (std::size_t i = 0; i < true_types.size(); ++i) {
    out.utilities.push_back(valuation(instance, out.decision, true_types[i]) + out.taxes[i]);
    out.social_welfare += out.utilities.back();
  }
  return out;
}

Rational final_utility(const ProjectInstance& instance, const Mechanism& mechanism,
                       std::span<const Rational> announced, const Rational& true_type,
                       int player) {
  const Decision d = decide(instance, announced);
  return valuation(instance, d, true_type) + mechanism.taxes(instance, announced)[player - 1];
}

MechanismPredicates mechanism_predicates(const ProjectInstance& instance,
                                         const Mechanism& mechanism,
                                         std::span<const TypeProfile> profiles) {
  if (profiles.empty()) throw std::invalid_argument("mechanism predicates need a nonempty grid");
  constexpr std::size_t kKeep = 1;
  MechanismPredicates out;
  out.feasible.property = "feasible";
  out.budget_balanced.property = "budget_balanced";
  out.pay_only.property = "pay_only";
  out.incentive_compatible.property = "incentive_compatible";

  std::set<Rational> values;
  for (const TypeProfile& p : profiles) values.insert(p.begin(), p.end());

  for (const TypeProfile& profile : profiles) {
    const std::vector<Rational> taxes = mechanism.taxes(instance, profile);
    const Rational deficit = sum(taxes);
    ++out.feasible.checked;
    ++out.budget_balanced.checked;
    if (deficit.sign() > 0) {
      out.feasible.fail({profile, 0, "", Rational(0), deficit, "sum of taxes is positive"}, kKeep);
    }
    if (!deficit.is_zero()) {
      out.budget_balanced.fail({profile, 0, "", deficit, Rational(0), "sum of taxes is nonzero"},
                               kKeep);
    }
    for (std::size_t i = 0; i < taxes.size(); ++i) {
      ++out.pay_only.checked;
      if (taxes[i].sign() > 0) {
        out.pay_only.fail({profile, static_cast<int>(i + 1), "", Rational(0), taxes[i],
                           "player receives a positive transfer"},
                          kKeep);
      }
    }

    const Outcome truthful = outcome(instance, mechanism, profile, profile);
    TypeProfile deviated = profile;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      for (const Rational& report : values) {
        if (report == profile[i]) continue;
        ++out.incentive_compatible.checked;
        deviated[i] = report;
        const Rational gain = final_utility(instance, mechanism, deviated, profile[i],
                                            static_cast<int>(i + 1));
        if (gain > truthful.utilities[i]) {
          out.incentive_compatible.fail({profile, static_cast<int>(i + 1), report.str(),
                                         truthful.utilities[i], gain,
                                         "misreport beats truth-telling", profile, deviated},
                                        kKeep);
        }
      }
      deviated[i] = profile[i];
    }
  }
  return out;
}

Verdict welfare_dominates(const ProjectInstance& instance, const Mechanism& a,
                          const Mechanism& b, std::span<const TypeProfile> profiles) {
  if (profiles.empty()) throw std::invalid_argument("welfare dominance needs a nonempty grid");
  Verdict v;
  v.property = "welfare_dominates(" + a.name() + ", " + b.name() + ")";
  bool strict = false;
  for (const TypeProfile& profile : profiles) {
    ++v.checked;
    const Rational wa = outcome(instance, a, profile, profile).social_welfare;
    const Rational wb = outcome(instance, b, profile, profile).social_welfare;
    if (wa < wb) v.fail({profile, 0, b.name(), wa, wb, "social welfare strictly lower"}, 1);
    if (wa > wb) strict = true;
  }
  if (v.holds && !strict) {
    v.holds = false;
    v.violations = 1;
    v.witnesses.clear();
  }
  return v;
}

}  // namespace seqpivot
