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

#include "seqpivot/verification.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "seqpivot/parallel.hpp"

namespace seqpivot {
namespace {

constexpr std::uint64_t kChunk = 64;

// Evaluates fn(rank, verdicts) for every rank in [options.start_rank, total)
// in chunks, possibly concurrently, and folds the per-chunk verdicts in rank
// order so the result does not depend on scheduling.
template <typename Fn>
std::vector<Verdict> scan_multi(std::vector<std::string> properties, std::uint64_t total,
                                const VerifyOptions& options, Fn&& fn) {
  std::vector<Verdict> out(properties.size());
  for (std::size_t k = 0; k < properties.size(); ++k) out[k].property = properties[k];
  const std::uint64_t begin = std::min(options.start_rank, total);
  const std::uint64_t chunks = (total - begin + kChunk - 1) / kChunk;
  const std::uint64_t batch = std::uint64_t{worker_count()} * 4;
  for (std::uint64_t first = 0; first < chunks; first += batch) {
    const std::uint64_t count = std::min(batch, chunks - first);
    auto parts = parallel_map(count, [&](std::size_t k) {
      std::vector<Verdict> part(properties.size());
      const std::uint64_t lo = begin + (first + k) * kChunk;
      const std::uint64_t hi = std::min(total, lo + kChunk);
      for (std::uint64_t rank = lo; rank < hi; ++rank) fn(rank, part);
      return part;
    });
    for (const auto& part : parts) {
      for (std::size_t k = 0; k < out.size(); ++k) out[k].merge(part[k], options.max_witnesses);
    }
    if (options.progress) {
      options.progress(std::min(total, begin + (first + count) * kChunk), total);
    }
  }
  return out;
}

template <typename Fn>
Verdict scan(std::string property, std::uint64_t total, const VerifyOptions& options, Fn&& fn) {
  return std::move(scan_multi({std::move(property)}, total, options,
                              [&](std::uint64_t rank, std::vector<Verdict>& v) { fn(rank, v[0]); })
                       .front());
}

std::vector<Rational> joined(std::span<const Rational> prefix, const Rational& middle,
                             std::span<const Rational> tail) {
  std::vector<Rational> out(prefix.begin(), prefix.end());
  out.push_back(middle);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::string label(const Strategy& s) {
  return s.name() + ":p" + std::to_string(s.player());
}

void require_same_instance(const Strategy& s, const Grid& grid) {
  if (!(s.instance() == grid.instance)) {
    throw std::invalid_argument("strategy " + s.name() + " belongs to a different instance");
  }
}

Rational preference_value(PreferenceBasis basis, const ProjectInstance& instance,
                          const Mechanism& mechanism, std::span<const Rational> announced,
                          const Rational& true_type, int player) {
  if (basis == PreferenceBasis::kValuation) {
    return valuation(instance, decide(instance, announced), true_type);
  }
  return final_utility(instance, mechanism, announced, true_type, player);
}

std::string profile_string(std::span<const Rational> values) {
  std::string s = "(";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) s += ", ";
    s += values[k].str();
  }
  return s + ")";
}

}  // namespace

std::string to_string(TailDomain domain) {
  return domain == TailDomain::kGrid ? "grid" : "grid+critical";
}

std::string to_string(PreferenceBasis basis) {
  return basis == PreferenceBasis::kValuation ? "valuation" : "utility";
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::kEqual: return "equal";
    case Dominance::kGreater: return "greater";
    case Dominance::kLess: return "less";
    case Dominance::kIncomparable: return "incomparable";
  }
  return "?";
}

std::vector<std::vector<Rational>> stage_tails(const Grid& grid, std::span<const Rational> prefix,
                                               const Rational& own, TailDomain domain) {
  const int n = grid.instance.players();
  const int length = n - static_cast<int>(prefix.size()) - 1;
  if (length < 0) throw std::invalid_argument("prefix longer than n - 1");
  if (length == 0) return {{}};
  grid.require_tractable(length);
  std::vector<std::vector<Rational>> tails;
  const std::uint64_t count = grid.tuple_count(length);
  for (std::uint64_t r = 0; r < count; ++r) tails.push_back(grid.tuple_at(r, length));
  if (domain == TailDomain::kGrid) return tails;

  const Rational& c = grid.instance.cost();
  const Rational base = c - sum(prefix);
  const Rational top = c * Rational(length);
  std::set<Rational> sums{Rational(0), top};
  auto add = [&](const Rational& t) { sums.insert(max(Rational(0), min(top, t))); };
  for (const Rational& x : grid.points) add(base - x);
  add(base - own);
  const std::vector<Rational> breaks(sums.begin(), sums.end());
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    sums.insert((breaks[k] + breaks[k + 1]) / Rational(2));
  }
  for (const Rational& total : sums) {
    std::vector<Rational> tail(length);
    Rational remaining = total;
    for (Rational& slot : tail) {
      slot = min(c, remaining);
      remaining -= slot;
    }
    tails.push_back(std::move(tail));
  }
  return tails;
}

std::optional<Witness> optimality_violation(const Grid& grid, const StrategyInput& input,
                                            const Rational& a, const VerifyOptions& options) {
  const ProjectInstance& inst = grid.instance;
  const int player = static_cast<int>(input.prefix.size()) + 1;
  for (const auto& tail : stage_tails(grid, input.prefix, input.own, options.tails)) {
    std::vector<Rational> announced = joined(input.prefix, a, tail);
    const Rational ua = final_utility(inst, options.mechanism, announced, input.own, player);
    std::vector<Rational> alternative = announced;
    for (const Rational& b : grid.points) {
      if (b == a) continue;
      alternative[player - 1] = b;
      const Rational ub = final_utility(inst, options.mechanism, alternative, input.own, player);
      if (ub > ua) {
        return Witness{joined(input.prefix, input.own, tail), player, b.str(), ua, ub,
                       "announcing " + a.str() + " is beaten by announcing " + b.str(),
                       std::move(announced), std::move(alternative)};
      }
    }
  }
  return std::nullopt;
}

OptSet::OptSet(int player, std::map<StrategyInput, std::vector<Rational>> members)
    : player_(player), members_(std::move(members)) {}

const std::vector<Rational>& OptSet::at(const StrategyInput& input) const {
  auto it = members_.find(input);
  if (it == members_.end()) {
    throw std::out_of_range("no optimal-announcement entry for prefix " +
                            profile_string(input.prefix) + " and type " + input.own.str());
  }
  return it->second;
}

bool OptSet::contains(const StrategyInput& input, const Rational& a) const {
  const auto& m = at(input);
  return std::binary_search(m.begin(), m.end(), a);
}

OptSet compute_opt_set(const Grid& grid, int player, const VerifyOptions& options) {
  const ProjectInstance& inst = grid.instance;
  if (player < 1 || player > inst.players()) throw std::invalid_argument("player out of range");
  grid.require_tractable(inst.players());
  const std::vector<StrategyInput> inputs = stage_inputs(grid.points, player);
  auto members = parallel_map(inputs.size(), [&](std::size_t k) {
    const StrategyInput& in = inputs[k];
    std::vector<bool> keep(grid.points.size(), true);
    std::vector<Rational> u(grid.points.size());
    for (const auto& tail : stage_tails(grid, in.prefix, in.own, options.tails)) {
      std::vector<Rational> announced = joined(in.prefix, Rational(0), tail);
      for (std::size_t a = 0; a < grid.points.size(); ++a) {
        announced[player - 1] = grid.points[a];
        u[a] = final_utility(inst, options.mechanism, announced, in.own, player);
      }
      const Rational best = *std::max_element(u.begin(), u.end());
      for (std::size_t a = 0; a < u.size(); ++a) keep[a] = keep[a] && u[a] == best;
    }
    std::vector<Rational> out;
    for (std::size_t a = 0; a < keep.size(); ++a) {
      if (keep[a]) out.push_back(grid.points[a]);
    }
    return out;
  });
  std::map<StrategyInput, std::vector<Rational>> table;
  for (std::size_t k = 0; k < inputs.size(); ++k) table.emplace(inputs[k], std::move(members[k]));
  return OptSet(player, std::move(table));
}

OptSetCache::OptSetCache(const Grid& grid, const VerifyOptions& options)
    : grid_(grid), mechanism_(options.mechanism) {
  for (int i = 1; i <= grid.instance.players(); ++i) {
    sets_.push_back(compute_opt_set(grid, i, options));
  }
}

Verdict verify_optimal(const Strategy& strategy, const Grid& grid, const VerifyOptions& options) {
  require_same_instance(strategy, grid);
  grid.require_tractable(grid.instance.players());
  const std::vector<StrategyInput> inputs = stage_inputs(grid.points, strategy.player());
  return scan("optimal:" + label(strategy), inputs.size(), options,
              [&](std::uint64_t rank, Verdict& v) {
                ++v.checked;
                const Rational a = strategy(inputs[rank]);
                if (auto w = optimality_violation(grid, inputs[rank], a, options)) {
                  w->deviation = "announce " + w->deviation;
                  v.fail(std::move(*w), options.max_witnesses);
                }
              });
}

Verdict verify_socially_optimal(const Strategy& strategy, const Grid& grid, const OptSet& opt,
                                const VerifyOptions& options) {
  if (opt.player() != strategy.player()) {
    throw std::invalid_argument("optimal-announcement table belongs to another player");
  }
  Verdict out = verify_optimal(strategy, grid, options);
  out.property = "socially-optimal:" + label(strategy);
  const ProjectInstance& inst = grid.instance;
  const int player = strategy.player();
  const std::vector<StrategyInput> inputs = stage_inputs(grid.points, player);
  Verdict welfare = scan(out.property, inputs.size(), options, [&](std::uint64_t rank, Verdict& v) {
    const StrategyInput& in = inputs[rank];
    ++v.checked;
    const Rational a = strategy(in);
    for (const auto& tail : stage_tails(grid, in.prefix, in.own, options.tails)) {
      const std::vector<Rational> truth = joined(in.prefix, in.own, tail);
      std::vector<Rational> announced = joined(in.prefix, a, tail);
      const Rational sw = outcome(inst, options.mechanism, announced, truth).social_welfare;
      std::vector<Rational> alternative = announced;
      for (const Rational& m : opt.at(in)) {
        if (m == a) continue;
        alternative[player - 1] = m;
        const Rational sw_m = outcome(inst, options.mechanism, alternative, truth).social_welfare;
        if (sw_m > sw) {
          v.fail({truth, player, "announce " + m.str(), sw, sw_m,
                  "another optimal announcement yields higher social welfare", announced,
                  alternative},
                 options.max_witnesses);
          return;
        }
      }
    }
  });
  welfare.checked = 0;
  out.merge(welfare, options.max_witnesses);
  return out;
}

Verdict verify_socially_optimal(const Strategy& strategy, const Grid& grid,
                                const VerifyOptions& options) {
  return verify_socially_optimal(strategy, grid, compute_opt_set(grid, strategy.player(), options),
                                 options);
}

bool CompatReport::holds() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Verdict& v) { return v.holds; });
}

CompatReport check_lemma_compat(const OptSetCache& opt, const VerifyOptions& options) {
  const Grid& grid = opt.grid();
  const ProjectInstance& inst = grid.instance;
  const Rational& c = inst.cost();
  CompatReport report;
  const char* names[] = {"compat(i)", "compat(ii)", "compat(iii)", "compat(iv)"};
  for (int k = 0; k < 4; ++k) report.clauses[k].property = names[k];
  for (int i = 1; i <= inst.players(); ++i) {
    const bool last = i == inst.players();
    for (const auto& [in, members] : opt[i].table()) {
      const Rational p = sum(in.prefix);
      const Rational s = p + in.own;
      for (const Rational& a : members) {
        int clause = -1;
        bool ok = true;
        Rational lhs;
        Rational rhs;
        if (s < c && !last) {
          clause = 0, ok = a == in.own, lhs = a, rhs = in.own;
        } else if (s < c) {
          clause = 1, ok = p + a < c, lhs = p + a, rhs = c;
        } else if (s == c && !last) {
          clause = 2, ok = a >= in.own, lhs = a, rhs = in.own;
        } else if (s > c) {
          clause = 3, ok = p + a >= c, lhs = p + a, rhs = c;
        }
        if (clause < 0) continue;
        Verdict& v = report.clauses[clause];
        ++v.checked;
        if (!ok) {
          v.fail({joined(in.prefix, in.own, {}), i, "announce " + a.str(), lhs, rhs,
                  "optimal announcement breaks the clause", joined(in.prefix, a, {}), {}},
                 options.max_witnesses);
        }
      }
    }
  }
  return report;
}

CompatReport check_lemma_compat(const Grid& grid, const VerifyOptions& options) {
  return check_lemma_compat(OptSetCache(grid, options), options);
}

Verdict verify_ic(const Grid& grid, const VerifyOptions& options) {
  grid.require_tractable(grid.instance.players());
  const ProjectInstance& inst = grid.instance;
  return scan("incentive-compatible:" + options.mechanism.name(), grid.profile_count(), options,
              [&](std::uint64_t rank, Verdict& v) {
                ++v.checked;
                const TypeProfile theta = grid.profile_at(rank);
                const Outcome truthful = outcome(inst, options.mechanism, theta, theta);
                TypeProfile deviated = theta;
                for (int i = 1; i <= inst.players(); ++i) {
                  for (const Rational& b : grid.points) {
                    if (b == theta[i - 1]) continue;
                    deviated[i - 1] = b;
                    const Rational u = final_utility(inst, options.mechanism, deviated, theta[i - 1], i);
                    if (u > truthful.utilities[i - 1]) {
                      v.fail({theta, i, "report " + b.str(), truthful.utilities[i - 1], u,
                              "misreport beats truth-telling", theta, deviated},
                             options.max_witnesses);
                    }
                  }
                  deviated[i - 1] = theta[i - 1];
                }
              });
}

InvarianceReport check_groves_invariance(const Strategy& strategy, const Grid& grid,
                                         const Mechanism& a, const Mechanism& b,
                                         const VerifyOptions& options) {
  if (!a.is_groves() || !b.is_groves()) {
    throw std::invalid_argument("invariance is only defined between Groves mechanisms");
  }
  VerifyOptions oa = options;
  oa.mechanism = a;
  VerifyOptions ob = options;
  ob.mechanism = b;
  InvarianceReport r;
  r.under_a = verify_optimal(strategy, grid, oa);
  r.under_a.property += "@" + a.name();
  r.under_b = verify_optimal(strategy, grid, ob);
  r.under_b.property += "@" + b.name();
  r.agree = r.under_a.holds == r.under_b.holds;
  return r;
}

Verdict check_groves_spec(const Grid& grid, const GrovesSpec& spec, const VerifyOptions& options) {
  grid.require_tractable(grid.instance.players());
  const ProjectInstance& inst = grid.instance;
  const int n = inst.players();
  return scan("groves-spec:" + spec.name, grid.profile_count(), options,
              [&](std::uint64_t rank, Verdict& v) {
                ++v.checked;
                const TypeProfile theta = grid.profile_at(rank);
                for (int i = 1; i <= n; ++i) {
                  std::vector<Rational> others = theta;
                  others.erase(others.begin() + (i - 1));
                  const Rational h = spec.h(inst, others, i);
                  const Rational again = spec.h(inst, others, i);
                  if (h != again) {
                    v.fail({theta, i, "repeat evaluation", h, again, "h is not deterministic"},
                           options.max_witnesses);
                    continue;
                  }
                  TypeProfile moved = theta;
                  for (const Rational& b : grid.points) {
                    moved[i - 1] = b;
                    const Decision d = decide(inst, moved);
                    Rational residual = groves_tax(inst, spec, moved)[i - 1];
                    for (int j = 1; j <= n; ++j) {
                      if (j != i) residual -= valuation(inst, d, moved[j - 1]);
                    }
                    if (residual != h) {
                      v.fail({theta, i, "report " + b.str(), h, residual,
                              "h term moves with the player's own report", theta, moved},
                             options.max_witnesses);
                      break;
                    }
                  }
                }
              });
}

// Every profile (grid stage input of `player`, tail) that the dominance and
// tie-clause quantifiers range over.
static std::vector<TypeProfile> preference_profiles(const Grid& grid, int player, TailDomain tails) {
  std::vector<TypeProfile> out;
  for (const StrategyInput& in : stage_inputs(grid.points, player)) {
    for (const auto& tail : stage_tails(grid, in.prefix, in.own, tails)) {
      out.push_back(joined(in.prefix, in.own, tail));
    }
  }
  return out;
}

static DominanceResult dominance_over(const Strategy& s, const Strategy& s2,
                               std::span<const TypeProfile> profiles, const VerifyOptions& options,
                               const ProjectInstance& inst) {
  const int i = s.player();
  DominanceResult out;
  for (const TypeProfile& theta : profiles) {
    const std::span<const Rational> prefix(theta.data(), i - 1);
    TypeProfile a1 = theta;
    a1[i - 1] = s(prefix, theta[i - 1]);
    TypeProfile a2 = theta;
    a2[i - 1] = s2(prefix, theta[i - 1]);
    const Rational x1 = preference_value(options.basis, inst, options.mechanism, a1, theta[i - 1], i);
    const Rational x2 = preference_value(options.basis, inst, options.mechanism, a2, theta[i - 1], i);
    if (x1 > x2 && !out.first_better) {
      out.first_better = Witness{theta, i, s2.name(), x1, x2, s.name() + " strictly better", a1, a2};
    }
    if (x2 > x1 && !out.second_better) {
      out.second_better = Witness{theta, i, s2.name(), x1, x2, s2.name() + " strictly better", a1, a2};
    }
    if (out.first_better && out.second_better) break;
  }
  if (out.first_better && out.second_better) {
    out.relation = Dominance::kIncomparable;
  } else if (out.first_better) {
    out.relation = Dominance::kGreater;
  } else if (out.second_better) {
    out.relation = Dominance::kLess;
  }
  return out;
}

DominanceResult dominance_relation(const Strategy& s, const Strategy& s2, const Grid& grid,
                                   const VerifyOptions& options) {
  if (s.player() != s2.player()) {
    throw std::invalid_argument("dominance compares strategies of the same player");
  }
  require_same_instance(s, grid);
  grid.require_tractable(grid.instance.players());
  return dominance_over(s, s2, preference_profiles(grid, s.player(), options.tails), options,
                        grid.instance);
}

DeviationUniverse standard_deviation_universe(const Grid& grid, const StrategyVector& checked) {
  const ProjectInstance& inst = grid.instance;
  if (checked.size() != inst.players()) {
    throw std::invalid_argument("strategy vector size does not match the player count");
  }
  grid.require_tractable(inst.players());
  DeviationUniverse universe(inst.players());
  for (int i = 1; i <= inst.players(); ++i) {
    auto& set = universe[i - 1];
    for (const std::string& id : named_strategy_ids()) set.push_back(named_strategy(id, inst, i));
    for (const Rational& x : grid.points) set.push_back(constant(inst, i, x));
    const std::vector<StrategyInput> inputs = stage_inputs(grid.points, i);
    const Strategy table = tabulate(checked[i], inputs);
    for (const StrategyInput& in : inputs) {
      const Rational current = table(in);
      for (const Rational& x : grid.points) {
        if (x != current) set.push_back(override_at(table, in, x));
      }
    }
  }
  return universe;
}

Verdict nash_check(const StrategyVector& vector, const DeviationUniverse& universe,
                   const Grid& grid, const VerifyOptions& options, const StrategyVector* base) {
  const ProjectInstance& inst = grid.instance;
  const int n = inst.players();
  if (vector.size() != n || static_cast<int>(universe.size()) != n) {
    throw std::invalid_argument("vector, universe and instance disagree on the player count");
  }
  grid.require_tractable(n);
  std::vector<std::pair<int, std::size_t>> units;
  for (int i = 1; i <= n; ++i) {
    for (std::size_t k = 0; k < universe[i - 1].size(); ++k) units.emplace_back(i, k);
  }
  auto lift = [&](const StrategyVector& v) {
    if (base == nullptr) return v;
    std::vector<Strategy> composed;
    for (int j = 1; j <= n; ++j) composed.push_back(compose((*base)[j], v[j]));
    return StrategyVector(std::move(composed));
  };
  const StrategyVector left = lift(vector);
  const PlayerOrder order = PlayerOrder::identity(n);
  std::vector<std::vector<TypeProfile>> profiles;
  for (int i = 1; i <= n; ++i) profiles.push_back(preference_profiles(grid, i, options.tails));
  std::string property = "nash:" + vector.begin()->name() + (base ? "*" + base->begin()->name() : "") +
                         ":" + to_string(options.basis);
  return scan(property, units.size(), options, [&](std::uint64_t rank, Verdict& v) {
    ++v.checked;
    const auto [i, k] = units[rank];
    const Strategy& deviation = universe[i - 1][k];
    const StrategyVector right = lift(vector.with(deviation));
    const DominanceResult dom = dominance_over(left[i], right[i], profiles[i - 1], options, inst);
    if (dom.relation == Dominance::kGreater) return;
    if (dom.relation != Dominance::kEqual) {
      Witness w = *dom.second_better;
      w.deviation = deviation.name();
      w.detail = "deviation strictly better for the player at this profile";
      v.fail(std::move(w), options.max_witnesses);
      return;
    }
    for (const TypeProfile& theta : profiles[i - 1]) {
      const PlayTrace lt = play(inst, options.mechanism, order, left, theta);
      const PlayTrace rt = play(inst, options.mechanism, order, right, theta);
      const Rational xl =
          preference_value(options.basis, inst, options.mechanism, lt.announcements, theta[i - 1], i);
      const Rational xr =
          preference_value(options.basis, inst, options.mechanism, rt.announcements, theta[i - 1], i);
      if (xr > xl) {
        v.fail({theta, i, deviation.name(), xl, xr, "deviation wins the tie clause",
                lt.announcements, rt.announcements},
               options.max_witnesses);
        return;
      }
    }
  });
}

WelfarePath max_welfare_over_optimal(const OptSetCache& opt, std::span<const Rational> true_types,
                                     const VerifyOptions&) {
  const Grid& grid = opt.grid();
  const ProjectInstance& inst = grid.instance;
  validate_profile(inst, true_types);
  for (const Rational& t : true_types) {
    if (!grid.contains(t)) throw std::domain_error("true type " + t.str() + " is not a grid point");
  }
  const int n = inst.players();
  std::optional<WelfarePath> best;
  std::vector<Rational> prefix;
  auto dfs = [&](auto&& self) -> void {
    const int stage = static_cast<int>(prefix.size()) + 1;
    if (stage > n) {
      const Rational sw = outcome(inst, opt.mechanism(), prefix, true_types).social_welfare;
      if (!best || sw > best->social_welfare) best = WelfarePath{sw, prefix};
      return;
    }
    for (const Rational& a : opt[stage].at({prefix, true_types[stage - 1]})) {
      prefix.push_back(a);
      self(self);
      prefix.pop_back();
    }
  };
  dfs(dfs);
  if (!best) throw std::logic_error("no optimal announcement path exists");
  return *best;
}

Verdict verify_welfare_maximality(const StrategyVector& vector, const OptSetCache& opt,
                                  const VerifyOptions& options) {
  const Grid& grid = opt.grid();
  const ProjectInstance& inst = grid.instance;
  const PlayerOrder order = PlayerOrder::identity(inst.players());
  return scan("welfare-max:" + vector.begin()->name(), grid.profile_count(), options,
              [&](std::uint64_t rank, Verdict& v) {
                ++v.checked;
                const TypeProfile theta = grid.profile_at(rank);
                const PlayTrace trace = play(inst, opt.mechanism(), order, vector, theta);
                const WelfarePath best = max_welfare_over_optimal(opt, theta, options);
                if (trace.outcome.social_welfare != best.social_welfare) {
                  v.fail({theta, 0, "optimal path " + profile_string(best.announcements),
                          trace.outcome.social_welfare, best.social_welfare,
                          "play does not reach the maximum over optimal paths",
                          trace.announcements, best.announcements},
                         options.max_witnesses);
                }
              });
}

Verdict check_last_mover_welfare(const Strategy& last, const OptSetCache& opt,
                                 const VerifyOptions& options) {
  const Grid& grid = opt.grid();
  const ProjectInstance& inst = grid.instance;
  const int n = inst.players();
  if (last.player() != n) throw std::invalid_argument("strategy must belong to the last player");
  return scan("last-mover-welfare:" + last.name(), grid.profile_count(), options,
              [&](std::uint64_t rank, Verdict& v) {
                ++v.checked;
                const TypeProfile theta = grid.profile_at(rank);
                std::vector<Rational> prefix;
                bool failed = false;
                auto dfs = [&](auto&& self) -> void {
                  if (failed) return;
                  const int stage = static_cast<int>(prefix.size()) + 1;
                  if (stage == n) {
                    std::vector<Rational> mine = prefix;
                    mine.push_back(last(prefix, theta[n - 1]));
                    const Rational sw = outcome(inst, opt.mechanism(), mine, theta).social_welfare;
                    std::vector<Rational> other = mine;
                    for (const Rational& a : opt[n].at({prefix, theta[n - 1]})) {
                      other[n - 1] = a;
                      const Rational sw_a = outcome(inst, opt.mechanism(), other, theta).social_welfare;
                      if (sw_a > sw) {
                        v.fail({theta, n, "announce " + a.str(), sw, sw_a,
                                "another optimal last announcement yields higher social welfare",
                                mine, other},
                               options.max_witnesses);
                        failed = true;
                        return;
                      }
                    }
                    return;
                  }
                  for (const Rational& a : opt[stage].at({prefix, theta[stage - 1]})) {
                    prefix.push_back(a);
                    self(self);
                    prefix.pop_back();
                  }
                };
                dfs(dfs);
              });
}

std::vector<CrossCheckRow> optimality_dominance_crosscheck(std::span<const Strategy> strategies,
                                                           const DeviationUniverse& universe,
                                                           const Grid& grid,
                                                           const VerifyOptions& options) {
  std::vector<CrossCheckRow> rows;
  for (const Strategy& s : strategies) {
    CrossCheckRow row{s.name(), s.player(), options.basis, verify_optimal(s, grid, options).holds,
                      true, ""};
    const auto profiles = preference_profiles(grid, s.player(), options.tails);
    for (const Strategy& other : universe.at(s.player() - 1)) {
      const Dominance d = dominance_over(s, other, profiles, options, grid.instance).relation;
      if (d == Dominance::kLess || d == Dominance::kIncomparable) {
        row.dominates_universe = false;
        row.counter_deviation = other.name();
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Verdict verify_budget_balance_orders(const Grid& grid, const VerifyOptions& options) {
  grid.require_tractable(grid.instance.players());
  const ProjectInstance& inst = grid.instance;
  const StrategyVector thm3 = StrategyVector::uniform("thm3", inst);
  const Mechanism pivotal = Mechanism::pivotal();
  return scan("budget-balance-order", grid.profile_count(), options,
              [&](std::uint64_t rank, Verdict& v) {
                ++v.checked;
                const TypeProfile theta = grid.profile_at(rank);
                try {
                  const PlayerOrder order = find_budget_balanced_order(inst, theta);
                  const PlayTrace trace = play(inst, pivotal, order, thm3, theta);
                  const Rational deficit = sum(trace.outcome.taxes);
                  if (!deficit.is_zero() || is_pivotal(inst, theta, order.last())) {
                    v.fail({theta, order.last(), "order " + order.labels(), deficit, Rational(0),
                            "returned order does not balance the budget", trace.announcements, {}},
                           options.max_witnesses);
                  }
                } catch (const std::logic_error& e) {
                  v.fail({theta, 0, "", Rational(0), Rational(0), e.what()}, options.max_witnesses);
                }
              });
}

std::vector<Verdict> property_suite(const Grid& grid, const VerifyOptions& options) {
  const ProjectInstance& inst = grid.instance;
  const int n = inst.players();
  grid.require_tractable(n);
  const Mechanism pivotal = Mechanism::pivotal();
  const GrovesSpec spec = GrovesSpec::pivotal();
  const StrategyVector truth = StrategyVector::uniform("truth", inst);
  const StrategyVector thm3 = StrategyVector::uniform("thm3", inst);
  const Strategy thm5_last = welfare_maximizing(inst, n);
  const std::vector<PlayerOrder> orders =
      n <= kMaxSweepPlayers ? all_orders(n) : std::vector<PlayerOrder>{PlayerOrder::identity(n)};
  const Rational& c = inst.cost();
  const std::size_t keep = options.max_witnesses;

  enum {
    kPayOnly, kFeasible, kDual, kEfficiency, kConsistency, kTruthfulPlay, kThm3Decision,
    kThm3Stage, kThm3Welfare, kThm5Flip, kNotAllPivotal
  };
  return scan_multi(
      {"pay-only", "feasible", "dual-tax-implementation", "efficiency", "outcome-consistency",
       "truthful-play-equivalence", "thm3-decision-preserved", "thm3-stage-decision-preserved",
       "thm3-welfare-weakly-higher", "thm5-decision-flip", "not-all-pivotal"},
      grid.profile_count(), options, [&](std::uint64_t rank, std::vector<Verdict>& v) {
        for (auto& x : v) ++x.checked;
        const TypeProfile theta = grid.profile_at(rank);
        const std::vector<Rational> taxes = pivotal_tax(inst, theta);
        for (int i = 1; i <= n; ++i) {
          if (taxes[i - 1].sign() > 0) {
            v[kPayOnly].fail({theta, i, "", Rational(0), taxes[i - 1], "positive tax"}, keep);
          }
        }
        const Rational deficit = sum(taxes);
        if (deficit.sign() > 0) {
          v[kFeasible].fail({theta, 0, "", Rational(0), deficit, "taxes sum above zero"}, keep);
        }
        const std::vector<Rational> groves = groves_tax(inst, spec, theta);
        if (groves != taxes) {
          for (int i = 1; i <= n; ++i) {
            if (groves[i - 1] != taxes[i - 1]) {
              v[kDual].fail({theta, i, "", taxes[i - 1], groves[i - 1], "tax formulas disagree"}, keep);
              break;
            }
          }
        }
        const Decision f = decide(inst, theta);
        Rational chosen;
        Rational other;
        for (int i = 0; i < n; ++i) {
          chosen += valuation(inst, f, theta[i]);
          other += valuation(inst, f == Decision::kBuild ? Decision::kCancel : Decision::kBuild,
                             theta[i]);
        }
        if (chosen < other) {
          v[kEfficiency].fail({theta, 0, "other decision", chosen, other, "decision not efficient"}, keep);
        }
        const Outcome simultaneous = outcome(inst, pivotal, theta, theta);
        Rational total;
        bool consistent = true;
        for (int i = 0; i < n; ++i) {
          total += simultaneous.utilities[i];
          consistent = consistent && simultaneous.utilities[i] ==
                                         valuation(inst, simultaneous.decision, theta[i]) +
                                             simultaneous.taxes[i];
        }
        if (!consistent || total != simultaneous.social_welfare) {
          v[kConsistency].fail({theta, 0, "", simultaneous.social_welfare, total,
                                "outcome does not recompute"},
                               keep);
        }
        for (const PlayerOrder& order : orders) {
          const PlayTrace t = play(inst, pivotal, order, truth, theta);
          if (t.announcements != theta || !(t.outcome == simultaneous)) {
            v[kTruthfulPlay].fail({theta, 0, "order " + order.labels(), simultaneous.social_welfare,
                                   t.outcome.social_welfare, "truthful play differs", theta,
                                   t.announcements},
                                  keep);
            break;
          }
        }
        for (const PlayerOrder& order : orders) {
          const PlayTrace t = play(inst, pivotal, order, thm3, theta);
          if (t.outcome.decision != f) {
            v[kThm3Decision].fail({theta, 0, "order " + order.labels(), Rational(as_int(f)),
                                   Rational(as_int(t.outcome.decision)), "decision changed", theta,
                                   t.announcements},
                                  keep);
            break;
          }
        }
        for (const PlayerOrder& order : orders) {
          const PlayTrace t = play(inst, pivotal, order, thm3, theta);
          if (t.outcome.social_welfare < simultaneous.social_welfare) {
            v[kThm3Welfare].fail({theta, 0, "order " + order.labels(), t.outcome.social_welfare,
                                  simultaneous.social_welfare, "welfare below truthful play",
                                  t.announcements, theta},
                                 keep);
            break;
          }
        }
        for (int i = 1; i <= n; ++i) {
          TypeProfile a = theta;
          a[i - 1] = thm3[i](std::span<const Rational>(theta.data(), i - 1), theta[i - 1]);
          if (decide(inst, a) != f) {
            v[kThm3Stage].fail({theta, i, "announce " + a[i - 1].str(), Rational(as_int(f)),
                                Rational(as_int(decide(inst, a))), "stage announcement flips decision",
                                theta, a},
                               keep);
            break;
          }
        }
        {
          TypeProfile a = theta;
          a[n - 1] = thm5_last(std::span<const Rational>(theta.data(), n - 1), theta[n - 1]);
          const bool flip_case = sum(theta) == c && theta[n - 1] > inst.share();
          const Decision expected = flip_case ? Decision::kCancel : f;
          if (decide(inst, a) != expected) {
            v[kThm5Flip].fail({theta, n, "announce " + a[n - 1].str(), Rational(as_int(expected)),
                               Rational(as_int(decide(inst, a))), "unexpected last-mover decision",
                               theta, a},
                              keep);
          }
        }
        if (std::none_of(taxes.begin(), taxes.end(), [](const Rational& t) { return t.is_zero(); })) {
          v[kNotAllPivotal].fail({theta, 0, "", Rational(0), Rational(0), "every player is pivotal"},
                                 keep);
        }
      });
}

}  // namespace seqpivot
