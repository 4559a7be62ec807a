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

#include "seqpivot/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "seqpivot/grid.hpp"
#include "seqpivot/report.hpp"
#include "seqpivot/verification.hpp"

namespace seqpivot {
namespace {

struct RunConfig {
  std::string cost = "300";
  int players = 3;
  std::string types;
  std::string order;
  std::string strategy;
  std::string vector;
  std::string base;
  int steps = 6;
  std::string enrich;
  std::string relation = "utility";
  std::string tails = "critical";
  std::string mechanism;
  std::string format = "table";
  std::string out;
  std::size_t max_witnesses = 8;
  std::uint64_t resume = 0;
  bool progress = false;
  std::string suite;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty list item in '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<Rational> parse_values(const std::string& text) {
  std::vector<Rational> out;
  for (const std::string& s : split(text)) out.push_back(Rational::parse(s));
  return out;
}

PlayerOrder parse_order(const std::string& text, int n) {
  if (text.empty()) return PlayerOrder::identity(n);
  std::vector<int> seq;
  for (const std::string& s : split(text)) {
    if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'Z') {
      seq.push_back(s[0] - 'A' + 1);
    } else {
      try {
        seq.push_back(std::stoi(s));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad player in order: '" + s + "'");
      }
    }
  }
  if (static_cast<int>(seq.size()) != n) {
    throw std::invalid_argument("order lists " + std::to_string(seq.size()) + " players, expected " +
                                std::to_string(n));
  }
  return PlayerOrder(std::move(seq));
}

Strategy make_strategy(const std::string& id, const ProjectInstance& inst, int player) {
  if (id.rfind("const:", 0) == 0) return constant(inst, player, Rational::parse(id.substr(6)));
  return named_strategy(id, inst, player);
}

StrategyVector parse_vector(const std::string& text, const ProjectInstance& inst) {
  std::vector<std::string> ids = split(text);
  if (ids.size() == 1) ids.assign(inst.players(), ids.front());
  if (static_cast<int>(ids.size()) != inst.players()) {
    throw std::invalid_argument("strategy list has " + std::to_string(ids.size()) +
                                " entries, expected 1 or " + std::to_string(inst.players()));
  }
  std::vector<Strategy> v;
  for (int i = 1; i <= inst.players(); ++i) v.push_back(make_strategy(ids[i - 1], inst, i));
  return StrategyVector(std::move(v));
}

Mechanism parse_mechanism(const std::string& id) {
  if (id == "pivotal") return Mechanism::pivotal();
  if (id == "groves-h0") return Mechanism(GrovesSpec::zero_h());
  if (id == "zero-tax") return Mechanism::zero_tax();
  throw std::invalid_argument("unknown mechanism '" + id + "' (expected pivotal, groves-h0 or zero-tax)");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + cfg.out);
  file << text;
}

Json sweep_json(std::span<const PlayTrace> traces) {
  Json rows = Json::array();
  for (const PlayTrace& t : traces) {
    Json row = to_json(t);
    bool balanced = true;
    for (const Rational& tax : t.outcome.taxes) balanced = balanced && tax.is_zero();
    row["budget_balanced"] = balanced;
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_replay(const RunConfig& cfg, std::ostream& out) {
  bool all_match = true;
  std::string text;
  Json plays = Json::array();
  std::string csv = "name,match,social_welfare\n";
  for (const GoldenPlay& g : golden_plays()) {
    const PlayTrace trace = replay(g);
    const std::vector<std::string> diffs = golden_diff(g, trace);
    all_match = all_match && diffs.empty();
    text += g.name + "\n" + trace_table(trace) + (diffs.empty() ? "match\n" : "MISMATCH\n");
    for (const std::string& d : diffs) text += "  " + d + "\n";
    text += "\n";
    plays.push_back({{"name", g.name}, {"match", diffs.empty()}, {"diffs", diffs}, {"trace", to_json(trace)}});
    csv += g.name + "," + (diffs.empty() ? "1" : "0") + "," + trace.outcome.social_welfare.str() + "\n";
  }
  if (cfg.format == "json") {
    emit(cfg, Json{{"plays", plays}, {"holds", all_match}}.dump(2) + "\n", out);
  } else if (cfg.format == "csv") {
    emit(cfg, csv, out);
  } else {
    emit(cfg, text + (all_match ? "all tables match\n" : "golden mismatch\n"), out);
  }
  return all_match ? kExitOk : kExitFailure;
}

int cmd_play(const RunConfig& cfg, const ProjectInstance& inst, bool sweep, std::ostream& out) {
  if (cfg.types.empty()) throw std::invalid_argument("--types is required");
  const TypeProfile types = parse_values(cfg.types);
  validate_profile(inst, types);
  const StrategyVector vector = parse_vector(cfg.strategy.empty() ? "thm3" : cfg.strategy, inst);
  const Mechanism mechanism = parse_mechanism(cfg.mechanism.empty() ? "pivotal" : cfg.mechanism);
  if (sweep || cfg.order == "all") {
    if (inst.players() > kMaxSweepPlayers) {
      throw std::invalid_argument("sweep supports at most " + std::to_string(kMaxSweepPlayers) +
                                  " players");
    }
    const std::vector<PlayTrace> traces = sweep_orders(inst, mechanism, vector, types);
    if (cfg.format == "json") {
      emit(cfg, sweep_json(traces).dump(2) + "\n", out);
    } else if (cfg.format == "csv") {
      emit(cfg, sweep_csv(traces), out);
    } else {
      emit(cfg, sweep_table(traces), out);
    }
    return kExitOk;
  }
  const PlayTrace trace = play(inst, mechanism, parse_order(cfg.order, inst.players()), vector, types);
  if (cfg.format == "json") {
    emit(cfg, to_json(trace).dump(2) + "\n", out);
  } else if (cfg.format == "csv") {
    emit(cfg, trace_csv(trace), out);
  } else {
    emit(cfg, trace_table(trace), out);
  }
  return kExitOk;
}

struct SuiteResult {
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
};

Verdict invariance_verdict(const InvarianceReport& r, const std::string& name) {
  Verdict v;
  v.property = "groves-invariance:" + name;
  v.holds = r.agree;
  v.checked = r.under_a.checked + r.under_b.checked;
  if (!r.agree) {
    v.violations = 1;
    const Verdict& failing = r.under_a.holds ? r.under_b : r.under_a;
    if (const Witness* w = failing.witness()) v.witnesses.push_back(*w);
  }
  return v;
}

SuiteResult run_suite(const std::string& suite, const RunConfig& cfg, const Grid& grid,
                      const VerifyOptions& opts) {
  const ProjectInstance& inst = grid.instance;
  const int n = inst.players();
  SuiteResult r;
  auto ids_or = [](const std::string& text, const std::string& fallback) {
    return split(text.empty() ? fallback : text);
  };
  std::optional<OptSetCache> cache;
  auto opt_sets = [&]() -> const OptSetCache& {
    if (!cache) cache.emplace(grid, opts);
    return *cache;
  };

  auto optimal = [&](const std::vector<std::string>& ids) {
    for (const std::string& id : ids) {
      for (int i = 1; i <= n; ++i) r.verdicts.push_back(verify_optimal(make_strategy(id, inst, i), grid, opts));
    }
  };
  auto social = [&](const std::vector<std::string>& ids) {
    for (const std::string& id : ids) {
      for (int i = 1; i <= n; ++i) {
        r.verdicts.push_back(verify_socially_optimal(make_strategy(id, inst, i), grid, opt_sets()[i], opts));
      }
    }
  };
  auto compat = [&]() {
    for (Verdict& v : check_lemma_compat(opt_sets(), opts).clauses) r.verdicts.push_back(std::move(v));
  };
  auto ic = [&](const std::vector<std::string>& mechanisms) {
    for (const std::string& m : mechanisms) {
      VerifyOptions o = opts;
      o.mechanism = parse_mechanism(m);
      r.verdicts.push_back(verify_ic(grid, o));
    }
  };
  auto invariance = [&](const std::vector<std::string>& ids) {
    const Mechanism a = Mechanism::pivotal();
    const Mechanism b(GrovesSpec::zero_h());
    for (const std::string& id : ids) {
      for (int i = 1; i <= n; ++i) {
        const InvarianceReport rep = check_groves_invariance(make_strategy(id, inst, i), grid, a, b, opts);
        r.verdicts.push_back(invariance_verdict(rep, id + ":p" + std::to_string(i)));
        r.notes.push_back(id + ":p" + std::to_string(i) + " optimal under pivotal: " +
                          (rep.under_a.holds ? "yes" : "no") + ", under groves-h0: " +
                          (rep.under_b.holds ? "yes" : "no"));
      }
    }
  };
  auto nash = [&](const std::vector<std::string>& ids, const std::string& base_id) {
    for (const std::string& id : ids) {
      if (base_id.empty()) {
        const StrategyVector v = parse_vector(id, inst);
        r.verdicts.push_back(nash_check(v, standard_deviation_universe(grid, v), grid, opts));
      } else {
        const StrategyVector base = parse_vector(base_id, inst);
        const StrategyVector v = parse_vector(id, inst);
        r.verdicts.push_back(nash_check(v, standard_deviation_universe(grid, v), grid, opts, &base));
      }
    }
  };
  auto welfare = [&](const std::vector<std::string>& ids) {
    for (const std::string& id : ids) {
      r.verdicts.push_back(verify_welfare_maximality(parse_vector(id, inst), opt_sets(), opts));
    }
    if (!cfg.types.empty()) {
      const TypeProfile types = parse_values(cfg.types);
      const WelfarePath best = max_welfare_over_optimal(opt_sets(), types, opts);
      std::string path;
      for (const Rational& a : best.announcements) path += (path.empty() ? "" : ", ") + a.str();
      r.notes.push_back("max welfare over optimal paths at " + cfg.types + ": " +
                        best.social_welfare.str() + " via (" + path + ")");
    }
  };
  auto properties = [&]() {
    for (Verdict& v : property_suite(grid, opts)) r.verdicts.push_back(std::move(v));
    r.verdicts.push_back(verify_budget_balance_orders(grid, opts));
    r.verdicts.push_back(check_groves_spec(grid, GrovesSpec::pivotal(), opts));
    r.verdicts.push_back(check_groves_spec(grid, GrovesSpec::zero_h(), opts));
  };

  if (suite == "optimal") {
    optimal(ids_or(cfg.strategy, "thm3,thm5"));
  } else if (suite == "social") {
    social(ids_or(cfg.strategy, "thm5"));
  } else if (suite == "compat") {
    compat();
  } else if (suite == "ic") {
    ic(ids_or(cfg.mechanism, "pivotal"));
  } else if (suite == "invariance") {
    invariance(ids_or(cfg.strategy, "truth,thm3,thm5,greedy"));
  } else if (suite == "nash") {
    std::vector<std::string> ids;
    for (const std::string& id : ids_or(cfg.vector.empty() ? cfg.strategy : cfg.vector, "thm3,thm5")) ids.push_back(id);
    nash(ids, cfg.base);
  } else if (suite == "welfare-max") {
    welfare(ids_or(cfg.vector.empty() ? cfg.strategy : cfg.vector, "thm5"));
  } else if (suite == "properties") {
    properties();
  } else if (suite == "all") {
    optimal({"thm3", "thm5"});
    social({"thm5"});
    compat();
    ic({"pivotal", "groves-h0"});
    invariance({"truth", "thm3", "thm5", "greedy"});
    nash({"thm3", "thm5"}, "");
    nash({"truth"}, "thm3");
    nash({"truth"}, "thm5");
    welfare({"thm5"});
    r.verdicts.push_back(check_last_mover_welfare(welfare_maximizing(inst, n), opt_sets(), opts));
    properties();
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  return r;
}

int cmd_verify(const RunConfig& cfg, const ProjectInstance& inst, std::ostream& out, std::ostream& err) {
  Grid grid = build_grid(inst, cfg.steps);
  std::vector<Rational> extra;
  if (!cfg.enrich.empty()) extra = parse_values(cfg.enrich);
  if (!cfg.types.empty()) {
    const TypeProfile types = parse_values(cfg.types);
    validate_profile(inst, types);
    extra.insert(extra.end(), types.begin(), types.end());
  }
  grid = enrich(grid, extra);
  if (grid.warning) err << "warning: " << *grid.warning << "\n";
  grid.require_tractable(inst.players());

  VerifyOptions opts;
  opts.mechanism = parse_mechanism(cfg.mechanism.empty() || cfg.suite == "ic" ? "pivotal" : cfg.mechanism);
  if (cfg.tails != "grid" && cfg.tails != "critical") {
    throw std::invalid_argument("--tails must be grid or critical");
  }
  opts.tails = cfg.tails == "grid" ? TailDomain::kGrid : TailDomain::kGridAndCritical;
  if (cfg.relation != "valuation" && cfg.relation != "utility") {
    throw std::invalid_argument("--relation must be valuation or utility");
  }
  opts.basis = cfg.relation == "valuation" ? PreferenceBasis::kValuation : PreferenceBasis::kFinalUtility;
  opts.max_witnesses = cfg.max_witnesses;
  opts.start_rank = cfg.resume;
  if (cfg.progress) {
    opts.progress = [&err](std::uint64_t done, std::uint64_t total) {
      err << "progress " << done << "/" << total << "\n";
    };
  }

  const SuiteResult r = run_suite(cfg.suite, cfg, grid, opts);
  bool holds = true;
  for (const Verdict& v : r.verdicts) holds = holds && v.holds;

  if (cfg.format == "json") {
    Json verdicts = Json::array();
    for (const Verdict& v : r.verdicts) verdicts.push_back(to_json(v));
    Json doc = {{"suite", cfg.suite},
                {"cost", to_json(inst.cost())},
                {"players", inst.players()},
                {"steps", cfg.steps},
                {"points", profile_to_json(grid.points)},
                {"tails", to_string(opts.tails)},
                {"relation", to_string(opts.basis)},
                {"verdicts", verdicts},
                {"notes", r.notes},
                {"holds", holds}};
    emit(cfg, doc.dump(2) + "\n", out);
  } else if (cfg.format == "csv") {
    emit(cfg, verdicts_csv(r.verdicts), out);
  } else {
    std::string text;
    for (const Verdict& v : r.verdicts) text += verdict_line(v) + "\n";
    for (const std::string& note : r.notes) text += "note: " + note + "\n";
    text += holds ? "all properties hold\n" : "some properties fail\n";
    emit(cfg, text, out);
  }
  return holds ? kExitOk : kExitFailure;
}

}  // namespace

const std::vector<GoldenPlay>& golden_plays() {
  static const std::vector<GoldenPlay> plays = {
      {"table-1 pivotal mechanism",
       300, {110, 80, 110}, {1, 2, 3}, {"truth"},
       {110, 80, 110}, {-10, 0, -10}, {0, -20, 0}, -20},
      {"table-2 sequential pivotal, deficit-reducing strategy",
       300, {110, 80, 110}, {1, 2, 3}, {"thm3"},
       {110, 80, 300}, {0, 0, -10}, {10, -20, 0}, -10},
      {"table-3 sequential pivotal, welfare-maximizing strategy",
       300, {60, 70, 250}, {1, 2, 3}, {"thm5"},
       {60, 70, 300}, {0, 0, -70}, {-40, -30, 80}, 10},
      {"example-2 player B announces 300",
       300, {60, 70, 250}, {1, 2, 3}, {"thm5", "const:300", "thm5"},
       {60, 300, 300}, {0, 0, 0}, {-40, -30, 150}, 80},
  };
  return plays;
}

PlayTrace replay(const GoldenPlay& g) {
  const ProjectInstance inst(static_cast<int>(g.true_types.size()), g.cost);
  std::string ids;
  for (const std::string& s : g.strategies) ids += (ids.empty() ? "" : ",") + s;
  return play(inst, Mechanism::pivotal(), PlayerOrder(g.order), parse_vector(ids, inst), g.true_types);
}

std::vector<std::string> golden_diff(const GoldenPlay& g, const PlayTrace& t) {
  std::vector<std::string> diffs;
  auto compare = [&](const std::string& field, const std::vector<Rational>& want,
                     const std::vector<Rational>& got) {
    if (want.size() != got.size()) {
      diffs.push_back(field + ": expected " + std::to_string(want.size()) + " entries, got " +
                      std::to_string(got.size()));
      return;
    }
    for (std::size_t k = 0; k < want.size(); ++k) {
      if (want[k] != got[k]) {
        diffs.push_back(field + "[" + player_label(static_cast<int>(k + 1)) + "]: expected " +
                        want[k].str() + ", got " + got[k].str());
      }
    }
  };
  compare("submitted", g.announcements, t.announcements);
  compare("tax", g.taxes, t.outcome.taxes);
  compare("utility", g.utilities, t.outcome.utilities);
  if (g.social_welfare != t.outcome.social_welfare) {
    diffs.push_back("social welfare: expected " + g.social_welfare.str() + ", got " +
                    t.outcome.social_welfare.str());
  }
  return diffs;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate and verify sequential pivotal mechanisms on the public project problem",
               "seqpivot"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--cost", cfg.cost, "Project cost c (integer, decimal or p/q)")->capture_default_str();
  CLI::Option* players = app.add_option("--players", cfg.players, "Number of players n")->capture_default_str();
  app.add_option("--types", cfg.types, "Comma-separated true types");
  app.add_option("--order", cfg.order, "Player order, e.g. 1,3,2 or A,C,B, or 'all'");
  app.add_option("--strategy", cfg.strategy,
                 "Strategy id (truth, thm3, thm5, greedy, const:x), or one per player");
  app.add_option("--vector", cfg.vector, "Strategy vector ids for nash and welfare-max");
  app.add_option("--base", cfg.base, "Base vector for the composed (starred) Nash relation");
  app.add_option("--steps", cfg.steps, "Grid steps m")->capture_default_str();
  app.add_option("--enrich", cfg.enrich, "Extra grid values, comma-separated");
  app.add_option("--relation", cfg.relation, "Dominance basis: valuation or utility")->capture_default_str();
  app.add_option("--tails", cfg.tails, "Optimality tails: grid or critical")->capture_default_str();
  app.add_option("--mechanism", cfg.mechanism, "pivotal, groves-h0 or zero-tax");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write the report to this path");
  app.add_option("--max-witnesses", cfg.max_witnesses, "Witnesses kept per property")->capture_default_str();
  app.add_option("--resume", cfg.resume, "Skip units below this rank");
  app.add_flag("--progress", cfg.progress, "Report progress on stderr");

  CLI::App* replay_cmd = app.add_subcommand("replay-tables", "Replay the reference tables and diff them");
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Play one profile in one order (or all)");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Play one profile in every order");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run verification suites on a grid");
  verify_cmd->add_option("suite", cfg.suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"optimal", "social", "compat", "ic", "nash", "invariance",
                             "welfare-max", "properties", "all"}));
  for (CLI::App* sub : {replay_cmd, simulate_cmd, sweep_cmd, verify_cmd}) sub->fallthrough();

  std::vector<const char*> argv{"seqpivot"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    int n = cfg.players;
    if (!cfg.types.empty() && players->count() == 0) n = static_cast<int>(split(cfg.types).size());
    const ProjectInstance inst(n, Rational::parse(cfg.cost));
    if (replay_cmd->parsed()) return cmd_replay(cfg, out);
    if (simulate_cmd->parsed()) return cmd_play(cfg, inst, false, out);
    if (sweep_cmd->parsed()) return cmd_play(cfg, inst, true, out);
    return cmd_verify(cfg, inst, out, err);
  } catch (const GridTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace seqpivot
