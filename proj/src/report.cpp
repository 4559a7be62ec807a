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

#include "seqpivot/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace seqpivot {
namespace {

std::string joined(std::span<const Rational> values, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) s += sep;
    s += values[k].str();
  }
  return s;
}

bool all_zero(std::span<const Rational> values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v.is_zero(); });
}

std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      if (k) line += " | ";
      line += rows[r][k];
      if (k + 1 < rows[r].size()) line.append(width[k] - rows[r][k].size(), ' ');
    }
    out += line + "\n";
    if (r == 0) {
      std::string rule;
      for (std::size_t k = 0; k < width.size(); ++k) {
        if (k) rule += "-+-";
        rule.append(width[k], '-');
      }
      out += rule + "\n";
    }
  }
  return out;
}

}  // namespace

Json to_json(const Rational& value) { return value.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

Json profile_to_json(std::span<const Rational> values) {
  Json a = Json::array();
  for (const Rational& v : values) a.push_back(to_json(v));
  return a;
}

std::vector<Rational> profile_from_json(const Json& j) {
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json to_json(const PlayTrace& trace) {
  Json stages = Json::array();
  for (const Stage& s : trace.stages) {
    stages.push_back({{"player", s.player},
                      {"prefix", profile_to_json(s.prefix)},
                      {"announcement", to_json(s.announcement)}});
  }
  return {{"order", trace.order.sequence()},
          {"labels", trace.order.labels()},
          {"true_types", profile_to_json(trace.true_types)},
          {"announcements", profile_to_json(trace.announcements)},
          {"stages", stages},
          {"decision", as_int(trace.outcome.decision)},
          {"taxes", profile_to_json(trace.outcome.taxes)},
          {"utilities", profile_to_json(trace.outcome.utilities)},
          {"social_welfare", to_json(trace.outcome.social_welfare)}};
}

PlayTrace trace_from_json(const Json& j) {
  PlayTrace t;
  t.order = PlayerOrder(j.at("order").get<std::vector<int>>());
  t.true_types = profile_from_json(j.at("true_types"));
  t.announcements = profile_from_json(j.at("announcements"));
  for (const Json& s : j.at("stages")) {
    t.stages.push_back(Stage{s.at("player").get<int>(), profile_from_json(s.at("prefix")),
                             rational_from_json(s.at("announcement"))});
  }
  const int d = j.at("decision").get<int>();
  if (d != 0 && d != 1) throw std::invalid_argument("decision must be 0 or 1");
  t.outcome.decision = static_cast<Decision>(d);
  t.outcome.taxes = profile_from_json(j.at("taxes"));
  t.outcome.utilities = profile_from_json(j.at("utilities"));
  t.outcome.social_welfare = rational_from_json(j.at("social_welfare"));
  return t;
}

Json to_json(const Witness& w) {
  return {{"profile", profile_to_json(w.profile)},
          {"player", w.player},
          {"deviation", w.deviation},
          {"lhs", to_json(w.lhs)},
          {"rhs", to_json(w.rhs)},
          {"detail", w.detail},
          {"announced", profile_to_json(w.announced)},
          {"alternative", profile_to_json(w.alternative)}};
}

Witness witness_from_json(const Json& j) {
  return Witness{profile_from_json(j.at("profile")),
                 j.at("player").get<int>(),
                 j.at("deviation").get<std::string>(),
                 rational_from_json(j.at("lhs")),
                 rational_from_json(j.at("rhs")),
                 j.value("detail", std::string()),
                 profile_from_json(j.value("announced", Json::array())),
                 profile_from_json(j.value("alternative", Json::array()))};
}

Json to_json(const Verdict& v) {
  Json witnesses = Json::array();
  for (const Witness& w : v.witnesses) witnesses.push_back(to_json(w));
  return {{"property", v.property},
          {"holds", v.holds},
          {"checked", v.checked},
          {"violations", v.violations},
          {"witness", v.witness() ? to_json(*v.witness()) : Json(nullptr)},
          {"witnesses", witnesses}};
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.property = j.at("property").get<std::string>();
  v.holds = j.at("holds").get<bool>();
  v.checked = j.value("checked", std::size_t{0});
  v.violations = j.value("violations", std::size_t{0});
  if (j.contains("witnesses")) {
    for (const Json& w : j.at("witnesses")) v.witnesses.push_back(witness_from_json(w));
  } else if (j.contains("witness") && !j.at("witness").is_null()) {
    v.witnesses.push_back(witness_from_json(j.at("witness")));
  }
  return v;
}

Json to_json(const StrategyTable& table) {
  Json out = Json::object();
  for (const auto& [input, announcement] : table) {
    out[joined(input.prefix, ",") + "|" + input.own.str()] = to_json(announcement);
  }
  return out;
}

StrategyTable strategy_table_from_json(const Json& j) {
  StrategyTable table;
  for (const auto& [key, value] : j.items()) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("table key without '|': " + key);
    StrategyInput input;
    std::stringstream prefix(key.substr(0, bar));
    for (std::string item; std::getline(prefix, item, ',');) input.prefix.push_back(Rational::parse(item));
    input.own = Rational::parse(key.substr(bar + 1));
    table.emplace(std::move(input), rational_from_json(value));
  }
  return table;
}

std::string trace_csv(const PlayTrace& t) {
  std::string out = "player,label,type,submitted,tax,utility\n";
  for (std::size_t i = 0; i < t.true_types.size(); ++i) {
    const int p = static_cast<int>(i + 1);
    out += std::to_string(p) + "," + player_label(p) + "," + t.true_types[i].str() + "," +
           t.announcements[i].str() + "," + t.outcome.taxes[i].str() + "," +
           t.outcome.utilities[i].str() + "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const PlayTrace> traces) {
  std::string out = "order,announcements,taxes,decision,social_welfare,budget_balanced\n";
  for (const PlayTrace& t : traces) {
    std::string order;
    for (int k = 0; k < t.order.size(); ++k) order += (k ? ";" : "") + std::to_string(t.order[k]);
    out += order + "," + joined(t.announcements, ";") + "," + joined(t.outcome.taxes, ";") + "," +
           std::to_string(as_int(t.outcome.decision)) + "," + t.outcome.social_welfare.str() + "," +
           (all_zero(t.outcome.taxes) ? "1" : "0") + "\n";
  }
  return out;
}

std::string verdicts_csv(std::span<const Verdict> verdicts) {
  std::string out = "property,holds,checked,violations,player,profile,deviation,lhs,rhs\n";
  for (const Verdict& v : verdicts) {
    out += v.property + "," + (v.holds ? "1" : "0") + "," + std::to_string(v.checked) + "," +
           std::to_string(v.violations);
    if (const Witness* w = v.witness()) {
      std::string deviation = w->deviation;
      std::replace(deviation.begin(), deviation.end(), ',', ';');
      out += "," + std::to_string(w->player) + "," + joined(w->profile, ";") + "," + deviation +
             "," + w->lhs.str() + "," + w->rhs.str();
    } else {
      out += ",,,,,";
    }
    out += "\n";
  }
  return out;
}

std::string trace_table(const PlayTrace& t) {
  std::vector<std::vector<std::string>> rows = {{"player", "type", "submitted type", "tax", "u_i"}};
  for (int stage = 0; stage < t.order.size(); ++stage) {
    const int p = t.order[stage];
    rows.push_back({player_label(p), t.true_types[p - 1].str(), t.announcements[p - 1].str(),
                    t.outcome.taxes[p - 1].str(), t.outcome.utilities[p - 1].str()});
  }
  return "order " + t.order.labels() + "\n" + render(rows) + "decision " +
         std::to_string(as_int(t.outcome.decision)) + ", social welfare " +
         t.outcome.social_welfare.str() + "\n";
}

std::string sweep_table(std::span<const PlayTrace> traces) {
  std::vector<std::vector<std::string>> rows = {
      {"order", "submitted", "taxes", "decision", "SW", "balanced"}};
  for (const PlayTrace& t : traces) {
    rows.push_back({t.order.labels(), joined(t.announcements, ", "), joined(t.outcome.taxes, ", "),
                    std::to_string(as_int(t.outcome.decision)), t.outcome.social_welfare.str(),
                    all_zero(t.outcome.taxes) ? "yes" : "no"});
  }
  return render(rows);
}

std::string verdict_line(const Verdict& v) {
  std::ostringstream os;
  os << (v.holds ? "PASS " : "FAIL ") << v.property << " (checked " << v.checked;
  if (!v.holds) os << ", violations " << v.violations;
  os << ")";
  if (const Witness* w = v.witness()) {
    os << "\n  witness: profile (" << joined(w->profile, ", ") << ")";
    if (w->player) os << ", player " << player_label(w->player);
    if (!w->deviation.empty()) os << ", " << w->deviation;
    os << ": " << w->lhs.str() << " vs " << w->rhs.str();
    if (!w->detail.empty()) os << " [" << w->detail << "]";
  }
  return os.str();
}

}  // namespace seqpivot
