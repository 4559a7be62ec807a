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

// Integer reference implementations used as independent oracles. Every
// quantity is scaled by n so that the cost share c/n stays integral.
#ifndef SEQPIVOT_TESTS_ORACLE_HPP_
#define SEQPIVOT_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "seqpivot/rational.hpp"

namespace oracle {

using Int = std::int64_t;
using Vec = std::vector<Int>;

struct Problem {
  Int n;
  Int c;
};

inline Int total(const Vec& v) { return std::accumulate(v.begin(), v.end(), Int{0}); }

inline int decide(const Problem& p, const Vec& reports) { return total(reports) >= p.c ? 1 : 0; }

// n * v_j(d, theta_j)
inline Int scaled_value(const Problem& p, int d, Int theta) { return d * (p.n * theta - p.c); }

// n * t_i by the Groves formula with h_i = -max_d sum_{j!=i} v_j(d, theta_j),
// maximizing over both decisions by enumeration.
inline Vec scaled_clarke(const Problem& p, const Vec& reports) {
  const int f = decide(p, reports);
  Vec out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Int others_at_f = 0;
    Int best = 0;
    for (int d = 0; d <= 1; ++d) {
      Int s = 0;
      for (std::size_t j = 0; j < reports.size(); ++j) {
        if (j != i) s += scaled_value(p, d, reports[j]);
      }
      if (d == f) others_at_f = s;
      best = d == 0 ? s : std::max(best, s);
    }
    out.push_back(others_at_f - best);
  }
  return out;
}

// n * t_i with h = 0.
inline Vec scaled_groves_h0(const Problem& p, const Vec& reports) {
  const int f = decide(p, reports);
  Vec out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < reports.size(); ++j) {
      if (j != i) s += scaled_value(p, f, reports[j]);
    }
    out.push_back(s);
  }
  return out;
}

// n * u_i under the Clarke tax.
inline Int scaled_utility(const Problem& p, const Vec& reports, Int true_type, std::size_t i) {
  return scaled_value(p, decide(p, reports), true_type) + scaled_clarke(p, reports)[i];
}

inline Int scaled_welfare(const Problem& p, const Vec& reports, const Vec& truth) {
  Int s = 0;
  const Vec taxes = scaled_clarke(p, reports);
  for (std::size_t i = 0; i < truth.size(); ++i) s += scaled_value(p, decide(p, reports), truth[i]) + taxes[i];
  return s;
}

// Every tuple of `length` values from `values`, in lexicographic order.
inline std::vector<Vec> tuples(const Vec& values, int length) {
  std::vector<Vec> out{{}};
  for (int k = 0; k < length; ++k) {
    std::vector<Vec> next;
    for (const Vec& t : out) {
      for (Int v : values) {
        Vec u = t;
        u.push_back(v);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Optimal announcements among `candidates` for the player after `prefix`,
// quantifying over every tail built from `tail_values`. Plain double loop.
inline Vec optimal_members(const Problem& p, const Vec& prefix, Int own, const Vec& candidates,
                           const Vec& tail_values) {
  const int length = static_cast<int>(p.n) - static_cast<int>(prefix.size()) - 1;
  const std::size_t i = prefix.size();
  Vec out;
  const std::vector<Vec> tails = tuples(tail_values, length);
  for (Int a : candidates) {
    bool optimal = true;
    for (const Vec& tail : tails) {
      Vec with_a = prefix;
      with_a.push_back(a);
      with_a.insert(with_a.end(), tail.begin(), tail.end());
      const Int ua = scaled_utility(p, with_a, own, i);
      for (Int b : candidates) {
        Vec with_b = with_a;
        with_b[i] = b;
        if (scaled_utility(p, with_b, own, i) > ua) {
          optimal = false;
          break;
        }
      }
      if (!optimal) break;
    }
    if (optimal) out.push_back(a);
  }
  return out;
}

inline Vec range(Int from, Int to, Int step) {
  Vec out;
  for (Int v = from; v <= to; v += step) out.push_back(v);
  return out;
}

inline std::vector<seqpivot::Rational> rationals(const Vec& v) {
  return std::vector<seqpivot::Rational>(v.begin(), v.end());
}

}  // namespace oracle

#endif  // SEQPIVOT_TESTS_ORACLE_HPP_
