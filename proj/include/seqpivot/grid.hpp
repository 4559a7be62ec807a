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

#ifndef SEQPIVOT_GRID_HPP_
#define SEQPIVOT_GRID_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpivot/model.hpp"

namespace seqpivot {

// Enumerations larger than this many profiles are refused.
inline constexpr std::uint64_t kMaxProfiles = 10'000'000;

class GridTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A finite set of type values in [0, c]: the uniform points {0, c/m, ..., c},
// optionally enriched with extra exact values. Points are sorted and unique.
struct Grid {
  ProjectInstance instance;
  int steps = 1;
  std::vector<Rational> points;
  // Set when n does not divide m, so c/n is not a uniform point.
  std::optional<std::string> warning;

  bool contains(const Rational& value) const;

  // |points|^length, or kMaxProfiles + 1 when that would be exceeded.
  std::uint64_t tuple_count(int length) const;
  std::uint64_t profile_count() const { return tuple_count(instance.players()); }

  // The tuple of `length` points with lexicographic rank `rank`.
  std::vector<Rational> tuple_at(std::uint64_t rank, int length) const;
  TypeProfile profile_at(std::uint64_t rank) const { return tuple_at(rank, instance.players()); }

  // Throws GridTooLarge when |points|^length exceeds kMaxProfiles.
  void require_tractable(int length) const;

  std::vector<TypeProfile> all_profiles() const;
};

// Throws std::invalid_argument for m < 1.
Grid build_grid(const ProjectInstance& instance, int steps);

// Adds `extra` to the grid. Throws std::domain_error for values outside [0, c].
Grid enrich(const Grid& grid, std::span<const Rational> extra);

}  // namespace seqpivot

#endif  // SEQPIVOT_GRID_HPP_
