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

#include "seqpivot/grid.hpp"

#include <algorithm>

namespace seqpivot {

bool Grid::contains(const Rational& value) const {
  return std::binary_search(points.begin(), points.end(), value);
}

std::uint64_t Grid::tuple_count(int length) const {
  std::uint64_t count = 1;
  for (int k = 0; k < length; ++k) {
    count *= points.size();
    if (count > kMaxProfiles) return kMaxProfiles + 1;
  }
  return count;
}

std::vector<Rational> Grid::tuple_at(std::uint64_t rank, int length) const {
  std::vector<Rational> out(length);
  const std::uint64_t base = points.size();
  for (int k = length - 1; k >= 0; --k) {
    out[k] = points[rank % base];
    rank /= base;
  }
  return out;
}

void Grid::require_tractable(int length) const {
  if (tuple_count(length) > kMaxProfiles) {
    throw GridTooLarge(std::to_string(points.size()) + "^" + std::to_string(length) +
                       " profiles exceed the limit of " + std::to_string(kMaxProfiles));
  }
}

std::vector<TypeProfile> Grid::all_profiles() const {
  require_tractable(instance.players());
  std::vector<TypeProfile> out;
  const std::uint64_t count = profile_count();
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(profile_at(r));
  return out;
}

Grid build_grid(const ProjectInstance& instance, int steps) {
  if (steps < 1) throw std::invalid_argument("grid steps must be at least 1");
  Grid grid{instance, steps, {}, std::nullopt};
  for (int k = 0; k <= steps; ++k) {
    grid.points.push_back(instance.cost() * Rational(k, steps));
  }
  if (steps % instance.players() != 0) {
    grid.warning = "grid steps " + std::to_string(steps) + " not divisible by n = " +
                   std::to_string(instance.players()) + "; the cost share is not a grid point";
  }
  return grid;
}

Grid enrich(const Grid& grid, std::span<const Rational> extra) {
  Grid out = grid;
  for (const Rational& x : extra) {
    if (!grid.instance.admissible(x)) {
      throw std::domain_error("grid value " + x.str() + " outside [0, c]");
    }
    out.points.push_back(x);
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  if (out.warning && out.contains(out.instance.share())) out.warning.reset();
  return out;
}

}  // namespace seqpivot
