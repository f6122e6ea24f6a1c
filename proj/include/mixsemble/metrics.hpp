// Copyright 2026 The mixsemble Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "mixsemble/core_types.hpp"

namespace mixsemble {

struct ContingencyTable {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> counts;  // rows x cols, row-major
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  std::int64_t operator()(int u, int v) const noexcept {
    return counts[static_cast<std::size_t>(u) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(v)];
  }
};

/// counts(u, v) = #{i : a_i = u and b_i = v}. Dimensions follow each partition's G.
ContingencyTable contingency_table(const Partition& a, const Partition& b);

/// Hubert-Arabie adjusted Rand index in pair-counting form.
///
/// When the expected index equals the maximum index (both partitions a single
/// cluster, or both all singletons) the ratio is undefined; the result is then
/// 1.0 if the partitions agree up to relabeling and 0.0 otherwise.
double adjusted_rand_index(const Partition& a, const Partition& b);

/// True when a and b induce the same co-membership relation.
bool equal_up_to_relabeling(const Partition& a, const Partition& b);

}  // namespace mixsemble
