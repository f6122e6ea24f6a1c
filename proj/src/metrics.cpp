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

#include "mixsemble/metrics.hpp"

#include <string>

namespace mixsemble {

namespace {

// Exact in 64-bit for any n below ~4e9; sums stay exact so the index is
// bitwise symmetric in its arguments.
std::int64_t pairs(std::int64_t n) { return n * (n - 1) / 2; }

void require_same_length(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "partitions have " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()) + " items");
  }
}

}  // namespace

ContingencyTable contingency_table(const Partition& a, const Partition& b) {
  require_same_length(a, b);
  ContingencyTable t;
  t.rows = a.n_clusters();
  t.cols = b.n_clusters();
  t.counts.assign(static_cast<std::size_t>(t.rows) * static_cast<std::size_t>(t.cols), 0);
  t.row_sums.assign(static_cast<std::size_t>(t.rows), 0);
  t.col_sums.assign(static_cast<std::size_t>(t.cols), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto u = static_cast<std::size_t>(a[i]);
    const auto v = static_cast<std::size_t>(b[i]);
    ++t.counts[u * static_cast<std::size_t>(t.cols) + v];
    ++t.row_sums[u];
    ++t.col_sums[v];
  }
  t.total = static_cast<std::int64_t>(a.size());
  return t;
}

bool equal_up_to_relabeling(const Partition& a, const Partition& b) {
  const auto t = contingency_table(a, b);
  // Same co-membership iff every non-empty row and column has exactly one non-zero cell.
  std::vector<int> row_nonzero(static_cast<std::size_t>(t.rows), 0);
  std::vector<int> col_nonzero(static_cast<std::size_t>(t.cols), 0);
  for (int u = 0; u < t.rows; ++u) {
    for (int v = 0; v < t.cols; ++v) {
      if (t(u, v) > 0) {
        ++row_nonzero[static_cast<std::size_t>(u)];
        ++col_nonzero[static_cast<std::size_t>(v)];
      }
    }
  }
  for (int c : row_nonzero) {
    if (c > 1) return false;
  }
  for (int c : col_nonzero) {
    if (c > 1) return false;
  }
  return true;
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
  require_same_length(a, b);
  if (a.size() < 2) throw Error(ErrorCode::TooFewItems, "ARI needs at least two items");

  const auto t = contingency_table(a, b);
  std::int64_t index = 0;
  for (std::int64_t c : t.counts) index += pairs(c);
  std::int64_t sum_a = 0;
  for (std::int64_t c : t.row_sums) sum_a += pairs(c);
  std::int64_t sum_b = 0;
  for (std::int64_t c : t.col_sums) sum_b += pairs(c);

  const double expected =
      static_cast<double>(sum_a) * static_cast<double>(sum_b) / static_cast<double>(pairs(t.total));
  const double max_index = 0.5 * static_cast<double>(sum_a + sum_b);
  const double denom = max_index - expected;
  if (denom == 0.0) return equal_up_to_relabeling(a, b) ? 1.0 : 0.0;
  return (static_cast<double>(index) - expected) / denom;
}

}  // namespace mixsemble
