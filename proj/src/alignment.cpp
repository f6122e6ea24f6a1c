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

#include "mixsemble/alignment.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "mixsemble/metrics.hpp"

namespace mixsemble {

namespace {

// Kuhn-Munkres with potentials, O(n^3), minimizing cost. Row and column
// indices are 1-based internally.
std::int64_t hungarian_min(const std::vector<std::int64_t>& cost, int n, std::vector<int>& assignment) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::int64_t> u(un + 1, 0), v(un + 1, 0);
  std::vector<std::size_t> p(un + 1, 0), way(un + 1, 0);
  for (std::size_t i = 1; i <= un; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(un + 1, kInf);
    std::vector<char> used(un + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= un; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[(i0 - 1) * un + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= un; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  assignment.assign(un, -1);
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= un; ++j) {
    assignment[p[j] - 1] = static_cast<int>(j - 1);
    total += cost[(p[j] - 1) * un + (j - 1)];
  }
  return total;
}

// Optimal total weight of the sub-problem restricted to the given rows/cols.
std::int64_t best_weight(const std::vector<std::int64_t>& weights, int n,
                         const std::vector<int>& rows, const std::vector<int>& cols) {
  const auto m = static_cast<int>(rows.size());
  if (m == 0) return 0;
  std::int64_t max_w = 0;
  for (int r : rows) {
    for (int c : cols) max_w = std::max(max_w, weights[static_cast<std::size_t>(r * n + c)]);
  }
  std::vector<std::int64_t> cost(static_cast<std::size_t>(m * m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      cost[static_cast<std::size_t>(a * m + b)] =
          max_w - weights[static_cast<std::size_t>(rows[static_cast<std::size_t>(a)] * n +
                                                   cols[static_cast<std::size_t>(b)])];
    }
  }
  std::vector<int> assignment;
  return static_cast<std::int64_t>(m) * max_w - hungarian_min(cost, m, assignment);
}

}  // namespace

LabelPermutation::LabelPermutation(std::vector<int> perm) : perm_(std::move(perm)) {
  std::vector<char> seen(perm_.size(), 0);
  for (int p : perm_) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm_.size() || seen[static_cast<std::size_t>(p)]) {
      throw Error(ErrorCode::OutOfRangeLabel, "not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
}

LabelPermutation LabelPermutation::identity(int n_clusters) {
  std::vector<int> perm(static_cast<std::size_t>(n_clusters));
  std::iota(perm.begin(), perm.end(), 0);
  return LabelPermutation(std::move(perm));
}

Partition LabelPermutation::apply(const Partition& p) const {
  if (p.n_clusters() != size()) {
    throw Error(ErrorCode::ClusterCountMismatch, "permutation size differs from partition G");
  }
  std::vector<int> labels(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) labels[i] = (*this)[p[i]];
  return Partition(std::move(labels), p.n_clusters());
}

std::vector<int> max_weight_assignment(const std::vector<std::int64_t>& weights, int n) {
  std::vector<int> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<int> cols = rows;
  const std::int64_t optimum = best_weight(weights, n, rows, cols);

  // Fix rows in order, taking the smallest column that still admits an
  // optimal completion. Integer weights make the comparison exact.
  std::vector<int> result(static_cast<std::size_t>(n), -1);
  std::int64_t fixed = 0;
  std::vector<int> free_rows(rows.begin() + 1, rows.end());
  for (int r = 0; r < n; ++r) {
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      const int c = cols[ci];
      std::vector<int> rest_cols = cols;
      rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(ci));
      const std::int64_t w = weights[static_cast<std::size_t>(r * n + c)];
      if (fixed + w + best_weight(weights, n, free_rows, rest_cols) == optimum) {
        result[static_cast<std::size_t>(r)] = c;
        fixed += w;
        cols = std::move(rest_cols);
        break;
      }
    }
    if (!free_rows.empty()) free_rows.erase(free_rows.begin());
  }
  return result;
}

Alignment best_permutation(const Partition& reference, const Partition& other) {
  if (reference.size() != other.size()) {
    throw Error(ErrorCode::LengthMismatch, "partitions differ in length");
  }
  if (reference.n_clusters() != other.n_clusters()) {
    throw Error(ErrorCode::ClusterCountMismatch,
                "reference has G=" + std::to_string(reference.n_clusters()) + ", other has G=" +
                    std::to_string(other.n_clusters()));
  }
  // Rows: other's labels; columns: reference labels.
  const auto table = contingency_table(other, reference);
  std::vector<int> perm = max_weight_assignment(table.counts, table.rows);
  std::int64_t agreement = 0;
  for (int h = 0; h < table.rows; ++h) agreement += table(h, perm[static_cast<std::size_t>(h)]);
  return {LabelPermutation(std::move(perm)), agreement};
}

LabelMatrix align_ensemble(const LabelMatrix& matrix, std::size_t reference_column) {
  if (reference_column >= matrix.n_observers()) {
    throw Error(ErrorCode::BadColumnIndex, "reference column " + std::to_string(reference_column) +
                                               " out of range for K=" +
                                               std::to_string(matrix.n_observers()));
  }
  const Partition reference = matrix.column(reference_column);
  std::vector<Partition> columns;
  columns.reserve(matrix.n_observers());
  for (std::size_t k = 0; k < matrix.n_observers(); ++k) {
    Partition col = matrix.column(k);
    if (k == reference_column) {
      columns.push_back(std::move(col));
    } else {
      columns.push_back(best_permutation(reference, col).permutation.apply(col));
    }
  }
  return LabelMatrix::from_columns(columns);
}

}  // namespace mixsemble
