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

/// Bijection on [0, G). perm[h] is the reference label assigned to label h of
/// the partition being aligned.
class LabelPermutation {
 public:
  explicit LabelPermutation(std::vector<int> perm);
  static LabelPermutation identity(int n_clusters);

  int size() const noexcept { return static_cast<int>(perm_.size()); }
  int operator[](int h) const noexcept { return perm_[static_cast<std::size_t>(h)]; }
  const std::vector<int>& values() const noexcept { return perm_; }

  Partition apply(const Partition& p) const;

  friend bool operator==(const LabelPermutation&, const LabelPermutation&) = default;

 private:
  std::vector<int> perm_;
};

struct Alignment {
  LabelPermutation permutation;
  std::int64_t agreement;
};

/// Maximum-weight perfect matching on a square integer weight matrix
/// (row-major, n x n). Returns column assigned to each row; among all optimal
/// assignments the lexicographically smallest one is chosen.
std::vector<int> max_weight_assignment(const std::vector<std::int64_t>& weights, int n);

/// Permutation of other's labels maximizing #{i : reference_i == perm(other_i)}.
Alignment best_permutation(const Partition& reference, const Partition& other);

/// Relabels every column by its best permutation against the reference column.
LabelMatrix align_ensemble(const LabelMatrix& matrix, std::size_t reference_column = 0);

}  // namespace mixsemble
