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

#include "mixsemble/vote.hpp"

#include <algorithm>
#include <vector>

namespace mixsemble {

Partition majority_vote(const LabelMatrix& aligned) {
  const auto G = static_cast<std::size_t>(aligned.n_clusters());
  std::vector<int> labels(aligned.n_items());
  std::vector<std::size_t> votes(G);
  for (std::size_t i = 0; i < aligned.n_items(); ++i) {
    std::fill(votes.begin(), votes.end(), 0);
    for (int label : aligned.row(i)) ++votes[static_cast<std::size_t>(label)];
    std::size_t best = 0;
    for (std::size_t g = 1; g < G; ++g) {
      if (votes[g] > votes[best]) best = g;
    }
    labels[i] = static_cast<int>(best);
  }
  return Partition(std::move(labels), aligned.n_clusters());
}

}  // namespace mixsemble
