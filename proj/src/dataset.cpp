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

#include "mixsemble/dataset.hpp"

namespace mixsemble {

void Dataset::validate() const {
  if (features.rows() == 0 || features.cols() == 0) {
    throw Error(ErrorCode::EmptyInput, "dataset has no rows or no columns");
  }
  if (!features.allFinite()) throw Error(ErrorCode::NonFinite, "dataset has non-finite entries");
  if (truth && truth->size() != n_items()) {
    throw Error(ErrorCode::LengthMismatch, "truth length differs from row count");
  }
  if (!column_names.empty() && column_names.size() != n_features()) {
    throw Error(ErrorCode::LengthMismatch, "column names do not match feature count");
  }
}

}  // namespace mixsemble
