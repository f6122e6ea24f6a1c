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

#include "mixsemble/core_types.hpp"

namespace mixsemble {

/// Per-item plurality label of an already aligned matrix (see align_ensemble).
/// Ties go to the lowest label.
Partition majority_vote(const LabelMatrix& aligned);

}  // namespace mixsemble
