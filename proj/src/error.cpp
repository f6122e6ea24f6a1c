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

#include "mixsemble/error.hpp"

namespace mixsemble {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRangeLabel: return "OutOfRangeLabel";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeLabel: return "NegativeLabel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewItems: return "TooFewItems";
    case ErrorCode::ClusterCountMismatch: return "ClusterCountMismatch";
    case ErrorCode::BadColumnIndex: return "BadColumnIndex";
    case ErrorCode::DegenerateRow: return "DegenerateRow";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SingularComponent: return "SingularComponent";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::RejectionOverflow: return "RejectionOverflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateRow:
    case ErrorCode::NonFinite:
    case ErrorCode::EmptyCluster:
    case ErrorCode::SingularComponent:
    case ErrorCode::RejectionOverflow:
    case ErrorCode::IoError:
      return false;
    default:
      return true;
  }
}

}  // namespace mixsemble
