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
#include <span>
#include <string>
#include <vector>

namespace mixsemble {

inline constexpr const char* kVoteMethod = "vote";
inline constexpr const char* kConsensusMethod = "mixsemble";
inline constexpr const char* kMinMethod = "min";
inline constexpr const char* kMaxMethod = "max";

struct RunRecord {
  std::string dataset;
  std::string method;
  int run = 0;
  std::uint64_t seed = 0;
  double ari = 0.0;
};

struct MethodSummary {
  std::string dataset;
  std::string method;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n_runs = 0;
};

/// ARI records per (dataset, method, run). Member methods carry the member
/// name; "min"/"max" hold the per-run envelope over members.
struct ExperimentReport {
  std::vector<std::string> member_names;
  std::vector<RunRecord> records;
  std::vector<MethodSummary> summaries;

  /// Sorts records by (dataset, method, run) and recomputes the summaries.
  void finalize();
};

double mean_of(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> values);

/// Fixed four-decimal rendering. Rounds the shortest round-trip decimal form of
/// the value half away from zero, so 0.86905 renders as "0.8691" even though
/// its binary value lies just below the midpoint. Never renders "-0.0000".
std::string format_fixed4(double value);

/// Shortest decimal string that parses back to the same double.
std::string format_roundtrip(double value);

}  // namespace mixsemble
