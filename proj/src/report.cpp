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

#include "mixsemble/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <tuple>

namespace mixsemble {

void ExperimentReport::finalize() {
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.dataset, a.method, a.run) < std::tie(b.dataset, b.method, b.run);
  });
  summaries.clear();
  std::map<std::pair<std::string, std::string>, std::vector<double>> grouped;
  for (const auto& r : records) grouped[{r.dataset, r.method}].push_back(r.ari);
  for (const auto& [key, values] : grouped) {
    summaries.push_back({key.first, key.second, mean_of(values), sample_sd(values), values.size()});
  }
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::string format_roundtrip(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_fixed4(double value) {
  if (!std::isfinite(value)) return format_roundtrip(value);
  // Shortest scientific form: [-]d[.ddd]e[+-]xx
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific);
  const std::string sci(buf, res.ptr);
  const bool negative = sci.front() == '-';
  const auto e_pos = sci.find('e');
  std::string digits;
  for (std::size_t i = negative ? 1 : 0; i < e_pos; ++i) {
    if (sci[i] != '.') digits.push_back(sci[i]);
  }
  const int exponent = std::stoi(sci.substr(e_pos + 1));

  // value = 0.d1d2d3... * 10^(exponent + 1); scale to units of 1e-4.
  // Integer part of value * 1e4 uses the first (exponent + 1 + 4) digits.
  const int keep = exponent + 1 + 4;
  std::string scaled;  // decimal digits of |value| * 1e4, truncated
  bool round_up = false;
  if (keep <= 0) {
    scaled = "0";
    round_up = keep == 0 && digits[0] >= '5';
  } else {
    for (int i = 0; i < keep; ++i) {
      scaled.push_back(static_cast<std::size_t>(i) < digits.size() ? digits[static_cast<std::size_t>(i)] : '0');
    }
    round_up = static_cast<std::size_t>(keep) < digits.size() && digits[static_cast<std::size_t>(keep)] >= '5';
  }
  if (round_up) {
    int i = static_cast<int>(scaled.size()) - 1;
    while (i >= 0 && scaled[static_cast<std::size_t>(i)] == '9') {
      scaled[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      scaled.insert(scaled.begin(), '1');
    } else {
      ++scaled[static_cast<std::size_t>(i)];
    }
  }
  while (scaled.size() < 5) scaled.insert(scaled.begin(), '0');
  const std::string int_part = scaled.substr(0, scaled.size() - 4);
  const std::string frac_part = scaled.substr(scaled.size() - 4);
  const bool is_zero = std::all_of(scaled.begin(), scaled.end(), [](char c) { return c == '0'; });
  std::string out = (negative && !is_zero) ? "-" : "";
  std::size_t lead = 0;
  while (lead + 1 < int_part.size() && int_part[lead] == '0') ++lead;
  out += int_part.substr(lead);
  out += '.';
  out += frac_part;
  return out;
}

}  // namespace mixsemble
