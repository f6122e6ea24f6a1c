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

#include "mixsemble/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <unordered_map>

namespace mixsemble {

namespace fs = std::filesystem;

namespace {

struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based file line of each row
};

CsvFile read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  CsvFile csv;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      // Strip a UTF-8 byte order mark.
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      csv.header = split_csv_line(line);
      have_header = true;
      continue;
    }
    csv.rows.push_back(split_csv_line(line));
    csv.line_numbers.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::EmptyInput, path.string() + " is empty");
  if (csv.rows.empty()) throw Error(ErrorCode::EmptyInput, path.string() + " has a header but no rows");
  return csv;
}

std::string location(const fs::path& path, std::size_t line, std::size_t column) {
  return path.string() + ":" + std::to_string(line) + " column " + std::to_string(column + 1);
}

std::optional<double> parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  if (token.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<long long> parse_integer(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  if (token.empty() || res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.imbue(std::locale::classic());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  auto flush = [&] {
    if (!was_quoted) {
      const auto first = field.find_first_not_of(" \t");
      const auto last = field.find_last_not_of(" \t");
      field = first == std::string::npos ? "" : field.substr(first, last - first + 1);
    }
    fields.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      in_quotes = true;
      was_quoted = true;
    } else if (c == ',') {
      flush();
    } else {
      field += c;
    }
  }
  if (in_quotes) throw Error(ErrorCode::ParseError, "unterminated quoted field");
  flush();
  return fields;
}

Dataset load_dataset_csv(const fs::path& path, const std::optional<std::string>& label_column) {
  const CsvFile csv = read_csv(path);
  std::optional<std::size_t> label_index;
  if (label_column) {
    for (std::size_t j = 0; j < csv.header.size(); ++j) {
      if (csv.header[j] == *label_column) label_index = j;
    }
    if (!label_index) {
      throw Error(ErrorCode::MissingColumn,
                  "column '" + *label_column + "' not found in " + path.string());
    }
  }
  const std::size_t width = csv.header.size();
  const std::size_t d = width - (label_index ? 1 : 0);
  if (d == 0) throw Error(ErrorCode::EmptyInput, path.string() + " has no feature columns");

  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(csv.rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < width; ++j) {
    if (j != label_index) data.column_names.push_back(csv.header[j]);
  }
  std::vector<long long> codes;
  std::unordered_map<std::string, long long> code_of;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    if (row.size() != width) {
      throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(csv.line_numbers[i]) +
                                             " has " + std::to_string(row.size()) +
                                             " fields, header has " + std::to_string(width));
    }
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == label_index) {
        auto [it, inserted] = code_of.try_emplace(row[j], static_cast<long long>(code_of.size()));
        codes.push_back(it->second);
        continue;
      }
      const auto value = parse_double(row[j]);
      if (!value) {
        throw Error(ErrorCode::NonNumericCell,
                    "'" + row[j] + "' at " + location(path, csv.line_numbers[i], j));
      }
      data.features(static_cast<Eigen::Index>(i), col++) = *value;
    }
  }
  if (label_index) data.truth = relabel_contiguous(codes).partition;
  data.validate();
  return data;
}

void write_dataset_csv(const Dataset& data, const fs::path& path, const std::string& label_column) {
  data.validate();
  auto out = open_for_write(path);
  std::vector<std::string> names = data.column_names;
  if (names.empty()) {
    for (std::size_t j = 0; j < data.n_features(); ++j) names.push_back("x" + std::to_string(j + 1));
  }
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << quote_if_needed(names[j]);
  if (data.truth) out << ',' << quote_if_needed(label_column);
  out << '\n';
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
      out << (j ? "," : "") << format_roundtrip(data.features(i, j));
    }
    if (data.truth) out << ',' << (*data.truth)[static_cast<std::size_t>(i)];
    out << '\n';
  }
  finish(out, path);
}

PartitionTable load_partition_table(const fs::path& path, std::optional<int> n_clusters) {
  const CsvFile csv = read_csv(path);
  const std::size_t k = csv.header.size();
  if (n_clusters && *n_clusters < 1) throw Error(ErrorCode::InvalidConfig, "G must be >= 1");

  std::vector<std::vector<long long>> columns(k);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    if (row.size() != k) {
      throw Error(ErrorCode::RaggedRows, path.string() + ":" + std::to_string(csv.line_numbers[i]) +
                                             " has " + std::to_string(row.size()) +
                                             " fields, header has " + std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) {
      const auto value = parse_integer(row[j]);
      if (!value) {
        throw Error(ErrorCode::ParseError,
                    "'" + row[j] + "' is not an integer label at " +
                        location(path, csv.line_numbers[i], j));
      }
      if (n_clusters && (*value < 0 || *value >= *n_clusters)) {
        throw Error(ErrorCode::OutOfRangeLabel,
                    "label " + row[j] + " not in [0, " + std::to_string(*n_clusters) + ") at " +
                        location(path, csv.line_numbers[i], j));
      }
      columns[j].push_back(*value);
    }
  }

  const std::size_t n = csv.rows.size();
  std::vector<int> entries(n * k);
  int g = n_clusters.value_or(0);
  for (std::size_t j = 0; j < k; ++j) {
    if (n_clusters) {
      for (std::size_t i = 0; i < n; ++i) entries[i * k + j] = static_cast<int>(columns[j][i]);
    } else {
      const auto relabeled = relabel_contiguous(columns[j]);
      g = std::max(g, relabeled.partition.n_clusters());
      for (std::size_t i = 0; i < n; ++i) entries[i * k + j] = relabeled.partition[i];
    }
  }
  return {csv.header, LabelMatrix(std::move(entries), n, k, g)};
}

LabelMatrix load_partitions_csv(const fs::path& path, std::optional<int> n_clusters) {
  return load_partition_table(path, n_clusters).matrix;
}

void write_partitions_csv(const LabelMatrix& matrix, const std::vector<std::string>& names,
                          const fs::path& path) {
  if (names.size() != matrix.n_observers()) {
    throw Error(ErrorCode::LengthMismatch, "need one column name per observer");
  }
  auto out = open_for_write(path);
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << quote_if_needed(names[j]);
  out << '\n';
  for (std::size_t i = 0; i < matrix.n_items(); ++i) {
    for (std::size_t j = 0; j < matrix.n_observers(); ++j) out << (j ? "," : "") << matrix(i, j);
    out << '\n';
  }
  finish(out, path);
}

fs::path summary_path_for(const fs::path& results_path) {
  fs::path summary = results_path;
  summary.replace_filename(results_path.stem().string() + "_summary.csv");
  return summary;
}

void write_results_csv(const ExperimentReport& report, const fs::path& path) {
  {
    auto out = open_for_write(path);
    out << "dataset,method,run,seed,ari\n";
    for (const auto& r : report.records) {
      out << quote_if_needed(r.dataset) << ',' << quote_if_needed(r.method) << ',' << r.run << ','
          << r.seed << ',' << format_roundtrip(r.ari) << '\n';
    }
    finish(out, path);
  }
  const fs::path summary_path = summary_path_for(path);
  auto out = open_for_write(summary_path);
  out << "dataset,method,mean_ari,sd_ari\n";
  for (const auto& s : report.summaries) {
    out << quote_if_needed(s.dataset) << ',' << quote_if_needed(s.method) << ','
        << format_fixed4(s.mean) << ',' << format_fixed4(s.sd) << '\n';
  }
  finish(out, summary_path);
}

}  // namespace mixsemble
