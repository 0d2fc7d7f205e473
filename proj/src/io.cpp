/*
 * Copyright 2026 The ParityForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "parityforge/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace parityforge::io {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF newlines
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& token, const std::string& path,
                    std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty()) {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": not a number: '" + token + "'");
  }
  return v;
}

std::int32_t parse_int(const std::string& token, const std::string& path,
                       std::size_t line_no) {
  char* end = nullptr;
  const long v = std::strtol(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty()) {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": not an integer: '" + token + "'");
  }
  return static_cast<std::int32_t>(v);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (line_no == 1) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size()) {
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": expected " + std::to_string(table.header.size()) +
                         " fields, got " + std::to_string(fields.size()));
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (table.header.empty()) throw ParseError(path + ": empty file");
  return table;
}

void expect_header(const CsvTable& table, const std::string& path,
                   char prefix) {
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    const std::string expected = std::string(1, prefix) + std::to_string(j);
    if (table.header[j] != expected) {
      throw ParseError(path + ": expected header column '" + expected +
                       "', got '" + table.header[j] + "'");
    }
  }
}

}  // namespace

void write_features_csv(const std::string& path, const Matrix& features) {
  std::ofstream out = open_output(path);
  for (std::size_t j = 0; j < features.cols(); ++j) {
    out << (j ? "," : "") << 'f' << j;
  }
  out << '\n';
  for (std::size_t i = 0; i < features.rows(); ++i) {
    for (std::size_t j = 0; j < features.cols(); ++j) {
      out << (j ? "," : "") << format_double(features(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

Matrix read_features_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  expect_header(table, path, 'f');
  Matrix m(table.rows.size(), table.header.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      m(i, j) = parse_double(table.rows[i][j], path, i + 2);
    }
  }
  return m;
}

void write_labels_csv(const std::string& path, const LabelMatrix& labels) {
  std::ofstream out = open_output(path);
  for (std::size_t k = 0; k < labels.n_classes(); ++k) {
    out << (k ? "," : "") << 'c' << k;
  }
  out << '\n';
  for (std::size_t i = 0; i < labels.n_examples(); ++i) {
    for (std::size_t k = 0; k < labels.n_classes(); ++k) {
      out << (k ? "," : "") << format_double(labels(i, k));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

LabelMatrix read_labels_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  // Column count decides the schema: a single column named y holds hard
  // labels, expanded to one-hot with L = max id + 1.
  if (table.header.size() == 1 && table.header[0] == "y") {
    std::vector<std::int32_t> hard(table.rows.size());
    std::int32_t max_id = -1;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      hard[i] = parse_int(table.rows[i][0], path, i + 2);
      if (hard[i] < 0) {
        throw ParseError(path + ": negative class id " +
                         std::to_string(hard[i]));
      }
      max_id = std::max(max_id, hard[i]);
    }
    return one_hot_encode(hard, max_id + 1);
  }
  expect_header(table, path, 'c');
  Matrix m(table.rows.size(), table.header.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t k = 0; k < table.header.size(); ++k) {
      m(i, k) = parse_double(table.rows[i][k], path, i + 2);
    }
  }
  return LabelMatrix(std::move(m));
}

void write_groups_csv(const std::string& path, const GroupVector& groups) {
  std::ofstream out = open_output(path);
  out << "g\n";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out << groups[i] << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

GroupVector read_groups_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() != 1 || table.header[0] != "g") {
    throw ParseError(path + ": expected single header column 'g'");
  }
  std::vector<std::int32_t> ids(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    ids[i] = parse_int(table.rows[i][0], path, i + 2);
  }
  return GroupVector::infer(std::move(ids));
}

namespace {

void write_double_array(std::ofstream& out, const char* key,
                        const std::vector<double>& values) {
  out << "  \"" << key << "\": [";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i ? ", " : "") << format_double(values[i]);
  }
  out << "]";
}

}  // namespace

void write_debias_report(const std::string& path,
                         const r2b::DebiasReport& report, double timings_ms) {
  std::ofstream out = open_output(path);
  const DebiasConfig& c = report.config_echo;
  out << "{\n";
  out << "  \"version\": 1,\n";
  out << "  \"config\": {\n";
  out << "    \"epsilon\": " << format_double(c.epsilon) << ",\n";
  out << "    \"tau\": " << format_double(c.tau) << ",\n";
  out << "    \"lambda\": " << format_double(c.lambda) << ",\n";
  out << "    \"max_rounds\": " << c.max_rounds << ",\n";
  out << "    \"tolerances\": {\n";
  out << "      \"residual_tol\": " << format_double(c.residual_tol) << ",\n";
  out << "      \"outer_tol\": " << format_double(c.outer_tol) << ",\n";
  out << "      \"inner_tol\": " << format_double(c.inner_tol) << "\n";
  out << "    }\n";
  out << "  },\n";
  out << "  \"rounds_run\": " << report.rounds_run << ",\n";
  write_double_array(out, "dp_trace", report.dp_trace);
  out << ",\n";
  write_double_array(out, "primal_trace", report.primal_trace);
  out << ",\n";
  write_double_array(out, "dual_trace", report.dual_trace);
  out << ",\n";
  write_double_array(out, "objective_trace", report.objective_trace);
  out << ",\n";
  out << "  \"final_dp\": " << format_double(report.final_dp) << ",\n";
  out << "  \"max_clamp_adjustment\": "
      << format_double(report.max_clamp_adjustment) << ",\n";
  out << "  \"timings_ms\": " << format_double(timings_ms) << "\n";
  out << "}\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace parityforge::io
