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
#pragma once

#include <string>

#include "parityforge/core.hpp"
#include "parityforge/r2b.hpp"

// File formats: CSV with header row, UTF-8, LF newlines, '.' decimal
// separator, floats with 17 significant digits (lossless round-trip).
//   features.csv  header f0..f{d-1}
//   labels.csv    header c0..c{L-1} (row-stochastic), or a single integer
//                 column named y (hard labels, one-hot expanded on read)
//   groups.csv    header g, integers
namespace parityforge::io {

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

std::string format_double(double value);  // %.17g

void write_features_csv(const std::string& path, const Matrix& features);
Matrix read_features_csv(const std::string& path);

void write_labels_csv(const std::string& path, const LabelMatrix& labels);
LabelMatrix read_labels_csv(const std::string& path);

void write_groups_csv(const std::string& path, const GroupVector& groups);
GroupVector read_groups_csv(const std::string& path);

// Report JSON (version, config echo, traces, final diagnostics). Written by
// hand so every float carries 17 significant digits.
void write_debias_report(const std::string& path,
                         const r2b::DebiasReport& report, double timings_ms);

}  // namespace parityforge::io
