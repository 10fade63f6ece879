// Copyright 2026 The cflab Authors
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

// Report emission.  Tables are long-format CSV; interval entries always get
// both endpoint columns.  Reports never embed timestamps, so reruns with the
// same config are byte-identical; timing and output digests go to the
// manifest only.
//
// File names: <experiment>-<hash12>.<table>.csv, <experiment>-<hash12>.json
// and <experiment>-<hash12>.manifest.json, where hash12 is the first 12 hex
// digits of the config hash.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cflab/cli/config.hpp"
#include "json.hpp"

namespace cflab {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  // Header row plus rows; RFC 4180 quoting where needed.
  std::string to_csv() const;
};

struct RunResult {
  std::string experiment;
  nlohmann::json report;
  std::vector<Table> tables;  // tables[0] is printed when writing to stdout
  std::vector<std::uint64_t> seeds;
  // Plain-text stdout form for csv mode, when set (expand prints digits).
  std::string plain_text;
  // Companion gnuplot script body (may be empty); @BASE@ expands to the
  // file-name stem.
  std::string gnuplot;
};

// Lossless decimal form of a double ("%.17g"), "inf"/"-inf"/"nan" otherwise.
std::string format_double(double v);

// {"experiment", "tool_version", "config_hash", "config", "report"}.
nlohmann::json report_document(const ExperimentConfig& config, const RunResult& result);

struct EmitResult {
  std::vector<std::string> files;  // report files written
  std::string manifest;            // manifest path, empty for stdout mode
};

// Without config.out the primary output goes to `out` and no manifest is
// written.  Throws Error when a file cannot be written.
EmitResult emit_report(const ExperimentConfig& config, const RunResult& result, std::ostream& out,
                       const std::string& started_at, const std::string& finished_at);

// UTC timestamp, ISO 8601 with seconds.
std::string utc_timestamp();

const char* tool_version();

}  // namespace cflab
