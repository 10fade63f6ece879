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

#include "cflab/cli/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cflab/error.hpp"

#ifndef CFLAB_VERSION
#define CFLAB_VERSION "0.0.0"
#endif

namespace cflab {

namespace {

std::string quote_csv(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << body;
  f.close();
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

const char* tool_version() { return CFLAB_VERSION; }

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << quote_csv(columns[i]);
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << quote_csv(row[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json report_document(const ExperimentConfig& config, const RunResult& result) {
  nlohmann::json cfg = config.to_json();
  cfg.erase("jobs");
  cfg.erase("out");
  cfg.erase("gnuplot");
  return {{"experiment", result.experiment},
          {"tool_version", tool_version()},
          {"config_hash", config.hash()},
          {"config", std::move(cfg)},
          {"report", result.report}};
}

EmitResult emit_report(const ExperimentConfig& config, const RunResult& result, std::ostream& out,
                       const std::string& started_at, const std::string& finished_at) {
  EmitResult emitted;
  const std::string doc = report_document(config, result).dump(2) + "\n";
  if (config.out.empty()) {
    if (config.format == "json") {
      out << doc;
    } else if (!result.plain_text.empty()) {
      out << result.plain_text;
    } else if (!result.tables.empty()) {
      out << result.tables.front().to_csv();
    }
    out.flush();
    return emitted;
  }

  namespace fs = std::filesystem;
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("output directory '" + config.out + "' is not writable");
  }
  const std::string hash = config.hash();
  const std::string base = result.experiment + "-" + hash.substr(0, 12);
  nlohmann::json outputs = nlohmann::json::array();
  auto write = [&](const std::string& name, const std::string& body) {
    write_file(dir / name, body);
    emitted.files.push_back((dir / name).string());
    outputs.push_back({{"file", name}, {"sha256", sha256_hex(body)}});
  };
  if (config.format == "json") {
    write(base + ".json", doc);
  } else {
    for (const auto& t : result.tables) write(base + "." + t.name + ".csv", t.to_csv());
    if (config.gnuplot && !result.gnuplot.empty()) {
      std::string script = result.gnuplot;
      for (auto pos = script.find("@BASE@"); pos != std::string::npos;
           pos = script.find("@BASE@", pos)) {
        script.replace(pos, 6, base);
      }
      write(base + ".gp", script);
    }
  }
  nlohmann::json manifest = {{"config_hash", hash},
                             {"tool_version", tool_version()},
                             {"started_at", started_at},
                             {"finished_at", finished_at},
                             {"seed", config.seed},
                             {"replica_seeds", result.seeds},
                             {"outputs", std::move(outputs)},
                             {"config", config.to_json()}};
  const fs::path mpath = dir / (base + ".manifest.json");
  write_file(mpath, manifest.dump(2) + "\n");
  emitted.manifest = mpath.string();
  return emitted;
}

}  // namespace cflab
