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


#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cflab/cli/config.hpp"
#include "cflab/cli/report.hpp"
#include "cflab/cli/runner.hpp"
#include "cflab/error.hpp"
#include "json.hpp"

namespace cflab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("cflab-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  TempDir tmp;
  const fs::path out = tmp.path() / "stdout";
  const fs::path err = tmp.path() / "stderr";
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" CFLAB_CLI_PATH "' " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<json> sample_configs() {
  return {
      {{"experiment", "expand"}, {"rational", "7/22"}},
      {{"experiment", "exponent"}, {"sampler", "golden"}, {"horizon", 50}},
      {{"experiment", "extravagance"}, {"sampler", "uniform:1..3"}, {"horizon", 200},
       {"replicas", 3}, {"seed", 4}},
      {{"experiment", "extravagance"}, {"sampler", "growth:2"}, {"perturbation", "constant:1"},
       {"horizon", 50}},
      {{"experiment", "khinchin"}, {"sampler", "lebesgue"}, {"horizon", 40}, {"replicas", 2},
       {"f", "1/(q*log(q))"}, {"divisor", "1"}, {"seed", 9}},
      {{"experiment", "renyi-check"}, {"max_prefix_len", 2}, {"max_digit", 3}},
      {{"experiment", "dichotomy"}, {"horizon", 500}, {"replicas", 2},
       {"cases", {{{"sampler", "uniform:1..10"}}, {{"sampler", "geometric"}}}}},
      {{"experiment", "condensation"}, {"law", "power:3"}, {"horizon", 256}},
  };
}

TEST(Config, RoundTripIsCanonical) {
  for (const json& j : sample_configs()) {
    const ExperimentConfig c = ExperimentConfig::from_json(j);
    const json canon = c.to_json();
    EXPECT_EQ(ExperimentConfig::from_json(canon).to_json(), canon) << j.dump();
    EXPECT_EQ(ExperimentConfig::from_json(canon).hash(), c.hash());
  }
}

TEST(Config, HashIgnoresJobsAndOutput) {
  json j = sample_configs()[2];
  const std::string h = ExperimentConfig::from_json(j).hash();
  EXPECT_EQ(h.size(), 64u);
  EXPECT_EQ(h.find_first_not_of("0123456789abcdef"), std::string::npos);
  j["jobs"] = 8;
  j["out"] = "/tmp/elsewhere";
  j["gnuplot"] = true;
  EXPECT_EQ(ExperimentConfig::from_json(j).hash(), h);
  j["seed"] = 5;
  EXPECT_NE(ExperimentConfig::from_json(j).hash(), h);
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, Rejections) {
  EXPECT_THROW(ExperimentConfig::from_json(json::array()), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"horizon", 5}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"experiment", "nope"}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"experiment", "expand"}, {"rationale", "1/2"}}),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"experiment", "exponent"}, {"horizon", "ten"}}),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"experiment", "exponent"}, {"format", "xml"}}),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"experiment", "expand"}, {"rational", "3/2"}}).validate(),
               ConfigError);
  EXPECT_THROW(parse_divisor("2*e^"), ConfigError);
  EXPECT_EQ(parse_divisor("2*e^8").exp_power, 8);
  EXPECT_EQ(parse_divisor("e^8").factor, 1);
}

TEST(Config, DefaultSeed) {
  EXPECT_EQ(ExperimentConfig::from_json({{"experiment", "exponent"}, {"sampler", "golden"}}, 77).seed, 77u);
  EXPECT_EQ(ExperimentConfig::from_json({{"experiment", "exponent"}, {"sampler", "golden"}, {"seed", 3}}, 77).seed, 3u);
}

TEST(Report, CsvQuotingAndDoubles) {
  Table t{"x", {"a", "b"}, {}};
  t.add({"1,2", "say \"hi\""});
  EXPECT_EQ(t.to_csv(), "a,b\n\"1,2\",\"say \"\"hi\"\"\"\n");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Report, EmptyHitTableHasHeaderOnly) {
  const ExperimentConfig c = ExperimentConfig::from_json(
      {{"experiment", "khinchin"}, {"sampler", "golden"}, {"horizon", 30},
       {"f", "1/(2*q^1.1)"}, {"q_min", 10}});
  const RunResult r = run_experiment(c);
  const auto it = std::find_if(r.tables.begin(), r.tables.end(),
                               [](const Table& t) { return t.name == "hits"; });
  ASSERT_NE(it, r.tables.end());
  EXPECT_EQ(it->to_csv(),
            "replica,n,p,q,gap_lo,gap_hi,threshold_lo,threshold_hi,convergent\n");
}

TEST(Report, DocumentMatchesSchemaRequiredKeys) {
  const json schema = json::parse(slurp(CFLAB_SCHEMA_PATH));
  std::map<std::string, json> required;
  for (const auto& rule : schema["allOf"]) {
    const std::string kind = rule["if"]["properties"]["experiment"]["const"];
    required[kind] = rule["then"]["properties"]["report"]["required"];
  }
  for (const json& j : sample_configs()) {
    const ExperimentConfig c = ExperimentConfig::from_json(j);
    const json doc = report_document(c, run_experiment(c));
    for (const auto& k : schema["required"]) EXPECT_TRUE(doc.contains(k)) << k;
    for (const auto& k : required.at(c.experiment)) {
      EXPECT_TRUE(doc["report"].contains(k)) << c.experiment << " " << k;
    }
    EXPECT_EQ(doc["config_hash"], c.hash());
    EXPECT_FALSE(doc["config"].contains("jobs"));
  }
}

TEST(Runner, ExceptionClassesMapToExitCodes) {
  auto code_of = [](auto thrower) {
    std::ostringstream err;
    int code = -1;
    try {
      thrower();
    } catch (...) {
      code = report_current_exception(err);
    }
    const json diag = json::parse(err.str());
    EXPECT_EQ(diag["exit_code"], code);
    EXPECT_TRUE(diag.contains("message"));
    return std::make_pair(code, diag["error"].get<std::string>());
  };
  EXPECT_EQ(code_of([] { throw ConfigError("x"); }), std::make_pair(kExitConfig, std::string("config")));
  EXPECT_EQ(code_of([] { throw UndecidableAtCap("x"); }),
            std::make_pair(kExitUndecidable, std::string("undecidable_at_cap")));
  EXPECT_EQ(code_of([] { throw StreamExhausted(3, 2); }).first, kExitInternal);
  EXPECT_EQ(code_of([] { throw std::runtime_error("x"); }).first, kExitInternal);
}

TEST(Runner, ParallelismDoesNotChangeReports) {
  for (json j : sample_configs()) {
    j["jobs"] = 1;
    const ExperimentConfig a = ExperimentConfig::from_json(j);
    j["jobs"] = 8;
    const ExperimentConfig b = ExperimentConfig::from_json(j);
    EXPECT_EQ(report_document(a, run_experiment(a)).dump(),
              report_document(b, run_experiment(b)).dump());
  }
}

TEST(Cli, ExpandPrintsDigits) {
  const CliResult r = run_cli("expand --rational 7/22");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3 7\n");
}

TEST(Cli, ConfigErrorsExitTwo) {
  for (const char* args : {"expand --rational 3/2", "expand --bogus", "run", "exponent --horizon x",
                           "exponent --sampler nonsense:1", "nope"}) {
    const CliResult r = run_cli(args);
    EXPECT_EQ(r.code, 2) << args;
    const json diag = json::parse(r.err.substr(0, r.err.find('\n')));
    EXPECT_EQ(diag["error"], "config") << args;
  }
}

TEST(Cli, RuntimeErrorsExitOne) {
  EXPECT_EQ(run_cli("exponent --sampler finite:3,7 --horizon 10").code, 1);
  TempDir tmp;
  const fs::path file = tmp.path() / "plain";
  std::ofstream(file) << "x";
  const CliResult r = run_cli("expand --rational 1/3 --out " + (file / "sub").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err.substr(0, r.err.find('\n')))["error"], "internal");
}

TEST(Cli, EnvironmentSeed) {
  const CliResult r = run_cli("exponent --sampler lebesgue --horizon 20 --format json",
                              "CF_LAB_SEED=5");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["config"]["seed"], 5);
  const CliResult flag = run_cli("exponent --sampler lebesgue --horizon 20 --format json --seed 6",
                                 "CF_LAB_SEED=5");
  EXPECT_EQ(json::parse(flag.out)["config"]["seed"], 6);
  EXPECT_EQ(run_cli("exponent --sampler lebesgue --horizon 20", "CF_LAB_SEED=abc").code, 2);
}

TEST(Cli, OutputFilesReproducible) {
  TempDir a, b;
  const std::string args = "khinchin --sampler lebesgue --horizon 60 --replicas 4 --seed 3 "
                           "--f '1/(q*log(q))' --divisor 1 --out ";
  ASSERT_EQ(run_cli(args + a.path().string() + " --jobs 1").code, 0);
  ASSERT_EQ(run_cli(args + b.path().string() + " --jobs 4").code, 0);
  std::size_t reports = 0;
  for (const auto& e : fs::directory_iterator(a.path())) {
    const std::string name = e.path().filename().string();
    ASSERT_TRUE(fs::exists(b.path() / name)) << name;
    if (name.find(".manifest.json") != std::string::npos) {
      const json m = json::parse(slurp(e.path()));
      for (const auto& o : m["outputs"]) {
        EXPECT_EQ(o["sha256"], sha256_hex(slurp(a.path() / o["file"].get<std::string>())));
      }
      continue;
    }
    ++reports;
    EXPECT_EQ(slurp(e.path()), slurp(b.path() / name)) << name;
  }
  EXPECT_GE(reports, 2u);
}

}  // namespace
}  // namespace cflab
