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

// cflab: experiment runner.
//
//   cflab <experiment> [flags]       experiment in experiment_kinds()
//   cflab run --config <file.json>   experiment named by the config
//
// Flags override config-file values.  CF_LAB_SEED supplies the seed when
// neither the config nor --seed does.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cflab/cli/config.hpp"
#include "cflab/cli/runner.hpp"
#include "cflab/error.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;

struct Flags {
  std::string config;
  std::optional<std::string> seed;
  std::optional<std::size_t> horizon, replicas, jobs, q_min, max_prefix_len, max_digit,
      max_future_len;
  std::optional<std::string> out, format, sampler, f, divisor, rational, perturb, law;
  std::optional<double> tolerance, finite_tail, infinite_sup;
  std::optional<bool> declared_convergent;
  std::vector<std::string> s_values, cases;
  bool series = false;
  bool gnuplot = false;
};

void add_flags(CLI::App* cmd, Flags& fl, bool config_required) {
  auto* c = cmd->add_option("--config", fl.config, "JSON config file");
  if (config_required) c->required();
  cmd->add_option("--seed", fl.seed, "master seed (u64)");
  cmd->add_option("--horizon", fl.horizon, "digit or step horizon N");
  cmd->add_option("--replicas", fl.replicas, "independent replicas");
  cmd->add_option("--jobs", fl.jobs, "parallel replicas (0 = all cores)");
  cmd->add_option("--out", fl.out, "output directory (default: stdout)");
  cmd->add_option("--format", fl.format, "csv | json");
  cmd->add_option("--sampler", fl.sampler, "sampler shorthand or JSON object");
  cmd->add_option("--tolerance", fl.tolerance, "exponent route agreement tolerance");
  cmd->add_option("--rational", fl.rational, "expand: p/q in (0,1)");
  cmd->add_option("--f", fl.f, "khinchin approximation function of q");
  cmd->add_option("--divisor", fl.divisor, "khinchin threshold divisor, e.g. 2*e^8");
  cmd->add_option("--q-min", fl.q_min, "khinchin smallest denominator");
  cmd->add_option("--declared-convergent", fl.declared_convergent,
                  "khinchin: declared series class (true|false)");
  cmd->add_option("--perturb", fl.perturb, "extravagance: finite-mean perturbation sampler");
  cmd->add_option("--max-prefix-len", fl.max_prefix_len, "renyi-check prefix length");
  cmd->add_option("--max-digit", fl.max_digit, "renyi-check largest digit");
  cmd->add_option("--max-future-len", fl.max_future_len, "renyi-check future block length");
  cmd->add_option("--law", fl.law, "digit law: JSON object or iid sampler shorthand");
  cmd->add_option("--s", fl.s_values, "condensation exponents, comma separated")->delimiter(',');
  cmd->add_option("--case", fl.cases, "dichotomy case sampler (repeatable)");
  cmd->add_option("--finite-tail-threshold", fl.finite_tail, "dichotomy finite-mean threshold");
  cmd->add_option("--infinite-sup-threshold", fl.infinite_sup,
                  "dichotomy infinite-mean threshold");
  cmd->add_flag("--series", fl.series, "include per-step traces");
  cmd->add_flag("--gnuplot-script", fl.gnuplot, "write a companion gnuplot script");
}

json spec_json(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw cflab::ConfigError(std::string("malformed JSON: ") + e.what());
    }
  }
  return text;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cflab::ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw cflab::ConfigError("config '" + path + "': " + e.what());
  }
}

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json merge(const Flags& fl, const std::string& experiment) {
  json j = fl.config.empty() ? json::object() : load_config(fl.config);
  if (!j.is_object()) throw cflab::ConfigError("config must be a JSON object");
  if (!experiment.empty()) {
    if (j.contains("experiment") && j["experiment"] != experiment) {
      throw cflab::ConfigError("config names experiment '" + j["experiment"].dump() +
                               "' but subcommand is '" + experiment + "'");
    }
    j["experiment"] = experiment;
  }
  put(j, "seed", fl.seed);
  put(j, "horizon", fl.horizon);
  put(j, "replicas", fl.replicas);
  put(j, "jobs", fl.jobs);
  put(j, "out", fl.out);
  put(j, "format", fl.format);
  put(j, "tolerance", fl.tolerance);
  put(j, "rational", fl.rational);
  put(j, "f", fl.f);
  put(j, "divisor", fl.divisor);
  put(j, "q_min", fl.q_min);
  put(j, "declared_convergent", fl.declared_convergent);
  put(j, "max_prefix_len", fl.max_prefix_len);
  put(j, "max_digit", fl.max_digit);
  put(j, "max_future_len", fl.max_future_len);
  put(j, "finite_tail_threshold", fl.finite_tail);
  put(j, "infinite_sup_threshold", fl.infinite_sup);
  if (fl.sampler) j["sampler"] = spec_json(*fl.sampler);
  if (fl.perturb) j["perturbation"] = spec_json(*fl.perturb);
  if (fl.law) j["law"] = spec_json(*fl.law);
  if (!fl.s_values.empty()) j["s_values"] = fl.s_values;
  if (!fl.cases.empty()) {
    json cs = json::array();
    for (const auto& c : fl.cases) cs.push_back({{"sampler", spec_json(c)}});
    j["cases"] = std::move(cs);
  }
  if (fl.series) j["series"] = true;
  if (fl.gnuplot) j["gnuplot"] = true;
  return j;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("CF_LAB_SEED");
  if (s == nullptr || *s == '\0') return 0;
  const std::string text(s);
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos, 0);
    if (pos == text.size() && text[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw cflab::ConfigError("CF_LAB_SEED must be an unsigned 64-bit integer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cflab: continued-fraction experiment runner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cflab::tool_version());

  Flags fl;
  std::vector<std::pair<CLI::App*, std::string>> commands;
  for (const auto& kind : cflab::experiment_kinds()) {
    CLI::App* cmd = app.add_subcommand(kind, "run the " + kind + " experiment");
    add_flags(cmd, fl, false);
    commands.emplace_back(cmd, kind);
  }
  CLI::App* run = app.add_subcommand("run", "run the experiment named in --config");
  add_flags(run, fl, true);
  commands.emplace_back(run, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}, {"exit_code", cflab::kExitConfig}}
                     .dump()
              << '\n';
    return cflab::kExitConfig;
  }

  std::string experiment;
  for (const auto& [cmd, kind] : commands) {
    if (cmd->parsed()) experiment = kind;
  }
  try {
    const cflab::ExperimentConfig config =
        cflab::ExperimentConfig::from_json(merge(fl, experiment), env_seed());
    return cflab::run_and_emit(config, std::cout, std::cerr);
  } catch (...) {
    return cflab::report_current_exception(std::cerr);
  }
}
