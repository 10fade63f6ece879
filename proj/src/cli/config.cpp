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

#include "cflab/cli/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

#include "cflab/dio/approx_function.hpp"
#include "cflab/error.hpp"

namespace cflab {

namespace {

using json = nlohmann::json;

std::size_t get_size(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

// Law objects, or a sampler shorthand naming an iid law ("power:3").
json law_from_json(const json& v) {
  if (!v.is_string()) return parse_law(v)->to_json();
  const SamplerSpec spec = SamplerSpec::parse_text(v.get<std::string>());
  if (spec.kind() != "iid_pmf") {
    throw ConfigError("'law' shorthand must name an iid digit law");
  }
  return parse_law(spec.to_json().at("law"))->to_json();
}

std::uint64_t get_seed(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t pos = 0;
      const unsigned long long x = std::stoull(s, &pos, 0);
      if (pos == s.size() && !s.empty() && s[0] != '-') return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("'seed' must be an unsigned 64-bit integer");
}

json divisor_json(const Divisor& d) {
  return {{"factor", to_string(d.factor)}, {"exp", d.exp_power}};
}

Divisor divisor_from_json(const json& v) {
  if (v.is_string()) return parse_divisor(v.get<std::string>());
  if (v.is_number()) return {json_rational(v, "divisor"), 0};
  if (!v.is_object()) throw ConfigError("'divisor' must be a string or {factor, exp}");
  Divisor d;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (it.key() == "factor") {
      d.factor = json_rational(it.value(), "divisor factor");
    } else if (it.key() == "exp") {
      if (!it.value().is_number_integer()) throw ConfigError("divisor exp must be an integer");
      d.exp_power = it.value().get<long>();
    } else {
      throw ConfigError("unknown key '" + it.key() + "' in divisor");
    }
  }
  return d;
}

json optional_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"expand",      "exponent",  "extravagance",
                                                 "khinchin",    "renyi-check", "dichotomy",
                                                 "condensation"};
  return kinds;
}

Divisor parse_divisor(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  Divisor d;
  const auto e = s.find("e^");
  try {
    if (e == std::string::npos) {
      d.factor = parse_rational(s);
      return d;
    }
    std::string head = s.substr(0, e);
    if (!head.empty()) {
      if (head.back() != '*') throw ConfigError("expected '*' before e^");
      head.pop_back();
      d.factor = parse_rational(head);
    }
    std::size_t pos = 0;
    const std::string tail = s.substr(e + 2);
    d.exp_power = std::stol(tail, &pos);
    if (pos != tail.size()) throw ConfigError("trailing characters");
  } catch (const ConfigError& x) {
    throw ConfigError("divisor '" + text + "': " + x.what());
  } catch (const std::exception&) {
    throw ConfigError("divisor '" + text + "' is not of the form c, c*e^k or e^k");
  }
  if (d.factor <= 0) throw ConfigError("divisor must be positive");
  return d;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

ExperimentConfig ExperimentConfig::from_json(const json& j, std::uint64_t default_seed) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  c.seed = default_seed;
  bool have_experiment = false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (v.is_null()) continue;
    if (k == "experiment") {
      c.experiment = get_string(v, k);
      have_experiment = true;
    } else if (k == "sampler") {
      c.sampler = SamplerSpec::parse(v);
    } else if (k == "horizon") {
      c.horizon = get_size(v, k);
    } else if (k == "replicas") {
      c.replicas = get_size(v, k);
    } else if (k == "seed") {
      c.seed = get_seed(v);
    } else if (k == "jobs") {
      c.jobs = get_size(v, k);
    } else if (k == "out") {
      c.out = get_string(v, k);
    } else if (k == "format") {
      c.format = get_string(v, k);
    } else if (k == "series") {
      c.series = get_bool(v, k);
    } else if (k == "gnuplot") {
      c.gnuplot = get_bool(v, k);
    } else if (k == "tolerance") {
      c.tolerance = get_double(v, k);
    } else if (k == "rational") {
      c.rational = json_rational(v, "rational");
    } else if (k == "f") {
      c.f = get_string(v, k);
    } else if (k == "divisor") {
      c.divisor = divisor_from_json(v);
    } else if (k == "declared_convergent") {
      c.declared_convergent = get_bool(v, k);
    } else if (k == "q_min") {
      c.q_min = get_size(v, k);
    } else if (k == "perturbation") {
      c.perturbation = SamplerSpec::parse(v);
    } else if (k == "max_prefix_len") {
      c.max_prefix_len = get_size(v, k);
    } else if (k == "max_digit") {
      c.max_digit = get_size(v, k);
    } else if (k == "max_future_len") {
      c.max_future_len = get_size(v, k);
    } else if (k == "law") {
      c.law = law_from_json(v);
    } else if (k == "s_values") {
      if (!v.is_array() || v.empty()) throw ConfigError("'s_values' must be a non-empty array");
      c.s_values.clear();
      for (const auto& s : v) c.s_values.push_back(json_rational(s, "s_values entry"));
    } else if (k == "cases") {
      if (!v.is_array()) throw ConfigError("'cases' must be an array");
      for (const auto& e : v) {
        if (!e.is_object()) throw ConfigError("each case must be an object");
        CaseConfig cc{SamplerSpec::parse("lebesgue"), std::nullopt, 0};
        bool have_spec = false;
        for (auto ci = e.begin(); ci != e.end(); ++ci) {
          if (ci.key() == "sampler") {
            cc.spec = SamplerSpec::parse(ci.value());
            have_spec = true;
          } else if (ci.key() == "mean_finite") {
            if (!ci.value().is_null()) cc.mean_finite = get_bool(ci.value(), "mean_finite");
          } else if (ci.key() == "horizon") {
            cc.horizon = get_size(ci.value(), "case horizon");
          } else {
            throw ConfigError("unknown key '" + ci.key() + "' in case");
          }
        }
        if (!have_spec) throw ConfigError("each case needs a 'sampler'");
        c.cases.push_back(std::move(cc));
      }
    } else if (k == "finite_tail_threshold") {
      c.finite_tail_threshold = get_double(v, k);
    } else if (k == "infinite_sup_threshold") {
      c.infinite_sup_threshold = get_double(v, k);
    } else {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
  if (!have_experiment) throw ConfigError("config needs 'experiment'");
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json cases_json = json::array();
  for (const auto& cc : cases) {
    cases_json.push_back({{"sampler", cc.spec.to_json()},
                          {"mean_finite", optional_json(cc.mean_finite)},
                          {"horizon", cc.horizon}});
  }
  json s_json = json::array();
  for (const auto& s : s_values) s_json.push_back(to_string(s));
  return {{"experiment", experiment},
          {"sampler", sampler ? sampler->to_json() : json(nullptr)},
          {"horizon", horizon},
          {"replicas", replicas},
          {"seed", seed},
          {"jobs", jobs},
          {"out", out},
          {"format", format},
          {"series", series},
          {"gnuplot", gnuplot},
          {"tolerance", tolerance},
          {"rational", rational ? json(to_string(*rational)) : json(nullptr)},
          {"f", f ? json(*f) : json(nullptr)},
          {"divisor", divisor_json(divisor)},
          {"declared_convergent", optional_json(declared_convergent)},
          {"q_min", q_min},
          {"perturbation", perturbation ? perturbation->to_json() : json(nullptr)},
          {"max_prefix_len", max_prefix_len},
          {"max_digit", max_digit},
          {"max_future_len", max_future_len},
          {"law", law ? *law : json(nullptr)},
          {"s_values", std::move(s_json)},
          {"cases", std::move(cases_json)},
          {"finite_tail_threshold", finite_tail_threshold},
          {"infinite_sup_threshold", infinite_sup_threshold}};
}

std::string ExperimentConfig::hash() const {
  json j = to_json();
  j.erase("jobs");
  j.erase("out");
  j.erase("gnuplot");
  return sha256_hex(j.dump());
}

void ExperimentConfig::validate() const {
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), experiment) == kinds.end()) {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  auto need_sampler = [&](bool digits) {
    if (!sampler) throw ConfigError(experiment + " needs a 'sampler'");
    if (digits && !sampler->produces_digits()) {
      throw ConfigError(experiment + ": sampler kind '" + sampler->kind() +
                        "' does not produce digits");
    }
  };
  if (experiment == "expand") {
    if (!rational) throw ConfigError("expand needs 'rational'");
    if (*rational <= 0 || *rational >= 1) throw ConfigError("expand: rational must lie in (0,1)");
  } else if (experiment == "exponent") {
    need_sampler(true);
    if (horizon < 2) throw ConfigError("exponent: horizon must be >= 2");
    if (tolerance < 0) throw ConfigError("tolerance must be >= 0");
  } else if (experiment == "extravagance") {
    need_sampler(false);
    if (horizon < 1) throw ConfigError("extravagance: horizon must be >= 1");
  } else if (experiment == "khinchin") {
    need_sampler(true);
    if (!f) throw ConfigError("khinchin needs 'f'");
    ApproxFunction::parse(*f);
    if (divisor.factor <= 0) throw ConfigError("divisor must be positive");
    if (q_min < 1) throw ConfigError("q_min must be >= 1");
    if (horizon < 1) throw ConfigError("khinchin: horizon must be >= 1");
  } else if (experiment == "renyi-check") {
    if (max_prefix_len < 1 || max_digit < 1) {
      throw ConfigError("renyi-check: max_prefix_len and max_digit must be >= 1");
    }
    if (max_prefix_len > 6) throw ConfigError("renyi-check: max_prefix_len must be <= 6");
  } else if (experiment == "dichotomy") {
    if (cases.empty()) throw ConfigError("dichotomy needs a non-empty 'cases' array");
  } else if (experiment == "condensation") {
    if (!law) throw ConfigError("condensation needs 'law'");
    for (const auto& s : s_values) {
      if (s <= 0) throw ConfigError("s_values must be > 0");
    }
    if (horizon < 16) throw ConfigError("condensation: horizon must be >= 16");
  }
}

}  // namespace cflab
