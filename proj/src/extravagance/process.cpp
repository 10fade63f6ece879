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

#include "cflab/extravagance/process.hpp"

#include <algorithm>
#include <cmath>

#include "cflab/error.hpp"
#include "cflab/measures/rng.hpp"
#include "cflab/parallel.hpp"

namespace cflab {

Quantiles Quantiles::of(std::vector<double> sample) {
  if (sample.empty()) throw InvalidArgument("quantiles of an empty sample");
  std::sort(sample.begin(), sample.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(sample.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= sample.size()) return sample.back();
    const double frac = pos - static_cast<double>(i);
    if (frac == 0.0) return sample[i];
    return sample[i] + frac * (sample[i + 1] - sample[i]);
  };
  Quantiles q;
  q.min = sample.front();
  q.q10 = at(0.10);
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  q.q90 = at(0.90);
  q.max = sample.back();
  return q;
}

nlohmann::json Quantiles::to_json() const {
  return {{"min", min}, {"q10", q10}, {"q25", q25}, {"median", median},
          {"q75", q75}, {"q90", q90}, {"max", max}};
}

TraceSummary TraceSummary::of(const std::vector<ReplicaTrace>& replicas) {
  TraceSummary s;
  std::vector<double> sups;
  std::vector<double> tails;
  for (const auto& r : replicas) {
    sups.push_back(r.trace.estimate());
    tails.push_back(r.trace.tail_estimate());
    s.max_sup_width = std::max(s.max_sup_width, r.trace.final_sup.width());
    s.max_tail_width = std::max(s.max_tail_width, r.trace.tail_max.width());
    if (r.trace.empty()) ++s.empty_traces;
  }
  s.running_sup = Quantiles::of(std::move(sups));
  s.tail_max = Quantiles::of(std::move(tails));
  return s;
}

nlohmann::json TraceSummary::to_json() const {
  return {{"running_sup", running_sup.to_json()},
          {"tail_max", tail_max.to_json()},
          {"max_sup_width", max_sup_width},
          {"max_tail_width", max_tail_width},
          {"empty_traces", empty_traces}};
}

std::size_t ProcessExtravagance::count_sup_above(double threshold) const {
  return static_cast<std::size_t>(std::count_if(
      replicas.begin(), replicas.end(),
      [&](const ReplicaTrace& r) { return r.trace.estimate() > threshold; }));
}

nlohmann::json ProcessExtravagance::to_json(bool include_series) const {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : replicas) {
    reps.push_back({{"replica", r.replica},
                    {"seed", r.seed},
                    {"trace", r.trace.to_json(include_series)},
                    {"diagnostics", r.diagnostics}});
  }
  return {{"spec", spec},
          {"horizon", horizon},
          {"seed", seed},
          {"replicas", std::move(reps)},
          {"summary", summary.to_json()}};
}

ProcessExtravagance process_extravagance(const SamplerSpec& spec, std::size_t horizon,
                                         std::size_t replicas, std::uint64_t seed,
                                         std::size_t jobs, bool record) {
  if (replicas < 1) throw InvalidArgument("process_extravagance: replicas must be >= 1");
  // Surface spec errors before fanning out.
  make_value_process(spec, seed);
  ProcessExtravagance out;
  out.spec = spec.to_json();
  out.horizon = horizon;
  out.seed = seed;
  out.replicas = parallel_map<ReplicaTrace>(replicas, jobs, [&](std::size_t r) {
    ReplicaTrace rt;
    rt.replica = r;
    rt.seed = derive_seed(seed, r);
    auto process = make_value_process(spec, rt.seed);
    rt.trace = run_extravagance(*process, horizon, record);
    rt.diagnostics = process->diagnostics();
    return rt;
  });
  out.summary = TraceSummary::of(out.replicas);
  return out;
}

nlohmann::json PerturbationReport::to_json(bool include_series) const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pairs) {
    ps.push_back({{"replica", p.replica},
                  {"seed", p.seed},
                  {"base", p.base.to_json(include_series)},
                  {"perturbed", p.perturbed.to_json(include_series)},
                  {"tail_difference", p.tail_difference()},
                  {"sup_difference", p.sup_difference()}});
  }
  return {{"spec", spec},
          {"f_spec", f_spec},
          {"horizon", horizon},
          {"seed", seed},
          {"pairs", std::move(ps)},
          {"summary",
           {{"base_tail_max", base_tail.to_json()},
            {"perturbed_tail_max", perturbed_tail.to_json()},
            {"tail_difference", tail_difference.to_json()},
            {"base_running_sup", base_sup.to_json()},
            {"perturbed_running_sup", perturbed_sup.to_json()}}}};
}

PerturbationReport perturbation_check(const SamplerSpec& spec, const SamplerSpec& f_spec,
                                      std::size_t horizon, std::size_t replicas,
                                      std::uint64_t seed, std::size_t jobs, bool record) {
  if (replicas < 1) throw InvalidArgument("perturbation_check: replicas must be >= 1");
  const auto f_mean = f_spec.mean_finite();
  if (f_mean && !*f_mean) {
    throw ConfigError("perturbation_check: f_spec must have finite mean");
  }
  make_value_process(spec, seed);
  make_value_process(f_spec, seed);
  PerturbationReport out;
  out.spec = spec.to_json();
  out.f_spec = f_spec.to_json();
  out.horizon = horizon;
  out.seed = seed;
  out.pairs = parallel_map<PerturbationPair>(replicas, jobs, [&](std::size_t r) {
    PerturbationPair p;
    p.replica = r;
    p.seed = derive_seed(seed, r);
    {
      auto base = make_value_process(spec, p.seed);
      p.base = run_extravagance(*base, horizon, record);
    }
    std::vector<ValueProcessPtr> terms;
    terms.push_back(make_value_process(spec, p.seed));
    terms.push_back(make_value_process(f_spec, derive_seed(p.seed, stream_tag::kPerturbation)));
    auto sum = sum_process(std::move(terms));
    p.perturbed = run_extravagance(*sum, horizon, record);
    return p;
  });
  std::vector<double> bt, pt, dt, bs, psup;
  for (const auto& p : out.pairs) {
    bt.push_back(p.base.tail_estimate());
    pt.push_back(p.perturbed.tail_estimate());
    dt.push_back(p.tail_difference());
    bs.push_back(p.base.estimate());
    psup.push_back(p.perturbed.estimate());
  }
  out.base_tail = Quantiles::of(bt);
  out.perturbed_tail = Quantiles::of(pt);
  out.tail_difference = Quantiles::of(dt);
  out.base_sup = Quantiles::of(bs);
  out.perturbed_sup = Quantiles::of(psup);
  return out;
}

}  // namespace cflab
