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

#include "cflab/cli/runner.hpp"

#include <ostream>

#include "cflab/cf/convergents.hpp"
#include "cflab/dio/dichotomy.hpp"
#include "cflab/dio/exponent.hpp"
#include "cflab/dio/khinchin.hpp"
#include "cflab/dio/renyi.hpp"
#include "cflab/dio/series.hpp"
#include "cflab/error.hpp"
#include "cflab/extravagance/process.hpp"
#include "cflab/measures/rng.hpp"

namespace cflab {

namespace {

using json = nlohmann::json;

std::string fd(double v) { return format_double(v); }
std::string fz(std::size_t v) { return std::to_string(v); }
std::string fb(bool v) { return v ? "true" : "false"; }

std::vector<std::uint64_t> replica_seeds(std::uint64_t seed, std::size_t replicas) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < replicas; ++r) out.push_back(derive_seed(seed, r));
  return out;
}

Table trace_table() {
  return {"traces",
          {"replica", "route", "n", "ratio_lo", "ratio_hi", "running_sup_lo", "running_sup_hi"},
          {}};
}

void add_trace_rows(Table& t, std::size_t replica, const std::string& route,
                    const ExtravaganceTrace& tr) {
  if (!tr.recorded()) return;
  for (std::size_t i = 0; i < tr.count; ++i) {
    const auto& m = tr.ratios[i];
    const auto& s = tr.running_sup[i];
    t.add({fz(replica), route, fz(tr.start_index + i), fd(m.lo), fd(m.hi), fd(s.lo), fd(s.hi)});
  }
}

std::string trace_gnuplot(const std::string& title) {
  return "# gnuplot companion script\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set logscale x\n"
         "set xlabel 'n'\n"
         "set ylabel 'ratio'\n"
         "set title '" + title + "'\n"
         "plot '@BASE@.traces.csv' using 3:($4+$5)/2 with points pt 7 ps 0.3 title 'ratio mid', \\\n"
         "     '' using 3:($6+$7)/2 with lines title 'running sup mid'\n";
}

RunResult run_expand(const ExperimentConfig& c) {
  RunResult r;
  const auto digits = expand_rational(*c.rational);
  Table t{"digits", {"index", "digit"}, {}};
  json ds = json::array();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    t.add({fz(i + 1), to_string(digits[i])});
    ds.push_back(to_string(digits[i]));
    if (i) r.plain_text += ' ';
    r.plain_text += to_string(digits[i]);
  }
  r.plain_text += '\n';
  r.report = {{"rational", to_string(*c.rational)}, {"digits", std::move(ds)}};
  r.tables.push_back(std::move(t));
  return r;
}

RunResult run_exponent(const ExperimentConfig& c) {
  RunResult r;
  ExponentOptions opts;
  opts.tolerance = c.tolerance;
  opts.record = c.series;
  const ExponentExperiment ex =
      exponent_experiment(*c.sampler, c.horizon, c.replicas, c.seed, c.jobs, opts);
  r.report = ex.to_json(c.series);
  Table summary{"summary",
                {"replica", "seed", "route", "estimate", "sup_estimate", "available", "consistent"},
                {}};
  Table traces = trace_table();
  for (const auto& rep : ex.replicas) {
    const auto& e = rep.estimate;
    const std::pair<const char*, const RoutePoint*> routes[] = {
        {"bugeaud", &e.bugeaud}, {"digit", &e.digit}, {"direct", &e.direct_point}};
    for (const auto& [name, p] : routes) {
      summary.add({fz(rep.replica), std::to_string(rep.seed), name, fd(p->estimate),
                   fd(p->sup_estimate), fb(p->available), fb(e.consistent)});
    }
    if (c.series) {
      add_trace_rows(traces, rep.replica, "bugeaud", e.bugeaud_trace);
      add_trace_rows(traces, rep.replica, "digit", e.digit_trace);
      std::optional<RatioBound> run;
      for (std::size_t i = 0; i < e.direct.size(); ++i) {
        const auto& b = e.direct[i];
        if (!run) {
          run = b;
        } else {
          run->lo = std::max(run->lo, b.lo);
          run->hi = std::max(run->hi, b.hi);
        }
        traces.add({fz(rep.replica), "direct", fz(e.direct_index[i]), fd(b.lo), fd(b.hi),
                    fd(run->lo), fd(run->hi)});
      }
    }
  }
  r.tables.push_back(std::move(summary));
  if (c.series) {
    r.tables.push_back(std::move(traces));
    r.gnuplot = trace_gnuplot("exponent routes");
  }
  r.seeds = replica_seeds(c.seed, c.replicas);
  return r;
}

void add_summary_row(Table& t, std::size_t replica, std::uint64_t seed, const std::string& which,
                     const ExtravaganceTrace& tr) {
  t.add({fz(replica), std::to_string(seed), which, fz(tr.start_index), fz(tr.count),
         fd(tr.final_sup.lo), fd(tr.final_sup.hi), fd(tr.tail_max.lo), fd(tr.tail_max.hi)});
}

RunResult run_extravagance_experiment(const ExperimentConfig& c) {
  RunResult r;
  Table summary{"summary",
                {"replica", "seed", "trace", "start_index", "count", "sup_lo", "sup_hi",
                 "tail_lo", "tail_hi"},
                {}};
  Table traces = trace_table();
  if (c.perturbation) {
    const PerturbationReport rep = perturbation_check(*c.sampler, *c.perturbation, c.horizon,
                                                      c.replicas, c.seed, c.jobs, c.series);
    r.report = rep.to_json(c.series);
    for (const auto& p : rep.pairs) {
      add_summary_row(summary, p.replica, p.seed, "base", p.base);
      add_summary_row(summary, p.replica, p.seed, "perturbed", p.perturbed);
      if (c.series) {
        add_trace_rows(traces, p.replica, "base", p.base);
        add_trace_rows(traces, p.replica, "perturbed", p.perturbed);
      }
    }
  } else {
    const ProcessExtravagance rep =
        process_extravagance(*c.sampler, c.horizon, c.replicas, c.seed, c.jobs, c.series);
    r.report = rep.to_json(c.series);
    for (const auto& rt : rep.replicas) {
      add_summary_row(summary, rt.replica, rt.seed, "process", rt.trace);
      if (c.series) add_trace_rows(traces, rt.replica, "process", rt.trace);
    }
  }
  r.tables.push_back(std::move(summary));
  if (c.series) {
    r.tables.push_back(std::move(traces));
    r.gnuplot = trace_gnuplot("extravagance ratios");
  }
  r.seeds = replica_seeds(c.seed, c.replicas);
  return r;
}

RunResult run_khinchin(const ExperimentConfig& c) {
  RunResult r;
  const ApproxFunction f = ApproxFunction::parse(*c.f);
  KhinchinOptions opts;
  opts.divisor = c.divisor;
  opts.q_min = c.q_min;
  opts.declared_convergent = c.declared_convergent;
  const KhinchinReport rep =
      khinchin_experiment(*c.sampler, f, c.horizon, c.replicas, c.seed, c.jobs, opts);
  r.report = rep.to_json();
  Table hits{"hits",
             {"replica", "n", "p", "q", "gap_lo", "gap_hi", "threshold_lo", "threshold_hi",
              "convergent"},
             {}};
  Table reps{"replicas",
             {"replica", "seed", "hit_count", "unit_hits", "evaluated", "undecided",
              "final_half_hits", "q_decades", "q_decades_with_hit", "n_decades",
              "n_decades_with_hit"},
             {}};
  for (const auto& rr : rep.replicas) {
    for (const auto& h : rr.hits) {
      hits.add({fz(rr.replica), fz(h.n), to_string(h.p), to_string(h.q), fd(h.gap.lower()),
                fd(h.gap.upper()), fd(h.threshold.lower()), fd(h.threshold.upper()),
                fb(h.convergent)});
    }
    reps.add({fz(rr.replica), std::to_string(rr.seed), fz(rr.hits.size()), fz(rr.unit_hits),
              fz(rr.evaluated), fz(rr.undecided), fz(rr.final_half_hits), fz(rr.q_decades),
              fz(rr.q_decades_with_hit), fz(rr.n_decades), fz(rr.n_decades_with_hit)});
  }
  r.tables.push_back(std::move(hits));
  r.tables.push_back(std::move(reps));
  if (rep.series) {
    Table s{"series", {"n", "sum_lo", "sum_hi"}, {}};
    for (std::size_t i = 0; i < rep.series->checkpoints.size(); ++i) {
      s.add({fz(rep.series->checkpoints[i]), fd(rep.series->sums[i].lower()),
             fd(rep.series->sums[i].upper())});
    }
    r.tables.push_back(std::move(s));
  }
  r.seeds = replica_seeds(c.seed, c.replicas);
  return r;
}

RunResult run_renyi(const ExperimentConfig& c) {
  RunResult r;
  const RenyiCheckReport rep =
      c.law ? renyi_product_check(parse_law(*c.law), c.max_prefix_len, c.max_digit,
                                  c.max_future_len)
            : renyi_cylinder_check(c.max_prefix_len, c.max_digit, c.max_future_len);
  r.report = rep.to_json(c.series);
  Table pairs{"pairs", {"a", "b", "n", "ratio", "ratio_approx"}, {}};
  for (const auto& p : rep.pairs) {
    pairs.add({p.a.to_string(), p.b.to_string(), fz(p.n), to_string(p.ratio),
               fd(p.ratio.get_d())});
  }
  r.tables.push_back(std::move(pairs));
  return r;
}

RunResult run_dichotomy(const ExperimentConfig& c) {
  RunResult r;
  std::vector<DichotomyCase> cases;
  for (const auto& cc : c.cases) cases.push_back({cc.spec, cc.mean_finite, cc.horizon});
  DichotomyOptions opts;
  opts.finite_tail_threshold = c.finite_tail_threshold;
  opts.infinite_sup_threshold = c.infinite_sup_threshold;
  const DichotomyReport rep =
      dichotomy_experiment(cases, c.horizon, c.replicas, c.seed, c.jobs, opts);
  r.report = rep.to_json();
  Table summary{"summary",
                {"case", "sampler", "mean_finite", "predicted", "horizon", "passing", "replicas",
                 "median_sup", "median_tail"},
                {}};
  Table reps{"replicas", {"case", "replica", "seed", "sup_lo", "sup_hi", "tail_lo", "tail_hi"}, {}};
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    summary.add({fz(i), row.spec.dump(), fb(row.mean_finite), row.predicted,
                 fz(row.result.horizon), fz(row.passing), fz(row.result.replicas.size()),
                 fd(row.result.summary.running_sup.median), fd(row.result.summary.tail_max.median)});
    for (const auto& rt : row.result.replicas) {
      reps.add({fz(i), fz(rt.replica), std::to_string(rt.seed), fd(rt.trace.final_sup.lo),
                fd(rt.trace.final_sup.hi), fd(rt.trace.tail_max.lo), fd(rt.trace.tail_max.hi)});
      r.seeds.push_back(rt.seed);
    }
  }
  r.tables.push_back(std::move(summary));
  r.tables.push_back(std::move(reps));
  return r;
}

RunResult run_condensation(const ExperimentConfig& c) {
  RunResult r;
  const CondensationReport rep =
      condensation_equivalence_check(parse_law(*c.law), c.s_values, c.horizon);
  r.report = rep.to_json();
  Table classes{"classes", {"curve", "s", "increment_low", "increment_high", "class"}, {}};
  Table curves{"curves", {"curve", "s", "n", "sum_lo", "sum_hi"}, {}};
  auto add = [&](const std::string& name, const std::string& s, const CurveClass& cc) {
    classes.add({name, s, fd(cc.increment_low), fd(cc.increment_high),
                 cc.growing ? "growing" : "bounded"});
    for (std::size_t i = 0; i < cc.checkpoints.size(); ++i) {
      curves.add({name, s, fz(cc.checkpoints[i]), fd(cc.sums[i].lower()), fd(cc.sums[i].upper())});
    }
  };
  add("log_mean", "", rep.log_mean);
  for (const auto& row : rep.rows) add("series", to_string(row.s), row.series);
  r.tables.push_back(std::move(classes));
  r.tables.push_back(std::move(curves));
  return r;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  RunResult r;
  const std::string& e = config.experiment;
  if (e == "expand") {
    r = run_expand(config);
  } else if (e == "exponent") {
    r = run_exponent(config);
  } else if (e == "extravagance") {
    r = run_extravagance_experiment(config);
  } else if (e == "khinchin") {
    r = run_khinchin(config);
  } else if (e == "renyi-check") {
    r = run_renyi(config);
  } else if (e == "dichotomy") {
    r = run_dichotomy(config);
  } else if (e == "condensation") {
    r = run_condensation(config);
  } else {
    throw ConfigError("unknown experiment '" + e + "'");
  }
  r.experiment = e;
  return r;
}

int report_current_exception(std::ostream& err) {
  auto emit = [&](const char* cls, const std::string& msg, int code) {
    err << json{{"error", cls}, {"message", msg}, {"exit_code", code}}.dump() << '\n';
    return code;
  };
  try {
    throw;
  } catch (const ConfigError& e) {
    return emit("config", e.what(), kExitConfig);
  } catch (const UndecidableAtCap& e) {
    return emit("undecidable_at_cap", e.what(), kExitUndecidable);
  } catch (const std::exception& e) {
    return emit("internal", e.what(), kExitInternal);
  } catch (...) {
    return emit("internal", "unknown exception", kExitInternal);
  }
}

int run_and_emit(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string started = utc_timestamp();
    const RunResult result = run_experiment(config);
    const std::string finished = utc_timestamp();
    emit_report(config, result, out, started, finished);
    return kExitOk;
  } catch (...) {
    return report_current_exception(err);
  }
}

}  // namespace cflab
