// Copyright 2026 The gnp_lab Authors
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

#include "gnp_lab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gnp_lab/exploration.hpp"
#include "gnp_lab/graph.hpp"
#include "gnp_lab/report_io.hpp"
#include "gnp_lab/rng.hpp"
#include "gnp_lab/stats.hpp"
#include "gnp_lab/validation.hpp"
#include "gnp_lab/walks.hpp"

namespace gnp_lab {

namespace {

using nlohmann::json;

struct OutputOptions {
  std::string format = "json";
  std::string path;
  bool emit_table = false;
};

void add_output_options(CLI::App* command, OutputOptions& options) {
  command->add_option("--format", options.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  command->add_option("--out", options.path, "Write the report to PATH instead of stdout");
  command->add_flag("--emit-table", options.emit_table,
                    "Write plot-ready (x, y, stderr) columns instead of the report");
}

void write_output(const OutputOptions& options, const std::string& text, std::ostream& out) {
  if (options.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(options.path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + options.path + " for writing");
  file << text;
}

std::vector<std::int64_t> parse_sequence(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + item + "'");
    }
  }
  return values;
}

// Equal-width histogram of the finite values as (x, density, stderr).
Table histogram_table(const Metric& metric, std::size_t bins = 20) {
  Table table;
  table.columns = {"x", "density", "stderr"};
  std::vector<double> finite;
  for (const double v : metric.values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.empty()) return table;
  const auto [lo_it, hi_it] = std::minmax_element(finite.begin(), finite.end());
  const double lo = *lo_it;
  const double width = *hi_it > lo ? (*hi_it - lo) / static_cast<double>(bins) : 1.0;
  std::vector<double> counts(bins, 0.0);
  for (const double v : finite) {
    const auto bin = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
    counts[bin] += 1.0;
  }
  const double total = static_cast<double>(finite.size());
  for (std::size_t b = 0; b < bins; ++b) {
    const double frac = counts[b] / total;
    table.rows.push_back({lo + (static_cast<double>(b) + 0.5) * width, frac / width,
                          std::sqrt(frac * (1.0 - frac) / total) / width});
  }
  return table;
}

unsigned env_threads() {
  if (const char* value = std::getenv("GNP_LAB_THREADS")) {
    try {
      const long parsed = std::stol(value);
      if (parsed >= 1) return static_cast<unsigned>(parsed);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

// ---- explore ---------------------------------------------------------------

struct ExploreArgs {
  std::uint64_t n = 0;
  std::optional<double> p;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  bool trace = false;
  bool first_component = false;
  std::string graph_path;
  OutputOptions output;
};

int run_explore(const ExploreArgs& args, std::ostream& out, std::ostream& err) {
  ExplorationOutcome outcome;
  const ExploreOptions options{args.trace, args.first_component};
  json meta;
  if (!args.graph_path.empty()) {
    std::ifstream file(args.graph_path);
    if (!file) {
      err << "explore: cannot open " << args.graph_path << "\n";
      return kExitUsage;
    }
    const EdgeList graph = read_edge_list(file);
    outcome = explore_explicit(graph, {}, options);
    meta = {{"n", graph.n}, {"edges", graph.edges.size()}, {"graph", args.graph_path}};
  } else {
    if (args.n == 0 || (!args.p && !args.epsilon)) {
      err << "explore: need --graph, or --n with one of --p/--epsilon\n";
      return kExitUsage;
    }
    const GnpParams params = args.p ? GnpParams::from_p(args.n, *args.p)
                                    : GnpParams::from_epsilon(args.n, *args.epsilon);
    RngStream stream = derive_stream(args.seed, 0);
    outcome = explore_implicit(params, stream, options);
    meta = {{"n", params.n}, {"p", params.p}, {"epsilon", params.epsilon}, {"seed", args.seed}};
  }

  std::string text;
  if (args.output.format == "csv" || args.output.emit_table) {
    std::ostringstream csv;
    if (outcome.trace) {
      csv << "t,A,N,Y,Z\n";
      for (const auto& s : *outcome.trace) {
        csv << s.t << ',' << s.active << ',' << s.neutral << ',' << s.walk << ','
            << s.finished_components << '\n';
      }
    } else {
      csv << "component,record_time,size\n";
      for (std::size_t i = 0; i < outcome.component_sizes.size(); ++i) {
        csv << i << ',' << outcome.record_times[i] << ',' << outcome.component_sizes[i] << '\n';
      }
    }
    text = csv.str();
  } else {
    json report = outcome_to_json(outcome);
    report["params"] = meta;
    report["version"] = std::string(kVersionTag);
    text = report.dump(2) + "\n";
  }
  write_output(args.output, text, out);
  return kExitOk;
}

// ---- walk ------------------------------------------------------------------

struct WalkArgs {
  std::uint64_t m = 0;
  double epsilon = 0.0;
  std::string mode = "tail";
  std::uint64_t t_max = 0;
  std::uint64_t cap = 0;
  std::uint64_t replicas = 10000;
  std::uint64_t seed = 0;
  OutputOptions output;
};

int run_walk(const WalkArgs& args, std::ostream& out) {
  const WalkParams params = WalkParams::make(args.m, args.epsilon);
  json meta{{"m", params.m}, {"epsilon", params.epsilon}, {"p", params.p}};
  if (params.m >= 2) meta["q"] = q_value(params);
  std::string text;

  if (args.mode == "simulate") {
    const std::uint64_t cap =
        args.cap ? args.cap
                 : static_cast<std::uint64_t>(std::ceil(100.0 / (args.epsilon * args.epsilon)));
    std::vector<double> taus(args.replicas);
    std::uint64_t censored = 0;
    for (std::uint64_t r = 0; r < args.replicas; ++r) {
      RngStream stream = derive_stream(args.seed, r);
      const auto tau = simulate_tau(params, stream, cap);
      taus[r] = tau ? static_cast<double>(*tau) : std::nan("");
      censored += tau ? 0 : 1;
    }
    if (args.output.emit_table) {
      Table table;
      table.columns = {"T", "tail", "stderr"};
      const double unit = 1.0 / (args.epsilon * args.epsilon);
      std::vector<std::uint64_t> grid{1};
      for (int k = 1; k <= 20 && k * unit <= static_cast<double>(cap); ++k) {
        grid.push_back(static_cast<std::uint64_t>(std::llround(k * unit)));
      }
      const double total = static_cast<double>(args.replicas);
      for (const auto horizon : grid) {
        double count = 0.0;
        for (const double tau : taus) {
          count += (!std::isfinite(tau) || tau >= static_cast<double>(horizon)) ? 1.0 : 0.0;
        }
        const double frac = count / total;
        table.rows.push_back(
            {static_cast<double>(horizon), frac, std::sqrt(frac * (1.0 - frac) / total)});
      }
      text = table_to_csv(table);
    } else if (args.output.format == "csv") {
      std::ostringstream csv;
      csv << "replica,tau\n";
      for (std::size_t r = 0; r < taus.size(); ++r) {
        csv << r << ',';
        if (std::isfinite(taus[r])) csv << static_cast<std::uint64_t>(taus[r]);
        csv << '\n';
      }
      text = csv.str();
    } else {
      std::vector<double> finite;
      json per_replica = json::array();
      for (const double tau : taus) {
        if (std::isfinite(tau)) {
          finite.push_back(tau);
          per_replica.push_back(static_cast<std::uint64_t>(tau));
        } else {
          per_replica.push_back(nullptr);
        }
      }
      const SummaryStats s = summarize(finite);
      json report{{"params", meta},
                  {"seed", args.seed},
                  {"cap", cap},
                  {"replicas", args.replicas},
                  {"censored", censored},
                  {"per_replica", std::move(per_replica)},
                  {"stats", {{"mean", s.mean}, {"std_error", s.std_error}, {"median", s.median}}},
                  {"target", {{"mean", 1.0 / args.epsilon}}},
                  {"version", std::string(kVersionTag)}};
      text = report.dump(2) + "\n";
    }
  } else {
    const TauDistribution dist = tau_distribution(params, args.t_max);
    if (args.output.emit_table) {
      Table table;
      table.columns = {"T", args.mode == "pmf" ? "pmf" : "tail", "stderr"};
      for (std::uint64_t t = 1; t <= dist.t_max(); ++t) {
        table.rows.push_back({static_cast<double>(t),
                              args.mode == "pmf" ? dist.pmf_at(t) : dist.tail_at(t), 0.0});
      }
      text = table_to_csv(table);
    } else if (args.output.format == "csv") {
      std::ostringstream csv;
      csv << "t,pmf,tail\n";
      for (std::uint64_t t = 1; t <= dist.t_max(); ++t) {
        csv << t << ',' << json(dist.pmf_at(t)).dump() << ',' << json(dist.tail_at(t)).dump()
            << '\n';
      }
      text = csv.str();
    } else {
      json report{{"params", meta},
                  {"t_max", dist.t_max()},
                  {"truncation_mass", dist.truncation_mass},
                  {"version", std::string(kVersionTag)}};
      if (args.mode == "pmf") {
        report["pmf"] = dist.pmf;
      } else {
        report["tail"] = dist.tail;
      }
      text = report.dump(2) + "\n";
    }
  }
  write_output(args.output, text, out);
  return kExitOk;
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string config_path;
  std::string kind;
  std::optional<std::uint64_t> n;
  std::optional<double> epsilon;
  std::optional<double> lambda;
  std::optional<double> p;
  std::optional<std::uint64_t> ell;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> replicas;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> cap;
  std::optional<double> band_low;
  std::optional<double> band_high;
  std::vector<std::uint64_t> grid;
  OutputOptions output;
};

ExperimentConfig resolve_config(const ExperimentArgs& args) {
  ExperimentConfig config;
  bool file_sets_threads = false;
  if (!args.config_path.empty()) {
    config = load_config(args.config_path);
    std::ifstream file(args.config_path);
    const json raw = json::parse(file, nullptr, false);
    file_sets_threads = raw.is_object() && (raw.contains("parallelism") || raw.contains("threads"));
  } else if (args.kind.empty()) {
    throw ConfigError("kind", "required (pass --kind or --config)");
  }
  if (!args.kind.empty()) {
    try {
      config.kind = parse_experiment_kind(args.kind);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("kind", e.what());
    }
  }
  // A distance flag replaces whichever distance parameter the file used.
  if (args.epsilon || args.lambda || args.p) {
    config.epsilon = args.epsilon;
    config.lambda = args.lambda;
    config.p = args.p;
  }
  if (args.n) config.n = *args.n;
  if (args.ell) config.ell = *args.ell;
  if (args.m) config.m = *args.m;
  if (args.replicas) config.replicas = *args.replicas;
  if (args.seed) config.master_seed = *args.seed;
  if (args.cap) config.cap = *args.cap;
  if (args.band_low) config.band_low = *args.band_low;
  if (args.band_high) config.band_high = *args.band_high;
  if (!args.grid.empty()) config.grid = args.grid;
  if (args.threads) {
    config.parallelism = *args.threads;
  } else if (const unsigned env = env_threads(); env > 0) {
    config.parallelism = env;
  } else if (!file_sets_threads) {
    config.parallelism = 1;
  }
  config.validate();
  return config;
}

int run_experiment_command(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(args);
  for (const auto& warning : config.warnings()) err << "warning: " << warning << "\n";
  const ExperimentReport report = run_experiment(config);

  std::string text;
  if (args.output.emit_table) {
    if (!report.table.columns.empty()) {
      text = table_to_csv(report.table);
    } else {
      // Histogram of the first ratio-like metric.
      const Metric* chosen = &report.metrics.front();
      for (const auto& metric : report.metrics) {
        if (metric.target || metric.name.starts_with("scaled")) {
          chosen = &metric;
          break;
        }
      }
      text = table_to_csv(histogram_table(*chosen));
    }
  } else if (args.output.format == "csv") {
    text = report_to_csv(report);
  } else {
    text = report_to_json(report).dump(2) + "\n";
  }
  write_output(args.output, text, out);
  for (const auto& check : report.checks) {
    if (!check.pass) {
      err << "check failed: " << check.name << " = " << check.value << " not in [" << check.low
          << ", " << check.high << "]\n";
    }
  }
  return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("config", "cannot open " + path);
  json object;
  try {
    object = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("parse error: ") + e.what());
  }
  ExperimentConfig config = config_from_json(object);
  config.validate();
  return config;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exploration-process laboratory for G(n,p) component sizes", "gnp_lab"};
  app.require_subcommand(1);

  ExploreArgs explore;
  auto* explore_cmd = app.add_subcommand("explore", "Run the exploration process once");
  explore_cmd->add_option("--n", explore.n, "Vertex count");
  auto* explore_p = explore_cmd->add_option("--p", explore.p, "Edge probability");
  auto* explore_eps =
      explore_cmd->add_option("--epsilon", explore.epsilon, "Use p = (1 + epsilon)/n");
  explore_p->excludes(explore_eps);
  explore_cmd->add_option("--seed", explore.seed, "Master seed");
  explore_cmd->add_flag("--trace", explore.trace, "Record A, N, Y, Z at every step");
  explore_cmd->add_flag("--first-component", explore.first_component,
                        "Stop at the first record minimum");
  auto* graph_opt = explore_cmd->add_option("--graph", explore.graph_path,
                                            "Explore an explicit edge-list file instead");
  graph_opt->excludes(explore_p)->excludes(explore_eps);
  add_output_options(explore_cmd, explore.output);

  WalkArgs walk;
  auto* walk_cmd = app.add_subcommand("walk", "Hitting time of the Bin(m,p) - 1 walk");
  walk_cmd->add_option("--m", walk.m, "Trials per step")->required();
  walk_cmd->add_option("--epsilon", walk.epsilon, "p = (1 - epsilon)/m")->required();
  walk_cmd->add_option("--mode", walk.mode, "pmf, tail, or simulate")
      ->check(CLI::IsMember({"pmf", "tail", "simulate"}));
  walk_cmd->add_option("--t-max", walk.t_max, "Table horizon (default ceil(20/eps^2))");
  walk_cmd->add_option("--cap", walk.cap, "Censoring cap for simulate");
  walk_cmd->add_option("--replicas", walk.replicas, "Simulated runs");
  walk_cmd->add_option("--seed", walk.seed, "Master seed");
  add_output_options(walk_cmd, walk.output);

  std::string sequence;
  auto* spitzer_cmd = app.add_subcommand("spitzer", "Unique good rotation of a sequence");
  spitzer_cmd->add_option("--seq", sequence, "Comma-separated integers >= -1 summing to -1")
      ->required()
      ->allow_extra_args(false);

  ExperimentArgs experiment;
  auto* exp_cmd = app.add_subcommand("experiment", "Replicated Monte Carlo experiment");
  exp_cmd->add_option("--config", experiment.config_path, "JSON configuration file");
  exp_cmd->add_option("--kind", experiment.kind,
                      "subcritical, supercritical, window, moment_audit, tail_audit, "
                      "neutral_audit");
  exp_cmd->add_option("--n", experiment.n, "Vertex count");
  auto* exp_eps = exp_cmd->add_option("--epsilon", experiment.epsilon, "Distance from 1/n");
  auto* exp_lambda = exp_cmd->add_option("--lambda", experiment.lambda, "Window parameter");
  auto* exp_p = exp_cmd->add_option("--p", experiment.p, "Edge probability (neutral_audit)");
  exp_eps->excludes(exp_lambda)->excludes(exp_p);
  exp_lambda->excludes(exp_p);
  exp_cmd->add_option("--ell", experiment.ell, "Component rank");
  exp_cmd->add_option("--m", experiment.m, "Walk trials per step (tail_audit)");
  exp_cmd->add_option("--replicas", experiment.replicas, "Replica count");
  exp_cmd->add_option("--seed", experiment.seed, "Master seed");
  exp_cmd->add_option("--threads", experiment.threads, "Worker threads (env GNP_LAB_THREADS)");
  exp_cmd->add_option("--cap", experiment.cap, "Censoring cap (tail_audit)");
  exp_cmd->add_option("--grid", experiment.grid, "Step or horizon grid")->delimiter(',');
  exp_cmd->add_option("--band-low", experiment.band_low, "Override primary band low end");
  exp_cmd->add_option("--band-high", experiment.band_high, "Override primary band high end");
  add_output_options(exp_cmd, experiment.output);

  std::uint64_t validate_seed = 20240601;
  auto* validate_cmd = app.add_subcommand("validate", "Run the small-scale oracle suite");
  validate_cmd->add_option("--seed", validate_seed, "Master seed");

  std::vector<std::string> argv_storage{"gnp_lab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (explore_cmd->parsed()) return run_explore(explore, out, err);
    if (walk_cmd->parsed()) return run_walk(walk, out);
    if (spitzer_cmd->parsed()) {
      const std::vector<std::int64_t> seq = parse_sequence(sequence);
      std::size_t j = 0;
      try {
        j = spitzer_unique_rotation(seq);
      } catch (const std::logic_error& e) {
        if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) throw;
        err << "cycle lemma violated: " << e.what() << "\n";
        return kExitCheckFailed;
      }
      out << json{{"j", j}}.dump() << "\n";
      return kExitOk;
    }
    if (exp_cmd->parsed()) return run_experiment_command(experiment, out, err);
    if (validate_cmd->parsed()) {
      bool all = true;
      const auto results = run_validation_suite(validate_seed, [&](const ValidationResult& r) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        out.flush();
      });
      for (const auto& r : results) all = all && r.pass;
      return all ? kExitOk : kExitCheckFailed;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace gnp_lab
