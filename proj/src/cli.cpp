/*
 * Copyright 2026 The proxysim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "proxysim/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "CLI11.hpp"
#include "json.hpp"
#include "proxysim/analytics.hpp"
#include "proxysim/cache.hpp"
#include "proxysim/popularity.hpp"
#include "proxysim/simulator.hpp"
#include "proxysim/workload.hpp"

namespace proxysim {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSubcommands[] = {"gen", "run", "sweep", "estimate"};

struct GenerationFlags {
  std::uint64_t objects = kDefaultObjects;
  double alpha = 0.98;
  std::uint64_t requests = kDefaultRequests;
  std::size_t session = kDefaultSessionSize;
  std::uint64_t seed = 0;
};

struct AttributeFlags {
  double size_min = kDefaultSizeRangeKb.lo;
  double size_max = kDefaultSizeRangeKb.hi;
  double time_min = kDefaultChannelRangeMs.lo;
  double time_max = kDefaultChannelRangeMs.hi;
};

struct ModelFlags {
  double k = 1.0;
  std::string rate = "product";
  std::string mode = "exact";
};

void add_generation_flags(CLI::App* cmd, GenerationFlags& flags,
                          bool with_alpha = true) {
  cmd->add_option("--objects", flags.objects, "Number of distinct objects N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_alpha) {
    cmd->add_option("--alpha", flags.alpha, "Zipf exponent (>= 0)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
  cmd->add_option("--requests", flags.requests,
                  "Total requests R in the generated stream")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--session", flags.session, "Requests per session buffer")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Random seed (required)")->required();
}

void add_attribute_flags(CLI::App* cmd, AttributeFlags& flags) {
  cmd->add_option("--size-min", flags.size_min, "Smallest object size (kb)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--size-max", flags.size_max, "Largest object size (kb)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--time-min", flags.time_min,
                  "Shortest channel activity time (ms)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--time-max", flags.time_max,
                  "Longest channel activity time (ms)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_model_flags(CLI::App* cmd, ModelFlags& flags,
                     const std::string& default_mode) {
  flags.mode = default_mode;
  cmd->add_option("--k", flags.k, "Loss threshold k in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--rate", flags.rate,
                  "Per-object rate b_i: product (kb*ms) or ratio (kb/ms)")
      ->check(CLI::IsMember({"product", "ratio"}))
      ->capture_default_str();
  cmd->add_option("--mode", flags.mode,
                  "Top-C mass used by the model: exact, paper or corrected")
      ->check(CLI::IsMember({"exact", "paper", "corrected"}))
      ->capture_default_str();
}

void add_config_flag(CLI::App* cmd) {
  // Consumed before parsing; registered so it is accepted and documented.
  cmd->add_option("--config", "Flat key=value file; flags override it");
}

SimConfig make_config(const GenerationFlags& gen, const AttributeFlags& attr,
                      const ModelFlags& model) {
  SimConfig config;
  config.n_objects = gen.objects;
  config.alpha = gen.alpha;
  config.total_requests = gen.requests;
  config.session_size = gen.session;
  config.seed = gen.seed;
  config.size_range_kb = {attr.size_min, attr.size_max};
  config.time_range_ms = {attr.time_min, attr.time_max};
  config.k = model.k;
  config.rate = parse_rate_convention(model.rate);
  config.mass = parse_mass_model(model.mode);
  return config;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void print_totals(const SimReport& report, std::ostream& out) {
  const SimTotals& t = report.totals;
  out << "alpha=" << format_double(report.config.alpha)
      << " capacity=" << report.config.cache_capacity
      << " policy=" << policy_name(report.config.policy)
      << " requests=" << t.requests << " hits=" << t.hits
      << " misses=" << t.misses << " hit_ratio=" << format_double(t.hit_ratio)
      << " total_bandwidth=" << format_double(t.total_bandwidth) << '\n';
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  return std::move(buffer).str();
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.starts_with(flag + "=");
  });
}

// Splices `--key=value` pairs from --config into the arguments right after
// the subcommand, skipping keys already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path) return args;

  auto sub = std::find_if(args.begin() + 1, args.end(), [](const auto& a) {
    return std::find(std::begin(kSubcommands), std::end(kSubcommands), a) !=
           std::end(kSubcommands);
  });
  if (sub == args.end()) return args;

  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config_file(*config_path)) {
    if (key == "config" || has_flag(args, key)) continue;
    injected.push_back("--" + key + "=" + value);
  }
  args.insert(sub + 1, injected.begin(), injected.end());
  return args;
}

int cmd_gen(const GenerationFlags& gen, const std::string& out_path,
            std::ostream& out) {
  const ZipfCatalog catalog = ZipfCatalog::build(gen.objects, gen.alpha);
  const Workload workload =
      generate_workload(catalog, gen.requests, gen.session, gen.seed);

  OutputSet outputs;
  outputs.add(out_path, render([&](std::ostream& s) { write_trace(workload, s); }));
  outputs.commit();
  out << "wrote " << workload.size() << " requests in "
      << workload.session_count() << " sessions to " << out_path << '\n';
  return 0;
}

int cmd_run(SimConfig config, const std::string& trace_path,
            const std::string& out_dir, std::ostream& out) {
  Workload workload;
  if (!trace_path.empty()) {
    workload = load_trace(trace_path);
  } else {
    validate(config);
    const ZipfCatalog catalog =
        ZipfCatalog::build(config.n_objects, config.alpha);
    workload = generate_workload(catalog, config.total_requests,
                                 config.session_size, config.seed);
  }

  const SimReport report = run_simulation(config, workload);
  const std::uint64_t capacities[] = {config.cache_capacity};
  const auto rows = compare_analytic(report.config, workload, capacities);

  OutputSet outputs;
  const fs::path dir(out_dir);
  outputs.add(dir / "report.csv",
              render([&](std::ostream& s) { write_report_csv(report, s); }));
  outputs.add(dir / "summary.json", summary_json(report));
  outputs.add(dir / "compare.csv",
              render([&](std::ostream& s) { write_comparison_csv(rows, s); }));
  outputs.commit();

  print_totals(report, out);
  out << "top_c_mass=" << format_double(rows.front().top_c_mass)
      << " gap=" << format_double(rows.front().gap) << '\n';
  return 0;
}

std::string point_file_name(const SimReport& report) {
  return "report_alpha" + format_double(report.config.alpha) + "_cap" +
         std::to_string(report.config.cache_capacity) + ".csv";
}

int cmd_sweep(const SweepConfig& config, const std::string& out_dir,
              std::ostream& out) {
  const auto reports = sweep(config);

  OutputSet outputs;
  const fs::path dir(out_dir);
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const SimReport& report : reports) {
    const std::string name = point_file_name(report);
    outputs.add(dir / name,
                render([&](std::ostream& s) { write_report_csv(report, s); }));

    RankHistogram histogram;
    for (const RankTally& t : report.per_rank) histogram.counts.push_back(t.requests);
    nlohmann::ordered_json slope = nullptr;
    if (report.per_rank.size() >= 10) {
      try {
        slope = fit_power_law(
                    histogram,
                    std::min<std::uint64_t>(100, report.per_rank.size()))
                    .slope;
      } catch (const std::invalid_argument&) {
      }
    }
    points.push_back({
        {"file", name},
        {"sweep_index", report.sweep_index},
        {"alpha", report.config.alpha},
        {"capacity", report.config.cache_capacity},
        {"seed", report.workload_seed},
        {"hit_ratio", report.totals.hit_ratio},
        {"miss_ratio", report.totals.miss_ratio},
        {"total_bandwidth", report.totals.total_bandwidth},
        {"power_law_slope", slope},
    });
  }

  const SimConfig& base = config.base;
  nlohmann::ordered_json manifest;
  manifest["base_seed"] = base.seed;
  manifest["n_objects"] = base.n_objects;
  manifest["total_requests"] = base.total_requests;
  manifest["session_size"] = base.session_size;
  manifest["policy"] = std::string(policy_name(base.policy));
  manifest["k"] = base.k;
  manifest["rate"] = std::string(rate_convention_name(base.rate));
  manifest["points"] = std::move(points);
  outputs.add(dir / "manifest.json", manifest.dump(2) + "\n");
  outputs.commit();

  for (const SimReport& report : reports) print_totals(report, out);
  return 0;
}

int cmd_estimate(const GenerationFlags& gen, const AttributeFlags& attr,
                 const ModelFlags& model, std::uint64_t capacity,
                 const std::string& out_path, std::ostream& out) {
  SimConfig config = make_config(gen, attr, model);
  config.cache_capacity = capacity;
  validate(config);

  const ZipfCatalog catalog = ZipfCatalog::build(gen.objects, gen.alpha);
  const ObjectAttributes attributes =
      assign_attributes(gen.objects, config.size_range_kb, config.time_range_ms,
                        derive_seed(gen.seed, kAttributeStream));
  const ModelReport report = build_model_report(catalog, attributes,
                                                config.bandwidth(), gen.requests);

  OutputSet outputs;
  outputs.add(out_path,
              render([&](std::ostream& s) { write_model_report_csv(report, s); }));
  outputs.commit();

  out << "top_c_mass=" << format_double(report.top_c_mass)
      << " demand_mass=" << format_double(report.demand_mass)
      << " h_demand=" << format_double(report.h_demand)
      << " aggregate_bandwidth=" << format_double(report.aggregate_bandwidth)
      << '\n';
  return 0;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(
    const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path.string());
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.starts_with("--")) key.erase(0, 2);
    entries.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return entries;
}

void OutputSet::add(fs::path path, std::string contents) {
  paths_.push_back(std::move(path));
  contents_.push_back(std::move(contents));
}

void OutputSet::commit() {
  std::vector<fs::path> temps;
  std::vector<fs::path> published;
  std::vector<fs::path> created_dirs;
  try {
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const fs::path parent = paths_[i].parent_path();
      if (!parent.empty() && !fs::exists(parent)) {
        fs::create_directories(parent);
        created_dirs.push_back(parent);
      }
      fs::path temp = paths_[i];
      temp += ".partial";
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + temp.string());
      temps.push_back(temp);
      out << contents_[i];
      out.close();
      if (!out) throw std::runtime_error("write failed for " + temp.string());
    }
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      fs::rename(temps[i], paths_[i]);
      published.push_back(paths_[i]);
    }
  } catch (const std::exception& e) {
    std::error_code ignored;
    for (const auto& p : temps) fs::remove(p, ignored);
    for (const auto& p : published) fs::remove(p, ignored);
    for (auto it = created_dirs.rbegin(); it != created_dirs.rend(); ++it) {
      fs::remove(*it, ignored);  // only succeeds when empty
    }
    throw std::runtime_error(std::string("output not written: ") + e.what());
  }
}

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Trace-driven web proxy cache simulator and Zipf demand model",
               "proxysim"};
  app.require_subcommand(1);

  GenerationFlags gen;
  AttributeFlags attr;
  ModelFlags model;
  std::string out_path;
  std::string out_dir;
  std::string trace_path;
  std::string policy = "session_lfu";
  std::uint64_t capacity = kDefaultCapacity;
  std::vector<double> alphas(std::begin(kDefaultAlphas), std::end(kDefaultAlphas));
  std::vector<std::uint64_t> capacities{kDefaultCapacity};

  auto* gen_cmd = app.add_subcommand("gen", "Generate a Zipf request trace");
  add_generation_flags(gen_cmd, gen);
  gen_cmd->add_option("--out", out_path, "Trace file to write")->required();
  add_config_flag(gen_cmd);

  auto* run_cmd =
      app.add_subcommand("run", "Simulate one cache over a generated or saved trace");
  add_generation_flags(run_cmd, gen);
  add_attribute_flags(run_cmd, attr);
  add_model_flags(run_cmd, model, "exact");
  run_cmd->add_option("--trace", trace_path,
                      "Replay this trace instead of generating one");
  run_cmd->add_option("--capacity", capacity, "Cache capacity C (objects)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--policy", policy, "session_lfu, lru or lfu_classic")
      ->capture_default_str();
  run_cmd->add_option("--out-dir", out_dir,
                      "Directory for report.csv, summary.json, compare.csv")
      ->required();
  add_config_flag(run_cmd);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Simulate every (alpha, capacity) pair");
  add_generation_flags(sweep_cmd, gen, false);
  add_attribute_flags(sweep_cmd, attr);
  add_model_flags(sweep_cmd, model, "exact");
  sweep_cmd->add_option("--alphas", alphas, "Comma-separated Zipf exponents")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--capacities", capacities,
                        "Comma-separated cache capacities (objects)")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--policy", policy, "session_lfu, lru or lfu_classic")
      ->capture_default_str();
  sweep_cmd->add_option("--out-dir", out_dir,
                        "Directory for per-point CSVs and manifest.json")
      ->required();
  add_config_flag(sweep_cmd);

  auto* estimate_cmd = app.add_subcommand(
      "estimate", "Closed-form miss and bandwidth model for one catalog");
  add_generation_flags(estimate_cmd, gen);
  add_attribute_flags(estimate_cmd, attr);
  add_model_flags(estimate_cmd, model, "corrected");
  estimate_cmd->add_option("--capacity", capacity, "Cache capacity C (objects)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  estimate_cmd->add_option("--out", out_path, "Model report CSV to write")
      ->required();
  add_config_flag(estimate_cmd);

  try {
    args = merge_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (gen_cmd->parsed()) {
      return cmd_gen(gen, out_path, out);
    }
    if (run_cmd->parsed()) {
      SimConfig config = make_config(gen, attr, model);
      config.cache_capacity = capacity;
      config.policy = parse_policy(policy);
      return cmd_run(config, trace_path, out_dir, out);
    }
    if (sweep_cmd->parsed()) {
      if (alphas.empty() || capacities.empty()) {
        throw std::invalid_argument("sweep lists must not be empty");
      }
      SweepConfig config;
      config.base = make_config(gen, attr, model);
      config.base.policy = parse_policy(policy);
      config.alphas = alphas;
      config.capacities = capacities;
      return cmd_sweep(config, out_dir, out);
    }
    if (estimate_cmd->parsed()) {
      return cmd_estimate(gen, attr, model, capacity, out_path, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace proxysim
