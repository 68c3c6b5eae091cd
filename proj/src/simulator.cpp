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

#include "proxysim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace proxysim {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> import_rates(const SimConfig& config,
                                 const ObjectAttributes& attributes) {
  std::vector<double> rates(attributes.n_objects());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    rates[i] = config.k * object_rate(attributes, i + 1, config.rate);
  }
  return rates;
}

ObjectAttributes attributes_for(const SimConfig& config,
                                std::uint64_t n_objects) {
  return assign_attributes(n_objects, config.size_range_kb,
                           config.time_range_ms,
                           derive_seed(config.seed, kAttributeStream));
}

}  // namespace

void validate(const SimConfig& config) {
  if (config.n_objects == 0) throw std::invalid_argument("n_objects must be >= 1");
  if (config.total_requests == 0) throw std::invalid_argument("requests must be >= 1");
  if (config.session_size == 0) throw std::invalid_argument("session size must be >= 1");
  if (config.cache_capacity == 0) throw std::invalid_argument("capacity must be >= 1");
  if (!std::isfinite(config.alpha) || config.alpha < 0.0) {
    throw std::invalid_argument("alpha must be finite and >= 0");
  }
  validate(config.bandwidth());
  // Surfaces range errors before any work is done.
  assign_attributes(1, config.size_range_kb, config.time_range_ms, 0);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SimReport tally_outcomes(const SimConfig& config,
                         std::span<const AccessOutcome> outcomes,
                         std::span<const double> import_rate) {
  SimReport report;
  report.config = config;
  report.per_rank.resize(config.n_objects);
  for (const AccessOutcome& outcome : outcomes) {
    RankTally& tally = report.per_rank.at(outcome.rank - 1);
    ++tally.requests;
    if (outcome.hit) {
      ++tally.hits;
    } else {
      ++tally.misses;
    }
  }

  SimTotals& totals = report.totals;
  for (std::size_t i = 0; i < report.per_rank.size(); ++i) {
    RankTally& tally = report.per_rank[i];
    tally.imported_bandwidth =
        static_cast<double>(tally.misses) * import_rate[i];
    totals.requests += tally.requests;
    totals.hits += tally.hits;
    totals.misses += tally.misses;
    totals.total_bandwidth += tally.imported_bandwidth;
  }
  if (totals.requests > 0) {
    totals.hit_ratio = static_cast<double>(totals.hits) /
                       static_cast<double>(totals.requests);
    totals.miss_ratio = static_cast<double>(totals.misses) /
                        static_cast<double>(totals.requests);
  }
  return report;
}

SimReport run_simulation(const SimConfig& config) {
  validate(config);
  const auto start = Clock::now();

  const ZipfCatalog catalog = ZipfCatalog::build(config.n_objects, config.alpha);
  const Workload workload = generate_workload(
      catalog, config.total_requests, config.session_size, config.seed);
  const ObjectAttributes attributes = attributes_for(config, config.n_objects);

  const auto outcomes =
      run_policy(config.policy, config.cache_capacity, workload);
  SimReport report =
      tally_outcomes(config, outcomes, import_rates(config, attributes));
  report.workload_seed = config.seed;
  report.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SimReport run_simulation(const SimConfig& config, const Workload& workload) {
  SimConfig effective = config;
  effective.n_objects = workload.n_objects;
  effective.total_requests = workload.size();
  validate(effective);
  const auto start = Clock::now();

  const ObjectAttributes attributes =
      attributes_for(effective, effective.n_objects);
  const auto outcomes =
      run_policy(effective.policy, effective.cache_capacity, workload);
  SimReport report =
      tally_outcomes(effective, outcomes, import_rates(effective, attributes));
  report.workload_seed = workload.seed;
  report.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<SimReport> sweep(const SweepConfig& config, unsigned threads) {
  const std::vector<double> alphas =
      config.alphas.empty() ? std::vector<double>{config.base.alpha}
                            : config.alphas;
  const std::vector<std::uint64_t> capacities =
      config.capacities.empty()
          ? std::vector<std::uint64_t>{config.base.cache_capacity}
          : config.capacities;

  std::vector<SimConfig> points;
  for (const double alpha : alphas) {
    for (const std::uint64_t capacity : capacities) {
      SimConfig point = config.base;
      point.alpha = alpha;
      point.cache_capacity = capacity;
      point.seed = config.base.seed ^ points.size();
      validate(point);
      points.push_back(point);
    }
  }

  std::vector<SimReport> reports(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        reports[i] = run_simulation(points[i]);
        reports[i].sweep_index = i;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

std::vector<ComparisonRow> compare_analytic(
    const SimConfig& config, std::span<const std::uint64_t> capacities) {
  validate(config);
  const ZipfCatalog catalog = ZipfCatalog::build(config.n_objects, config.alpha);
  const Workload workload = generate_workload(
      catalog, config.total_requests, config.session_size, config.seed);
  return compare_analytic(config, workload, capacities);
}

std::vector<ComparisonRow> compare_analytic(
    const SimConfig& config, const Workload& workload,
    std::span<const std::uint64_t> capacities) {
  SimConfig base = config;
  base.n_objects = workload.n_objects;
  base.total_requests = workload.size();
  validate(base);

  const ZipfCatalog catalog = ZipfCatalog::build(base.n_objects, base.alpha);
  const ObjectAttributes attributes = attributes_for(base, base.n_objects);
  const auto rates = import_rates(base, attributes);

  std::vector<ComparisonRow> rows;
  rows.reserve(capacities.size());
  for (const std::uint64_t capacity : capacities) {
    SimConfig point = base;
    point.cache_capacity = capacity;
    validate(point);
    const auto outcomes = run_policy(point.policy, capacity, workload);
    const SimReport report = tally_outcomes(point, outcomes, rates);

    ComparisonRow row;
    row.capacity = capacity;
    row.simulated_hit_ratio = report.totals.hit_ratio;
    row.top_c_mass = top_c_mass(catalog, std::min(capacity, base.n_objects));
    row.gap = row.top_c_mass - row.simulated_hit_ratio;
    row.sim_bandwidth = report.totals.total_bandwidth;

    BandwidthParams params = point.bandwidth();
    params.rate = RateConvention::kProduct;
    row.model_bandwidth_product =
        aggregate_bandwidth(attributes, params, catalog, base.n_objects);
    params.rate = RateConvention::kRatio;
    row.model_bandwidth_ratio =
        aggregate_bandwidth(attributes, params, catalog, base.n_objects);
    rows.push_back(row);
  }
  return rows;
}

PowerLawFit fit_power_law(std::span<const double> counts,
                          std::uint64_t max_rank) {
  if (max_rank < 10) {
    throw std::invalid_argument("power-law fit needs max_rank >= 10");
  }
  const std::uint64_t last = std::min<std::uint64_t>(max_rank, counts.size());
  std::vector<double> log_rank;
  std::vector<double> log_count;
  for (std::uint64_t rank = 1; rank <= last; ++rank) {
    const double count = counts[rank - 1];
    if (!(count > 0.0)) continue;
    log_rank.push_back(std::log(static_cast<double>(rank)));
    log_count.push_back(std::log(count));
  }
  if (log_rank.size() < 3) {
    throw std::invalid_argument("power-law fit needs three non-empty ranks");
  }
  const LineFit line = fit_line(log_rank, log_count);
  return {line.slope, line.r_squared, line.points};
}

PowerLawFit fit_power_law(const RankHistogram& histogram,
                          std::uint64_t max_rank) {
  const std::vector<double> counts(histogram.counts.begin(),
                                   histogram.counts.end());
  return fit_power_law(counts, max_rank);
}

void write_report_csv(const SimReport& report, std::ostream& out) {
  out << "rank,log100_rank,requests,hits,misses,bandwidth\n";
  char buf[160];
  for (std::size_t i = 0; i < report.per_rank.size(); ++i) {
    const RankTally& t = report.per_rank[i];
    const double log100_rank = std::log10(static_cast<double>(i + 1)) / 2.0;
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%llu,%llu,%llu,%.17g\n", i + 1,
                  log100_rank, static_cast<unsigned long long>(t.requests),
                  static_cast<unsigned long long>(t.hits),
                  static_cast<unsigned long long>(t.misses),
                  t.imported_bandwidth);
    out << buf;
  }
}

std::string summary_json(const SimReport& report) {
  const SimConfig& c = report.config;
  nlohmann::ordered_json j;
  j["totals"] = {
      {"requests", report.totals.requests},
      {"hits", report.totals.hits},
      {"misses", report.totals.misses},
      {"hit_ratio", report.totals.hit_ratio},
      {"miss_ratio", report.totals.miss_ratio},
      {"total_bandwidth", report.totals.total_bandwidth},
  };
  j["config"] = {
      {"n_objects", c.n_objects},
      {"alpha", c.alpha},
      {"total_requests", c.total_requests},
      {"session_size", c.session_size},
      {"cache_capacity", c.cache_capacity},
      {"policy", std::string(policy_name(c.policy))},
      {"seed", c.seed},
      {"size_range_kb", {c.size_range_kb.lo, c.size_range_kb.hi}},
      {"time_range_ms", {c.time_range_ms.lo, c.time_range_ms.hi}},
      {"k", c.k},
      {"rate", std::string(rate_convention_name(c.rate))},
      {"mass", std::string(mass_model_name(c.mass))},
  };
  j["workload_seed"] = report.workload_seed;
  j["sweep_index"] = report.sweep_index;
  j["elapsed_seconds"] = report.elapsed_seconds;
  return j.dump(2) + "\n";
}

void write_comparison_csv(std::span<const ComparisonRow> rows,
                          std::ostream& out) {
  out << "capacity,simulated_hit_ratio,top_c_mass,gap,sim_bandwidth,"
         "model_bandwidth_product,model_bandwidth_ratio\n";
  char buf[256];
  for (const ComparisonRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(r.capacity),
                  r.simulated_hit_ratio, r.top_c_mass, r.gap, r.sim_bandwidth,
                  r.model_bandwidth_product, r.model_bandwidth_ratio);
    out << buf;
  }
}

}  // namespace proxysim
