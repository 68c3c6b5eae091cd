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

#ifndef PROXYSIM_SIMULATOR_HPP
#define PROXYSIM_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "proxysim/analytics.hpp"
#include "proxysim/cache.hpp"
#include "proxysim/popularity.hpp"
#include "proxysim/stats.hpp"
#include "proxysim/workload.hpp"

namespace proxysim {

// Default exponent grid for sweeps.
inline constexpr double kDefaultAlphas[] = {0.98, 0.75, 0.64, 0.51, 0.41, 0.31};
inline constexpr std::uint64_t kDefaultRequests = 1'000'000;  // 100^3
inline constexpr std::uint64_t kDefaultObjects = 10'000;
inline constexpr std::uint64_t kDefaultCapacity = 100;

struct SimConfig {
  std::uint64_t n_objects = kDefaultObjects;
  double alpha = 0.98;
  std::uint64_t total_requests = kDefaultRequests;
  std::size_t session_size = kDefaultSessionSize;
  std::uint64_t cache_capacity = kDefaultCapacity;
  Policy policy = Policy::kSessionLfu;
  std::uint64_t seed = 0;
  Interval size_range_kb = kDefaultSizeRangeKb;
  Interval time_range_ms = kDefaultChannelRangeMs;
  double k = 1.0;
  RateConvention rate = RateConvention::kProduct;
  MassModel mass = MassModel::kExact;

  BandwidthParams bandwidth() const { return {k, cache_capacity, mass, rate}; }
};

// Throws std::invalid_argument when a count is zero, alpha is negative or
// non-finite, a range is empty, or k is outside [0, 1].
void validate(const SimConfig& config);

// Seed for an independent stream derived from `base` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Attribute tables use derive_seed(config.seed, kAttributeStream) so that
// they never share a stream with the request draws.
inline constexpr std::uint64_t kAttributeStream = 1;

struct RankTally {
  std::uint64_t requests = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  // misses * k * b_rank
  double imported_bandwidth = 0.0;

  bool operator==(const RankTally&) const = default;
};

struct SimTotals {
  std::uint64_t requests = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double hit_ratio = 0.0;
  double miss_ratio = 0.0;
  double total_bandwidth = 0.0;

  bool operator==(const SimTotals&) const = default;
};

struct SimReport {
  SimConfig config;
  // Seed actually used for the request stream (differs from config.seed for
  // sweep points). 0 for trace-driven runs.
  std::uint64_t workload_seed = 0;
  std::size_t sweep_index = 0;
  std::vector<RankTally> per_rank;
  SimTotals totals;
  double elapsed_seconds = 0.0;
};

// Builds catalog, attributes and workload from the config and runs the
// configured policy from a cold cache.
SimReport run_simulation(const SimConfig& config);

// Trace-driven variant: config.n_objects is replaced by the workload's.
SimReport run_simulation(const SimConfig& config, const Workload& workload);

// Folds outcomes into per-rank tallies. b is indexed by rank - 1 and already
// includes k.
SimReport tally_outcomes(const SimConfig& config,
                         std::span<const AccessOutcome> outcomes,
                         std::span<const double> import_rate);

struct SweepConfig {
  SimConfig base;
  // Empty list means "use base.alpha" / "use base.cache_capacity".
  std::vector<double> alphas;
  std::vector<std::uint64_t> capacities;
};

// One report per (alpha, capacity) pair, alpha-major. Point i runs with seed
// base.seed ^ i. Points run on up to `threads` workers (0 = hardware
// concurrency); the result order does not depend on scheduling.
std::vector<SimReport> sweep(const SweepConfig& config, unsigned threads = 0);

struct ComparisonRow {
  std::uint64_t capacity = 0;
  double simulated_hit_ratio = 0.0;
  double top_c_mass = 0.0;
  // top_c_mass - simulated_hit_ratio
  double gap = 0.0;
  double sim_bandwidth = 0.0;
  double model_bandwidth_product = 0.0;
  double model_bandwidth_ratio = 0.0;
};

// Replays one workload (drawn from config) through each capacity and sets the
// result next to the closed-form model. Capacities above N are compared
// against the full mass.
std::vector<ComparisonRow> compare_analytic(
    const SimConfig& config, std::span<const std::uint64_t> capacities);
std::vector<ComparisonRow> compare_analytic(
    const SimConfig& config, const Workload& workload,
    std::span<const std::uint64_t> capacities);

struct PowerLawFit {
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

// OLS of log(count) on log(rank) over ranks 1..max_rank, skipping ranks with
// zero count. Throws std::invalid_argument when max_rank < 10 or fewer than
// three ranks are usable.
PowerLawFit fit_power_law(const RankHistogram& histogram,
                          std::uint64_t max_rank);
// Same fit over arbitrary non-negative weights indexed by rank - 1.
PowerLawFit fit_power_law(std::span<const double> counts,
                          std::uint64_t max_rank);

// `rank,log100_rank,requests,hits,misses,bandwidth`
void write_report_csv(const SimReport& report, std::ostream& out);
// Totals plus a config echo.
std::string summary_json(const SimReport& report);
// `capacity,simulated_hit_ratio,top_c_mass,gap,sim_bandwidth,
//  model_bandwidth_product,model_bandwidth_ratio`
void write_comparison_csv(std::span<const ComparisonRow> rows,
                          std::ostream& out);

}  // namespace proxysim

#endif  // PROXYSIM_SIMULATOR_HPP
