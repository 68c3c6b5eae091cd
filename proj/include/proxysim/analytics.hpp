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

// Closed-form request and bandwidth model for a Zipf-fed proxy cache.
//
// The per-object miss probability after R independent requests is
// (1 - p_N(i))^R, the on-demand miss mass sums p_N(i) times that over the
// leading ranks, and in the many-request limit the demand weight is taken to
// be the top-C probability mass. Import bandwidth for rank i is then
//
//   k * mass(C) * b_i,   b_i = s_i * t_i  (or s_i / t_i)
//
// where k in [0, 1] is a loss threshold. mass(C) is either the exact partial
// sum or one of two power-law approximations:
//
//   paper literal:  alpha * C^(1 - alpha)        (unnormalized, may exceed 1)
//   corrected:      Omega * integral_{1/2}^{C+1/2} x^-alpha dx

#ifndef PROXYSIM_ANALYTICS_HPP
#define PROXYSIM_ANALYTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "proxysim/popularity.hpp"
#include "proxysim/workload.hpp"

namespace proxysim {

enum class AsymptoticForm { kPaperLiteral, kCorrected };

// Which top-C mass feeds the bandwidth estimate.
enum class MassModel { kExact, kPaperLiteral, kCorrected };

enum class RateConvention {
  kProduct,  // s_i * t_i
  kRatio,    // s_i / t_i
};

// Accept "exact" | "paper" | "corrected" and "product" | "ratio".
MassModel parse_mass_model(std::string_view name);
RateConvention parse_rate_convention(std::string_view name);
std::string_view mass_model_name(MassModel model);
std::string_view rate_convention_name(RateConvention rate);

struct BandwidthParams {
  double k = 1.0;
  std::uint64_t cache_capacity = 1;
  MassModel mass = MassModel::kExact;
  RateConvention rate = RateConvention::kProduct;
};

// Throws std::invalid_argument unless 0 <= k <= 1 and capacity >= 1.
void validate(const BandwidthParams& params);

// (1 - p_N(rank))^R. Throws std::out_of_range for a bad rank.
double miss_probability(const ZipfCatalog& catalog, std::uint64_t rank,
                        std::uint64_t r_requests);

// sum_{i <= upper_rank} p_N(i) (1 - p_N(i))^R.
double hit_miss_on_demand(const ZipfCatalog& catalog, std::uint64_t r_requests,
                          std::uint64_t upper_rank);

// Exact sum_{i <= c} p_N(i); 1 <= c <= N.
double top_c_mass(const ZipfCatalog& catalog, std::uint64_t c);

// Approximations of top_c_mass. Throws std::invalid_argument at alpha == 1.
double top_c_mass_asymptotic(const ZipfCatalog& catalog, std::uint64_t c,
                             AsymptoticForm form);

// The mass selected by `model`, with the capacity capped at N.
double demand_mass(const ZipfCatalog& catalog, std::uint64_t capacity,
                   MassModel model);

// b_i under the rate convention, without k or mass.
double object_rate(const ObjectAttributes& attributes, std::uint64_t rank,
                   RateConvention rate);

double bandwidth_per_rank(std::uint64_t rank,
                          const ObjectAttributes& attributes,
                          const BandwidthParams& params,
                          const ZipfCatalog& catalog);

// Sum of bandwidth_per_rank over ranks 1..n_ranks.
double aggregate_bandwidth(const ObjectAttributes& attributes,
                           const BandwidthParams& params,
                           const ZipfCatalog& catalog, std::uint64_t n_ranks);

struct ModelReport {
  std::vector<double> probability;
  std::vector<double> per_rank_miss;
  std::vector<double> per_rank_bandwidth;
  std::uint64_t r_requests = 0;
  double h_demand = 0.0;
  double top_c_mass = 0.0;
  double demand_mass = 0.0;
  double aggregate_bandwidth = 0.0;
  BandwidthParams params;
};

ModelReport build_model_report(const ZipfCatalog& catalog,
                               const ObjectAttributes& attributes,
                               const BandwidthParams& params,
                               std::uint64_t r_requests);

// `rank,p,miss_prob,bandwidth` followed by one `# summary ...` line.
void write_model_report_csv(const ModelReport& report, std::ostream& out);

}  // namespace proxysim

#endif  // PROXYSIM_ANALYTICS_HPP
