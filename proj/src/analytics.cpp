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

#include "proxysim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace proxysim {

MassModel parse_mass_model(std::string_view name) {
  if (name == "exact") return MassModel::kExact;
  if (name == "paper" || name == "paper_literal") return MassModel::kPaperLiteral;
  if (name == "corrected") return MassModel::kCorrected;
  throw std::invalid_argument("unknown mass mode '" + std::string(name) +
                              "' (expected exact, paper or corrected)");
}

RateConvention parse_rate_convention(std::string_view name) {
  if (name == "product") return RateConvention::kProduct;
  if (name == "ratio") return RateConvention::kRatio;
  throw std::invalid_argument("unknown rate convention '" + std::string(name) +
                              "' (expected product or ratio)");
}

std::string_view mass_model_name(MassModel model) {
  switch (model) {
    case MassModel::kExact:
      return "exact";
    case MassModel::kPaperLiteral:
      return "paper";
    case MassModel::kCorrected:
      return "corrected";
  }
  return "unknown";
}

std::string_view rate_convention_name(RateConvention rate) {
  return rate == RateConvention::kProduct ? "product" : "ratio";
}

void validate(const BandwidthParams& params) {
  if (!(params.k >= 0.0 && params.k <= 1.0)) {
    throw std::invalid_argument("threshold k must lie in [0, 1]");
  }
  if (params.cache_capacity == 0) {
    throw std::invalid_argument("cache capacity must be >= 1");
  }
}

double miss_probability(const ZipfCatalog& catalog, std::uint64_t rank,
                        std::uint64_t r_requests) {
  const double p = catalog.probability(rank);
  return std::pow(1.0 - p, static_cast<double>(r_requests));
}

double hit_miss_on_demand(const ZipfCatalog& catalog, std::uint64_t r_requests,
                          std::uint64_t upper_rank) {
  if (upper_rank == 0 || upper_rank > catalog.n_objects()) {
    throw std::out_of_range("upper rank outside catalog");
  }
  const auto probs = catalog.probabilities();
  const double exponent = static_cast<double>(r_requests);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < upper_rank; ++i) {
    sum += probs[i] * std::pow(1.0 - probs[i], exponent);
  }
  return sum;
}

double top_c_mass(const ZipfCatalog& catalog, std::uint64_t c) {
  if (c == 0 || c > catalog.n_objects()) {
    throw std::out_of_range("top-C mass needs 1 <= C <= N, got C=" +
                            std::to_string(c));
  }
  if (c == catalog.n_objects()) {
    return catalog.cumulative().back();
  }
  // Same compensated running sum the catalog already holds.
  return catalog.cumulative()[c - 1];
}

double top_c_mass_asymptotic(const ZipfCatalog& catalog, std::uint64_t c,
                             AsymptoticForm form) {
  const double alpha = catalog.alpha();
  if (alpha == 1.0) {
    throw std::invalid_argument(
        "power-law mass approximation is singular at alpha = 1");
  }
  if (c == 0) {
    throw std::out_of_range("top-C mass needs C >= 1");
  }
  const double cap = static_cast<double>(c);
  const double exponent = 1.0 - alpha;
  if (form == AsymptoticForm::kPaperLiteral) {
    return alpha * std::pow(cap, exponent);
  }
  // (C + 1/2)^(1-a) - (1/2)^(1-a) = (1/2)^(1-a) * expm1((1-a) log(2C + 1))
  const double integral = std::pow(0.5, exponent) *
                          std::expm1(exponent * std::log1p(2.0 * cap)) /
                          exponent;
  return catalog.normalizer() * integral;
}

double demand_mass(const ZipfCatalog& catalog, std::uint64_t capacity,
                   MassModel model) {
  const std::uint64_t c = std::min(capacity, catalog.n_objects());
  switch (model) {
    case MassModel::kExact:
      return top_c_mass(catalog, c);
    case MassModel::kPaperLiteral:
      return top_c_mass_asymptotic(catalog, c, AsymptoticForm::kPaperLiteral);
    case MassModel::kCorrected:
      return top_c_mass_asymptotic(catalog, c, AsymptoticForm::kCorrected);
  }
  return 0.0;
}

double object_rate(const ObjectAttributes& attributes, std::uint64_t rank,
                   RateConvention rate) {
  if (rank == 0 || rank > attributes.n_objects()) {
    throw std::out_of_range("rank outside attribute table");
  }
  const double size = attributes.sizes_kb[rank - 1];
  const double time = attributes.channel_ms[rank - 1];
  return rate == RateConvention::kProduct ? size * time : size / time;
}

double bandwidth_per_rank(std::uint64_t rank,
                          const ObjectAttributes& attributes,
                          const BandwidthParams& params,
                          const ZipfCatalog& catalog) {
  validate(params);
  return params.k *
         demand_mass(catalog, params.cache_capacity, params.mass) *
         object_rate(attributes, rank, params.rate);
}

double aggregate_bandwidth(const ObjectAttributes& attributes,
                           const BandwidthParams& params,
                           const ZipfCatalog& catalog, std::uint64_t n_ranks) {
  validate(params);
  if (n_ranks == 0 || n_ranks > catalog.n_objects()) {
    throw std::out_of_range("aggregate bandwidth needs 1 <= n_ranks <= N");
  }
  const double weight =
      params.k * demand_mass(catalog, params.cache_capacity, params.mass);
  double sum = 0.0;
  for (std::uint64_t rank = 1; rank <= n_ranks; ++rank) {
    sum += weight * object_rate(attributes, rank, params.rate);
  }
  return sum;
}

ModelReport build_model_report(const ZipfCatalog& catalog,
                               const ObjectAttributes& attributes,
                               const BandwidthParams& params,
                               std::uint64_t r_requests) {
  validate(params);
  if (attributes.n_objects() != catalog.n_objects()) {
    throw std::invalid_argument("attribute table and catalog sizes differ");
  }
  const std::uint64_t n = catalog.n_objects();

  ModelReport report;
  report.params = params;
  report.r_requests = r_requests;
  report.probability.assign(catalog.probabilities().begin(),
                            catalog.probabilities().end());
  report.h_demand = hit_miss_on_demand(catalog, r_requests, n);
  report.top_c_mass =
      top_c_mass(catalog, std::min(params.cache_capacity, n));
  report.demand_mass = demand_mass(catalog, params.cache_capacity, params.mass);

  const double weight = params.k * report.demand_mass;
  report.per_rank_miss.resize(n);
  report.per_rank_bandwidth.resize(n);
  for (std::uint64_t rank = 1; rank <= n; ++rank) {
    report.per_rank_miss[rank - 1] =
        miss_probability(catalog, rank, r_requests);
    const double b = weight * object_rate(attributes, rank, params.rate);
    report.per_rank_bandwidth[rank - 1] = b;
    report.aggregate_bandwidth += b;
  }
  return report;
}

void write_model_report_csv(const ModelReport& report, std::ostream& out) {
  out << "rank,p,miss_prob,bandwidth\n";
  char buf[128];
  for (std::size_t i = 0; i < report.probability.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i + 1,
                  report.probability[i], report.per_rank_miss[i],
                  report.per_rank_bandwidth[i]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "# summary requests=%llu h_demand=%.17g top_c_mass=%.17g ",
                static_cast<unsigned long long>(report.r_requests),
                report.h_demand, report.top_c_mass);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "demand_mass=%.17g aggregate_bandwidth=%.17g k=%.17g ",
                report.demand_mass, report.aggregate_bandwidth, report.params.k);
  out << buf << "capacity=" << report.params.cache_capacity
      << " mode=" << mass_model_name(report.params.mass)
      << " rate=" << rate_convention_name(report.params.rate) << '\n';
}

}  // namespace proxysim
