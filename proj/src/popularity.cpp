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

#include "proxysim/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace proxysim {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// exp(z) - 1 without cancellation for small |z|.
std::complex<double> complex_expm1(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  const double cos_minus_one = -2.0 * half_sin * half_sin;
  return {std::expm1(x) * std::cos(y) + cos_minus_one,
          std::exp(x) * std::sin(y)};
}

}  // namespace

double generalized_harmonic(std::uint64_t n, double alpha) {
  if (n == 0) {
    throw std::invalid_argument("generalized_harmonic: n must be >= 1");
  }
  if (alpha == 0.0) {
    return static_cast<double>(n);
  }
  CompensatedSum sum;
  for (std::uint64_t i = 1; i <= n; ++i) {
    sum.add(std::pow(static_cast<double>(i), -alpha));
  }
  return sum.value();
}

ZipfCatalog ZipfCatalog::build(std::uint64_t n_objects, double alpha) {
  if (n_objects == 0) {
    throw std::invalid_argument("catalog needs at least one object");
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("zipf exponent must be finite and >= 0, got " +
                                std::to_string(alpha));
  }

  ZipfCatalog catalog;
  catalog.alpha_ = alpha;
  catalog.normalizer_ = 1.0 / generalized_harmonic(n_objects, alpha);
  catalog.probabilities_.resize(n_objects);
  catalog.cumulative_.resize(n_objects);

  CompensatedSum running;
  double previous = 0.0;
  for (std::uint64_t i = 0; i < n_objects; ++i) {
    const double p =
        catalog.normalizer_ * std::pow(static_cast<double>(i + 1), -alpha);
    catalog.probabilities_[i] = p;
    running.add(p);
    previous = std::clamp(running.value(), previous, 1.0);
    catalog.cumulative_[i] = previous;
  }
  catalog.cumulative_.back() = 1.0;
  return catalog;
}

double ZipfCatalog::probability(std::uint64_t rank) const {
  if (rank == 0 || rank > n_objects()) {
    throw std::out_of_range("rank " + std::to_string(rank) +
                            " outside catalog of " +
                            std::to_string(n_objects()) + " objects");
  }
  return probabilities_[rank - 1];
}

Rank ZipfCatalog::sample(RandomStream& rng) const {
  const double u = unit_uniform(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto index = std::min<std::size_t>(it - cumulative_.begin(),
                                           cumulative_.size() - 1);
  return static_cast<Rank>(index + 1);
}

double unit_uniform(RandomStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void write_catalog_csv(const ZipfCatalog& catalog, std::ostream& out) {
  out << "rank,probability\n";
  char buf[64];
  const auto probs = catalog.probabilities();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, probs[i]);
    out << buf;
  }
}

double power_modulus(std::uint64_t n, ComplexExponent s) {
  return std::pow(static_cast<double>(n), -s.sigma);
}

std::vector<ZetaTerm> zeta_partial_terms(ComplexExponent s,
                                         std::uint64_t n_terms) {
  if (!(s.sigma > 0.0)) {
    throw std::invalid_argument("zeta terms need Re(s) > 0");
  }
  if (n_terms == 0) {
    throw std::invalid_argument("zeta terms need n_terms >= 1");
  }

  const std::complex<double> exponent = s.value();
  const std::complex<double> one_minus_s = 1.0 - exponent;
  const bool at_pole = s.sigma == 1.0 && s.beta == 0.0;
  const double s_modulus = s.modulus();

  std::vector<ZetaTerm> terms;
  terms.reserve(n_terms);
  for (std::uint64_t n = 1; n <= n_terms; ++n) {
    const double log_n = std::log(static_cast<double>(n));
    const double log_step = std::log1p(1.0 / static_cast<double>(n));
    const std::complex<double> power = std::exp(-exponent * log_n);

    // integral_n^{n+1} x^-s dx = n^{1-s} (exp((1-s) log(1+1/n)) - 1) / (1-s)
    std::complex<double> integral;
    if (at_pole) {
      integral = log_step;
    } else {
      integral = std::exp(one_minus_s * log_n) *
                 complex_expm1(one_minus_s * log_step) / one_minus_s;
    }

    terms.push_back(
        {power - integral,
         s_modulus * std::pow(static_cast<double>(n), -1.0 - s.sigma)});
  }
  return terms;
}

}  // namespace proxysim
