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

#ifndef PROXYSIM_POPULARITY_HPP
#define PROXYSIM_POPULARITY_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace proxysim {

// Ranks are 1-based; rank 1 is the most popular object.
using Rank = std::uint32_t;

// Every stochastic component draws from this engine, seeded explicitly.
using RandomStream = std::mt19937_64;

// Sum of i^-alpha for i = 1..n, accumulated in ascending rank order with
// Neumaier compensation. Throws std::invalid_argument when n == 0.
double generalized_harmonic(std::uint64_t n, double alpha);

// Zipf(alpha) popularity over ranks 1..N. Immutable once built, so a single
// catalog can be shared by concurrent readers; sampling mutates only the
// caller's RandomStream.
class ZipfCatalog {
 public:
  // Throws std::invalid_argument for n_objects == 0 or non-finite alpha.
  static ZipfCatalog build(std::uint64_t n_objects, double alpha);

  std::uint64_t n_objects() const { return probabilities_.size(); }
  double alpha() const { return alpha_; }
  // 1 / generalized_harmonic(N, alpha).
  double normalizer() const { return normalizer_; }

  // Index r-1 holds p_N(r).
  std::span<const double> probabilities() const { return probabilities_; }
  // Index r-1 holds P(rank <= r); the last entry is exactly 1.
  std::span<const double> cumulative() const { return cumulative_; }

  // Throws std::out_of_range unless 1 <= rank <= N.
  double probability(std::uint64_t rank) const;

  // Inverse-CDF draw by binary search over cumulative().
  Rank sample(RandomStream& rng) const;

 private:
  ZipfCatalog() = default;

  double alpha_ = 0.0;
  double normalizer_ = 1.0;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

// Uniform double in [0, 1) from the top 53 bits of one engine output. Used
// instead of std::uniform_real_distribution so draws are identical across
// standard library implementations.
double unit_uniform(RandomStream& rng);

// Writes `rank,probability` with 17 significant digits.
void write_catalog_csv(const ZipfCatalog& catalog, std::ostream& out);

// s = sigma + i*beta.
struct ComplexExponent {
  double sigma = 0.0;
  double beta = 0.0;

  std::complex<double> value() const { return {sigma, beta}; }
  double modulus() const { return std::abs(value()); }
};

// |n^-s|. Only sigma contributes since |exp(-i beta log n)| == 1.
double power_modulus(std::uint64_t n, ComplexExponent s);

struct ZetaTerm {
  // a_n = n^-s - integral_n^{n+1} x^-s dx
  std::complex<double> value;
  // |s| * n^(-1-sigma)
  double bound = 0.0;
};

// Terms n = 1..n_terms of the series sum a_n = zeta(s) - 1/(s-1). The
// integral is evaluated in closed form, with the log form at s == 1.
// Throws std::invalid_argument when sigma <= 0 or n_terms == 0.
std::vector<ZetaTerm> zeta_partial_terms(ComplexExponent s,
                                         std::uint64_t n_terms);

}  // namespace proxysim

#endif  // PROXYSIM_POPULARITY_HPP
