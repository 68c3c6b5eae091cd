// Copyright 2026 The proxysim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "proxysim/analytics.hpp"

using namespace proxysim;

namespace {

ObjectAttributes constant_attributes(std::uint64_t n, double size, double time) {
  return assign_attributes(n, {size, size}, {time, time}, 0);
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("miss probability") {
  const auto two = ZipfCatalog::build(2, 1.0);
  CHECK(miss_probability(two, 1, 0) == 1.0);
  CHECK(miss_probability(two, 2, 0) == 1.0);
  CHECK(miss_probability(two, 1, 2) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS_AS(miss_probability(two, 3, 1), std::out_of_range);

  const auto one = ZipfCatalog::build(1, 0.3);
  CHECK(miss_probability(one, 1, 1) == 0.0);
}

TEST_CASE("miss probability is monotone in R and rank") {
  for (double alpha : {0.31, 0.75, 0.98, 1.5}) {
    const auto catalog = ZipfCatalog::build(200, alpha);
    for (std::uint64_t rank = 1; rank <= 200; ++rank) {
      double previous = 2.0;
      for (std::uint64_t r : {0u, 1u, 2u, 10u, 100u, 1000u, 100000u}) {
        const double f = miss_probability(catalog, rank, r);
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 1.0);
        REQUIRE(f <= previous);
        previous = f;
        if (rank > 1) REQUIRE(f >= miss_probability(catalog, rank - 1, r));
      }
    }
  }
}

TEST_CASE("hit-miss on demand") {
  const auto two = ZipfCatalog::build(2, 1.0);
  CHECK(hit_miss_on_demand(two, 1, 2) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS_AS(hit_miss_on_demand(two, 1, 3), std::out_of_range);

  const auto catalog = ZipfCatalog::build(100, 0.98);
  CHECK(hit_miss_on_demand(catalog, 0, 100) == doctest::Approx(1.0).epsilon(1e-12));

  const double tail = std::pow(1.0 - catalog.probability(100), 1e6);
  const double h = hit_miss_on_demand(catalog, 1000000, 100);
  CHECK(h <= 100 * tail);
  CHECK(h < 1e-6);
}

TEST_CASE("hit-miss on demand bounds and vanishing limit") {
  for (double alpha : {0.0, 0.31, 0.64, 0.98, 2.0}) {
    const auto catalog = ZipfCatalog::build(300, alpha);
    for (std::uint64_t upper : {1u, 10u, 150u, 300u}) {
      const double mass = top_c_mass(catalog, upper);
      CHECK(hit_miss_on_demand(catalog, 0, upper) ==
            doctest::Approx(mass).epsilon(1e-12));
      double previous = mass;
      for (std::uint64_t r : {1u, 10u, 100u, 10000u, 10000000u}) {
        const double h = hit_miss_on_demand(catalog, r, upper);
        CHECK(h >= 0.0);
        CHECK(h <= mass + 1e-15);
        CHECK(h <= previous);
        previous = h;
      }
      CHECK(previous < 1e-6);
    }
  }
}

TEST_CASE("top-C mass") {
  CHECK(top_c_mass(ZipfCatalog::build(3, 1.0), 2) == doctest::Approx(9.0 / 11.0).epsilon(1e-14));
  CHECK(top_c_mass(ZipfCatalog::build(5, 0.0), 2) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(top_c_mass(ZipfCatalog::build(5, 0.7), 5) == 1.0);
  CHECK_THROWS_AS(top_c_mass(ZipfCatalog::build(5, 0.7), 6), std::out_of_range);
  CHECK_THROWS_AS(top_c_mass(ZipfCatalog::build(5, 0.7), 0), std::out_of_range);
}

TEST_CASE("top-C mass grows with alpha when C < N") {
  const double alphas[] = {0.0, 0.31, 0.41, 0.51, 0.64, 0.75, 0.98, 1.0, 1.5};
  for (std::uint64_t c : {1u, 5u, 100u, 999u}) {
    double previous = 0.0;
    for (double alpha : alphas) {
      const double mass = top_c_mass(ZipfCatalog::build(1000, alpha), c);
      CHECK(mass > previous);
      previous = mass;
    }
  }
}

TEST_CASE("asymptotic top-C mass") {
  SUBCASE("paper literal form") {
    const auto catalog = ZipfCatalog::build(100, 0.5);
    CHECK(top_c_mass_asymptotic(catalog, 4, AsymptoticForm::kPaperLiteral) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("singular at alpha = 1") {
    const auto catalog = ZipfCatalog::build(100, 1.0);
    CHECK_THROWS_AS(top_c_mass_asymptotic(catalog, 4, AsymptoticForm::kPaperLiteral),
                    std::invalid_argument);
    CHECK_THROWS_AS(top_c_mass_asymptotic(catalog, 4, AsymptoticForm::kCorrected),
                    std::invalid_argument);
  }
  SUBCASE("corrected form, N=10^4, alpha=0.7, C=100") {
    const auto catalog = ZipfCatalog::build(10000, 0.7);
    const double exact = top_c_mass(catalog, 100);
    const double approx = top_c_mass_asymptotic(catalog, 100, AsymptoticForm::kCorrected);
    CHECK(std::abs(approx - exact) <= 0.10 * exact);
  }
  SUBCASE("corrected form at C = 1 is finite") {
    const auto catalog = ZipfCatalog::build(1000, 0.51);
    const double approx = top_c_mass_asymptotic(catalog, 1, AsymptoticForm::kCorrected);
    CHECK(std::isfinite(approx));
    CHECK(approx > 0.0);
  }
  SUBCASE("corrected form within 10% over the alpha grid") {
    for (double alpha : {0.31, 0.51, 0.75, 0.98}) {
      const auto catalog = ZipfCatalog::build(10000, alpha);
      double partial = 0.0;  // independent forward sum of i^-alpha
      for (std::uint64_t c = 1; c <= 1000; ++c) {
        partial += std::pow(static_cast<double>(c), -alpha);
        if (c < 10) continue;
        const double exact = catalog.normalizer() * partial;
        CHECK(top_c_mass(catalog, c) == doctest::Approx(exact).epsilon(1e-12));
        const double approx =
            top_c_mass_asymptotic(catalog, c, AsymptoticForm::kCorrected);
        REQUIRE(std::abs(approx - exact) <= 0.10 * exact);
      }
    }
  }
  SUBCASE("corrected form is continuous through alpha near 1") {
    const auto lo = ZipfCatalog::build(1000, 1.0 - 1e-9);
    const auto hi = ZipfCatalog::build(1000, 1.0 + 1e-9);
    const double a = top_c_mass_asymptotic(lo, 100, AsymptoticForm::kCorrected);
    const double b = top_c_mass_asymptotic(hi, 100, AsymptoticForm::kCorrected);
    // Omega * log(2C + 1) at alpha = 1.
    const double limit = std::log(201.0) / generalized_harmonic(1000, 1.0);
    CHECK(a == doctest::Approx(limit).epsilon(1e-6));
    CHECK(b == doctest::Approx(limit).epsilon(1e-6));
  }
}

TEST_CASE("bandwidth per rank") {
  const auto one = ZipfCatalog::build(1, 0.64);
  const auto attrs = constant_attributes(1, 2.0, 3.0);
  BandwidthParams params{1.0, 1, MassModel::kExact, RateConvention::kProduct};
  CHECK(bandwidth_per_rank(1, attrs, params, one) == doctest::Approx(6.0).epsilon(1e-15));
  params.rate = RateConvention::kRatio;
  CHECK(bandwidth_per_rank(1, attrs, params, one) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const auto catalog = ZipfCatalog::build(50, 0.98);
  const auto table = assign_attributes(50, {1, 15}, {1, 10}, 4);
  BandwidthParams zero{0.0, 10, MassModel::kExact, RateConvention::kProduct};
  for (std::uint64_t rank = 1; rank <= 50; ++rank) {
    CHECK(bandwidth_per_rank(rank, table, zero, catalog) == 0.0);
  }

  BandwidthParams bad{1.5, 10, MassModel::kExact, RateConvention::kProduct};
  CHECK_THROWS_AS(bandwidth_per_rank(1, table, bad, catalog), std::invalid_argument);
}

TEST_CASE("aggregate bandwidth") {
  const auto one = ZipfCatalog::build(1, 0.64);
  const auto attrs = constant_attributes(1, 2.0, 3.0);
  const BandwidthParams params{1.0, 1, MassModel::kExact, RateConvention::kProduct};
  CHECK(aggregate_bandwidth(attrs, params, one, 1) == doctest::Approx(6.0));
  CHECK_THROWS_AS(aggregate_bandwidth(attrs, params, one, 0), std::out_of_range);

  const auto catalog = ZipfCatalog::build(40, 0.41);
  const auto unit = constant_attributes(40, 1.0, 1.0);
  const BandwidthParams full{1.0, 40, MassModel::kExact, RateConvention::kProduct};
  CHECK(aggregate_bandwidth(unit, full, catalog, 25) == doctest::Approx(25.0).epsilon(1e-12));
  BandwidthParams none = full;
  none.k = 0.0;
  CHECK(aggregate_bandwidth(unit, none, catalog, 40) == 0.0);
}

TEST_CASE("aggregate bandwidth is linear in k and factorizes") {
  const auto catalog = ZipfCatalog::build(2000, 0.75);
  const auto attrs = assign_attributes(2000, {1, 15}, {1, 10}, 12);
  double attr_sum = 0.0;
  for (std::size_t i = 0; i < 2000; ++i) attr_sum += attrs.sizes_kb[i] * attrs.channel_ms[i];

  for (std::uint64_t capacity : {1u, 10u, 100u, 1999u}) {
    const double mass = top_c_mass(catalog, capacity);
    const BandwidthParams unit_k{1.0, capacity, MassModel::kExact, RateConvention::kProduct};
    const double base = aggregate_bandwidth(attrs, unit_k, catalog, 2000);
    CHECK(std::abs(base - mass * attr_sum) <= 1e-12 * base);
    for (double k : {0.0, 0.1, 0.5, 0.99}) {
      BandwidthParams p = unit_k;
      p.k = k;
      const double scaled = aggregate_bandwidth(attrs, p, catalog, 2000);
      CHECK(std::abs(scaled - k * base) <= 1e-12 * base);
    }
  }
}

TEST_CASE("demand mass models") {
  const auto catalog = ZipfCatalog::build(1000, 0.64);
  CHECK(demand_mass(catalog, 100, MassModel::kExact) == top_c_mass(catalog, 100));
  CHECK(demand_mass(catalog, 5000, MassModel::kExact) == 1.0);
  CHECK(demand_mass(catalog, 100, MassModel::kPaperLiteral) ==
        doctest::Approx(0.64 * std::pow(100.0, 0.36)));
  CHECK(parse_mass_model("paper") == MassModel::kPaperLiteral);
  CHECK(parse_mass_model("exact") == MassModel::kExact);
  CHECK(parse_mass_model("corrected") == MassModel::kCorrected);
  CHECK_THROWS_AS(parse_mass_model("fancy"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rate_convention("sum"), std::invalid_argument);
}

TEST_CASE("model report CSV") {
  const auto catalog = ZipfCatalog::build(3, 1.0);
  const auto attrs = constant_attributes(3, 2.0, 1.0);
  const BandwidthParams params{0.5, 2, MassModel::kExact, RateConvention::kProduct};
  const ModelReport report = build_model_report(catalog, attrs, params, 4);
  CHECK(report.top_c_mass == doctest::Approx(9.0 / 11.0));
  CHECK(report.aggregate_bandwidth == doctest::Approx(0.5 * 9.0 / 11.0 * 6.0));
  CHECK(report.per_rank_miss[0] == doctest::Approx(std::pow(5.0 / 11.0, 4)));

  std::ostringstream out;
  write_model_report_csv(report, out);
  const std::string csv = out.str();
  CHECK(csv.starts_with("rank,p,miss_prob,bandwidth\n1,0.54545454545454"));
  CHECK(csv.find("# summary requests=4 ") != std::string::npos);
  CHECK(csv.find("top_c_mass=0.8181818181818") != std::string::npos);
}

}  // TEST_SUITE
