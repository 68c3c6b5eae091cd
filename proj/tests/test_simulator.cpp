// Copyright 2026 The proxysim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "proxysim/simulator.hpp"

using namespace proxysim;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.n_objects = 200;
  c.alpha = 0.75;
  c.total_requests = 5000;
  c.session_size = 50;
  c.cache_capacity = 10;
  c.seed = 1;
  return c;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("single object: one cold miss") {
  SimConfig c = small_config();
  c.n_objects = 1;
  c.total_requests = 100;
  c.session_size = 10;
  c.cache_capacity = 1;
  for (Policy p : {Policy::kSessionLfu, Policy::kLru, Policy::kLfuClassic}) {
    c.policy = p;
    const SimReport r = run_simulation(c);
    CHECK(r.totals.hits == 99);
    CHECK(r.totals.misses == 1);
    CHECK(r.totals.hit_ratio == doctest::Approx(0.99));
  }
}

TEST_CASE("capacity at least N: only cold misses") {
  SimConfig c = small_config();
  c.n_objects = 30;
  c.cache_capacity = 30;
  for (Policy p : {Policy::kSessionLfu, Policy::kLru, Policy::kLfuClassic}) {
    c.policy = p;
    const SimReport r = run_simulation(c);
    CHECK(r.totals.misses <= 30);
    for (const auto& t : r.per_rank) CHECK(t.misses <= 1);
  }
}

TEST_CASE("config validation") {
  SimConfig c = small_config();
  c.alpha = -1.0;
  CHECK_THROWS_AS(run_simulation(c), std::invalid_argument);
  c = small_config();
  c.k = 1.5;
  CHECK_THROWS_AS(run_simulation(c), std::invalid_argument);
  c = small_config();
  c.cache_capacity = 0;
  CHECK_THROWS_AS(run_simulation(c), std::invalid_argument);
  c = small_config();
  c.size_range_kb = {5, 1};
  CHECK_THROWS_AS(run_simulation(c), std::invalid_argument);
}

TEST_CASE("conservation and determinism over 100 seeds") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SimConfig c = small_config();
    c.seed = seed;
    c.policy = static_cast<Policy>(seed % 3);
    c.total_requests = 500 + seed * 13;
    c.cache_capacity = 1 + seed % 25;
    const SimReport a = run_simulation(c);
    const SimReport b = run_simulation(c);
    REQUIRE(a.totals == b.totals);
    REQUIRE(a.per_rank == b.per_rank);
    REQUIRE(a.totals.requests == c.total_requests);
    REQUIRE(a.totals.hits + a.totals.misses == a.totals.requests);
    std::uint64_t sum = 0;
    for (const auto& t : a.per_rank) {
      REQUIRE(t.hits + t.misses == t.requests);
      REQUIRE(t.imported_bandwidth >= 0.0);
      sum += t.requests;
    }
    REQUIRE(sum == c.total_requests);
  }
}

TEST_CASE("imported bandwidth is misses * k * b") {
  SimConfig c = small_config();
  c.k = 0.25;
  c.size_range_kb = {2, 2};
  c.time_range_ms = {3, 3};
  const SimReport r = run_simulation(c);
  for (const auto& t : r.per_rank) {
    CHECK(t.imported_bandwidth == doctest::Approx(t.misses * 0.25 * 6.0));
  }
  c.k = 0.0;
  CHECK(run_simulation(c).totals.total_bandwidth == 0.0);
  c.k = 1.0;
  c.rate = RateConvention::kRatio;
  const SimReport ratio = run_simulation(c);
  CHECK(ratio.totals.total_bandwidth ==
        doctest::Approx(static_cast<double>(ratio.totals.misses) * 2.0 / 3.0));
}

TEST_CASE("lfu_classic settles on the mass of what it holds") {
  // In-cache LFU forgets counts on eviction, so whatever is resident once
  // counts grow stays resident; the hit ratio tracks that set's mass, which
  // sits below the top-C mass.
  const auto catalog = ZipfCatalog::build(1000, 0.98);
  const double mass = top_c_mass(catalog, 100);
  const Workload w = generate_workload(catalog, 1000000, 1000, 7);
  SessionLfuCache cache(100);
  std::uint64_t late_hits = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool hit = cache.access(w.requests[i]).hit;
    if (i >= w.size() / 2) late_hits += hit;
  }
  double resident = 0.0;
  for (const auto& [rank, entry] : cache.entries()) resident += catalog.probability(rank);
  const double late_ratio = static_cast<double>(late_hits) / (w.size() / 2);
  CHECK(std::abs(late_ratio - resident) <= 0.01);
  CHECK(resident < mass);

  SimConfig c;
  c.n_objects = 1000;
  c.alpha = 0.98;
  c.cache_capacity = 100;
  c.policy = Policy::kLfuClassic;
  c.seed = 7;
  const std::uint64_t caps[] = {100};
  const auto rows = compare_analytic(c, w, caps);
  CHECK(rows[0].top_c_mass == doctest::Approx(mass));
  CHECK(rows[0].gap > 0.0);
  CHECK(rows[0].gap < 0.1);
}

TEST_CASE("hit ratio grows with capacity") {
  SimConfig c;
  c.n_objects = 10000;
  c.alpha = 0.75;
  c.total_requests = 200000;
  c.seed = 3;
  for (Policy p : {Policy::kSessionLfu, Policy::kLru, Policy::kLfuClassic}) {
    c.policy = p;
    const std::uint64_t caps[] = {10, 100, 1000};
    const auto rows = compare_analytic(c, caps);
    CHECK(rows[0].simulated_hit_ratio < rows[1].simulated_hit_ratio);
    CHECK(rows[1].simulated_hit_ratio < rows[2].simulated_hit_ratio);
  }
}

TEST_CASE("comparison rows against a fixed workload") {
  SimConfig c = small_config();
  const auto catalog = ZipfCatalog::build(c.n_objects, c.alpha);
  const Workload w = generate_workload(catalog, 3000, 30, 9);
  const std::uint64_t caps[] = {5, 500};
  const auto rows = compare_analytic(c, w, caps);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].gap == doctest::Approx(rows[0].top_c_mass - rows[0].simulated_hit_ratio));
  CHECK(rows[1].top_c_mass == 1.0);

  SimConfig point = c;
  point.cache_capacity = 5;
  CHECK(run_simulation(point, w).totals.hit_ratio == rows[0].simulated_hit_ratio);

  std::ostringstream out;
  write_comparison_csv(rows, out);
  CHECK(out.str().starts_with(
      "capacity,simulated_hit_ratio,top_c_mass,gap,sim_bandwidth,"
      "model_bandwidth_product,model_bandwidth_ratio\n5,"));
}

TEST_CASE("sweep is deterministic and thread-independent") {
  SweepConfig s;
  s.base = small_config();
  s.base.seed = 42;
  s.alphas = {0.98, 0.31};
  s.capacities = {5, 20};
  const auto one = sweep(s, 1);
  const auto four = sweep(s, 4);
  REQUIRE(one.size() == 4);
  REQUIRE(four.size() == 4);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].sweep_index == i);
    CHECK(one[i].workload_seed == (42u ^ i));
    CHECK(one[i].totals == four[i].totals);
    CHECK(one[i].per_rank == four[i].per_rank);
  }
  CHECK(one[0].config.alpha == 0.98);
  CHECK(one[1].config.cache_capacity == 20);
  CHECK(one[2].config.alpha == 0.31);

  SweepConfig bad = s;
  bad.capacities = {5, 0};
  CHECK_THROWS_AS(sweep(bad, 2), std::invalid_argument);
}

TEST_CASE("histogram slope steepens with alpha") {
  std::vector<double> slopes;
  for (double alpha : kDefaultAlphas) {
    const auto catalog = ZipfCatalog::build(10000, alpha);
    const Workload w = generate_workload(catalog, 1000000, 1000, 5);
    slopes.push_back(fit_power_law(rank_histogram(w), 100).slope);
  }
  // kDefaultAlphas is ordered from steepest to flattest.
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    CAPTURE(i);
    CHECK(slopes[i - 1] < slopes[i]);
  }
}

TEST_CASE("power-law fit on synthetic counts") {
  std::vector<double> exact(200);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    exact[i] = 1000.0 * std::pow(static_cast<double>(i + 1), -0.5);
  }
  const PowerLawFit fit = fit_power_law(exact, 100);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.points == 100);

  const Workload uniform =
      generate_workload(ZipfCatalog::build(100, 0.0), 1000000, 1000, 2);
  CHECK(std::abs(fit_power_law(rank_histogram(uniform), 100).slope) <= 0.05);

  CHECK_THROWS_AS(fit_power_law(exact, 9), std::invalid_argument);
  std::vector<double> sparse(50, 0.0);
  sparse[0] = 3;
  sparse[1] = 2;
  CHECK_THROWS_AS(fit_power_law(sparse, 50), std::invalid_argument);
}

TEST_CASE("stats helpers") {
  const double xs[] = {1, 2, 3};
  const double ys[] = {2, 4, 6};
  const LineFit line = fit_line(xs, ys);
  CHECK(line.slope == doctest::Approx(2.0));
  CHECK(line.intercept == doctest::Approx(0.0));
  CHECK(line.r_squared == doctest::Approx(1.0));
  const double flat_x[] = {1, 1, 1};
  CHECK_THROWS_AS(fit_line(flat_x, ys), std::invalid_argument);

  const std::vector<double> values = {5, 4, 3, 2, 1, 1, 1};
  CHECK(binned_sums(values, 3) == std::vector<double>{12, 3, 2});
  CHECK(is_non_increasing(std::vector<double>{3, 3, 1}));
  CHECK_FALSE(is_non_increasing(std::vector<double>{3, 4, 1}));
}

TEST_CASE("report CSV and summary JSON") {
  SimConfig c = small_config();
  c.n_objects = 3;
  c.total_requests = 20;
  c.cache_capacity = 1;
  const SimReport r = run_simulation(c);
  std::ostringstream out;
  write_report_csv(r, out);
  const std::string csv = out.str();
  CHECK(csv.starts_with("rank,log100_rank,requests,hits,misses,bandwidth\n1,0,"));
  CHECK(csv.find("\n3,0.23856062735983") != std::string::npos);

  const auto j = nlohmann::json::parse(summary_json(r));
  CHECK(j["totals"]["requests"] == 20);
  CHECK(j["config"]["policy"] == "session_lfu");
  CHECK(j["config"]["mass"] == "exact");
  CHECK(j["totals"]["hits"].get<std::uint64_t>() + j["totals"]["misses"].get<std::uint64_t>() == 20);
}

}  // TEST_SUITE
