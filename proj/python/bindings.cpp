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

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "proxysim/analytics.hpp"
#include "proxysim/cache.hpp"
#include "proxysim/popularity.hpp"
#include "proxysim/simulator.hpp"
#include "proxysim/workload.hpp"

namespace py = pybind11;
using namespace proxysim;

namespace {

std::vector<Rank> sample_ranks(const ZipfCatalog& catalog, std::size_t count,
                               std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Rank> out(count);
  for (auto& r : out) r = catalog.sample(rng);
  return out;
}

std::vector<std::uint64_t> histogram_counts(const Workload& workload) {
  return rank_histogram(workload).counts;
}

py::tuple power_law(const std::vector<double>& counts, std::uint64_t max_rank) {
  const PowerLawFit fit = fit_power_law(std::span<const double>(counts), max_rank);
  return py::make_tuple(fit.slope, fit.r_squared);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Web proxy cache simulator and Zipf demand model";

  py::class_<ZipfCatalog>(m, "ZipfCatalog")
      .def(py::init(&ZipfCatalog::build), py::arg("n_objects"), py::arg("alpha"))
      .def_property_readonly("n_objects", &ZipfCatalog::n_objects)
      .def_property_readonly("alpha", &ZipfCatalog::alpha)
      .def_property_readonly("normalizer", &ZipfCatalog::normalizer)
      .def_property_readonly("probabilities",
                             [](const ZipfCatalog& c) {
                               auto p = c.probabilities();
                               return std::vector<double>(p.begin(), p.end());
                             })
      .def("probability", &ZipfCatalog::probability, py::arg("rank"))
      .def("sample_ranks", &sample_ranks, py::arg("count"), py::arg("seed"));

  m.def("generalized_harmonic", &generalized_harmonic, py::arg("n"),
        py::arg("alpha"));
  m.def(
      "power_modulus",
      [](std::uint64_t n, double sigma, double beta) {
        return power_modulus(n, {sigma, beta});
      },
      py::arg("n"), py::arg("sigma"), py::arg("beta") = 0.0);
  m.def(
      "zeta_partial_terms",
      [](double sigma, double beta, std::uint64_t n_terms) {
        std::vector<std::pair<std::complex<double>, double>> out;
        for (const ZetaTerm& t : zeta_partial_terms({sigma, beta}, n_terms)) {
          out.emplace_back(t.value, t.bound);
        }
        return out;
      },
      py::arg("sigma"), py::arg("beta"), py::arg("n_terms"),
      "List of (a_n, |s| n^(-1-sigma)) pairs.");

  py::class_<Workload>(m, "Workload")
      .def_readonly("requests", &Workload::requests)
      .def_readonly("session_boundaries", &Workload::session_boundaries)
      .def_readonly("seed", &Workload::seed)
      .def_readonly("n_objects", &Workload::n_objects)
      .def("__len__", &Workload::size)
      .def(py::self == py::self);

  m.def("generate_workload", &generate_workload, py::arg("catalog"),
        py::arg("total_requests"), py::arg("session_size"), py::arg("seed"));
  m.def("rank_histogram", &histogram_counts, py::arg("workload"));
  m.def("save_trace", &save_trace, py::arg("workload"), py::arg("path"));
  m.def("load_trace", &load_trace, py::arg("path"));

  py::class_<ObjectAttributes>(m, "ObjectAttributes")
      .def_readonly("sizes_kb", &ObjectAttributes::sizes_kb)
      .def_readonly("channel_ms", &ObjectAttributes::channel_ms);
  m.def(
      "assign_attributes",
      [](std::uint64_t n, std::pair<double, double> size,
         std::pair<double, double> time, std::uint64_t seed) {
        return assign_attributes(n, {size.first, size.second},
                                 {time.first, time.second}, seed);
      },
      py::arg("n_objects"), py::arg("size_range_kb") = std::pair{1.0, 15.0},
      py::arg("time_range_ms") = std::pair{1.0, 10.0}, py::arg("seed"));

  py::class_<AccessOutcome>(m, "AccessOutcome")
      .def_readonly("rank", &AccessOutcome::rank)
      .def_readonly("hit", &AccessOutcome::hit)
      .def_readonly("evicted", &AccessOutcome::evicted)
      .def("__repr__", [](const AccessOutcome& o) {
        return "AccessOutcome(rank=" + std::to_string(o.rank) +
               ", hit=" + (o.hit ? "True" : "False") + ")";
      });
  m.def(
      "run_policy",
      [](const std::string& policy, std::size_t capacity, const Workload& w) {
        return run_policy(policy, capacity, w);
      },
      py::arg("policy"), py::arg("capacity"), py::arg("workload"));

  py::class_<BandwidthParams>(m, "BandwidthParams")
      .def(py::init([](double k, std::uint64_t capacity, const std::string& mode,
                       const std::string& rate) {
             return BandwidthParams{k, capacity, parse_mass_model(mode),
                                    parse_rate_convention(rate)};
           }),
           py::arg("k") = 1.0, py::arg("cache_capacity") = 1,
           py::arg("mode") = "exact", py::arg("rate") = "product")
      .def_readwrite("k", &BandwidthParams::k)
      .def_readwrite("cache_capacity", &BandwidthParams::cache_capacity);

  m.def("miss_probability", &miss_probability, py::arg("catalog"),
        py::arg("rank"), py::arg("r_requests"));
  m.def("hit_miss_on_demand", &hit_miss_on_demand, py::arg("catalog"),
        py::arg("r_requests"), py::arg("upper_rank"));
  m.def("top_c_mass", &top_c_mass, py::arg("catalog"), py::arg("c"));
  m.def(
      "top_c_mass_asymptotic",
      [](const ZipfCatalog& catalog, std::uint64_t c, const std::string& mode) {
        if (mode != "paper" && mode != "paper_literal" && mode != "corrected") {
          throw std::invalid_argument("mode must be paper or corrected");
        }
        return top_c_mass_asymptotic(catalog, c,
                                     mode == "corrected"
                                         ? AsymptoticForm::kCorrected
                                         : AsymptoticForm::kPaperLiteral);
      },
      py::arg("catalog"), py::arg("c"), py::arg("mode") = "corrected");
  m.def("bandwidth_per_rank", &bandwidth_per_rank, py::arg("rank"),
        py::arg("attributes"), py::arg("params"), py::arg("catalog"));
  m.def("aggregate_bandwidth", &aggregate_bandwidth, py::arg("attributes"),
        py::arg("params"), py::arg("catalog"), py::arg("n_ranks"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n_objects", &SimConfig::n_objects)
      .def_readwrite("alpha", &SimConfig::alpha)
      .def_readwrite("total_requests", &SimConfig::total_requests)
      .def_readwrite("session_size", &SimConfig::session_size)
      .def_readwrite("cache_capacity", &SimConfig::cache_capacity)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("k", &SimConfig::k)
      .def_property(
          "policy",
          [](const SimConfig& c) { return std::string(policy_name(c.policy)); },
          [](SimConfig& c, const std::string& p) { c.policy = parse_policy(p); })
      .def_property(
          "rate",
          [](const SimConfig& c) {
            return std::string(rate_convention_name(c.rate));
          },
          [](SimConfig& c, const std::string& r) {
            c.rate = parse_rate_convention(r);
          });

  py::class_<SimReport>(m, "SimReport")
      .def_property_readonly("hit_ratio",
                             [](const SimReport& r) { return r.totals.hit_ratio; })
      .def_property_readonly("miss_ratio",
                             [](const SimReport& r) { return r.totals.miss_ratio; })
      .def_property_readonly("hits", [](const SimReport& r) { return r.totals.hits; })
      .def_property_readonly("misses",
                             [](const SimReport& r) { return r.totals.misses; })
      .def_property_readonly(
          "total_bandwidth",
          [](const SimReport& r) { return r.totals.total_bandwidth; })
      .def_readonly("workload_seed", &SimReport::workload_seed)
      .def_readonly("sweep_index", &SimReport::sweep_index)
      .def_readonly("elapsed_seconds", &SimReport::elapsed_seconds)
      .def_property_readonly("requests_per_rank",
                             [](const SimReport& r) {
                               std::vector<std::uint64_t> v;
                               for (const auto& t : r.per_rank) v.push_back(t.requests);
                               return v;
                             })
      .def_property_readonly("misses_per_rank",
                             [](const SimReport& r) {
                               std::vector<std::uint64_t> v;
                               for (const auto& t : r.per_rank) v.push_back(t.misses);
                               return v;
                             })
      .def("summary_json", &summary_json);

  m.def("run_simulation",
        py::overload_cast<const SimConfig&>(&run_simulation), py::arg("config"));
  m.def(
      "sweep",
      [](const SimConfig& base, std::vector<double> alphas,
         std::vector<std::uint64_t> capacities) {
        return sweep(SweepConfig{base, std::move(alphas), std::move(capacities)});
      },
      py::arg("base"), py::arg("alphas") = std::vector<double>{},
      py::arg("capacities") = std::vector<std::uint64_t>{});

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("capacity", &ComparisonRow::capacity)
      .def_readonly("simulated_hit_ratio", &ComparisonRow::simulated_hit_ratio)
      .def_readonly("top_c_mass", &ComparisonRow::top_c_mass)
      .def_readonly("gap", &ComparisonRow::gap)
      .def_readonly("sim_bandwidth", &ComparisonRow::sim_bandwidth)
      .def_readonly("model_bandwidth_product",
                    &ComparisonRow::model_bandwidth_product)
      .def_readonly("model_bandwidth_ratio", &ComparisonRow::model_bandwidth_ratio);
  m.def(
      "compare_analytic",
      [](const SimConfig& config, std::vector<std::uint64_t> capacities) {
        return compare_analytic(config, capacities);
      },
      py::arg("config"), py::arg("capacities"));

  m.def("fit_power_law", &power_law, py::arg("counts"), py::arg("max_rank"),
        "Returns (slope, r_squared) of log(count) against log(rank).");
}
