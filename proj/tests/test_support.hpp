// Copyright 2026 The proxysim Authors.
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the unit and acceptance suites.

#ifndef PROXYSIM_TESTS_TEST_SUPPORT_HPP
#define PROXYSIM_TESTS_TEST_SUPPORT_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

namespace proxysim::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("proxysim_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::size_t count_entries(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir)) return 0;
  return static_cast<std::size_t>(std::distance(
      std::filesystem::directory_iterator(dir),
      std::filesystem::directory_iterator()));
}

// Upper 0.001 quantile of chi-square(df), Wilson-Hilferty approximation.
// Slightly conservative for small df (28.06 vs the exact 27.88 at df = 9).
inline double chi_square_critical_999(double df) {
  const double z = 3.090232306167813;
  const double h = 2.0 / (9.0 * df);
  const double cube = 1.0 - h + z * std::sqrt(h);
  return df * cube * cube * cube;
}

struct ChiSquare {
  double statistic = 0.0;
  std::size_t bins = 0;
};

// Pearson chi-square of observed counts against expected counts, merging
// consecutive cells until each merged bin expects at least `min_expected`.
inline ChiSquare binned_chi_square(std::span<const std::uint64_t> observed,
                                   std::span<const double> expected,
                                   double min_expected = 5.0) {
  ChiSquare result;
  double obs_acc = 0.0;
  double exp_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs_acc += static_cast<double>(observed[i]);
    exp_acc += expected[i];
    if (exp_acc >= min_expected) {
      result.statistic += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
      ++result.bins;
      obs_acc = 0.0;
      exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0) {
    // Fold the short tail into its own bin; it still expects > 0.
    result.statistic += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
    ++result.bins;
  }
  return result;
}

}  // namespace proxysim::testing

#endif  // PROXYSIM_TESTS_TEST_SUPPORT_HPP
