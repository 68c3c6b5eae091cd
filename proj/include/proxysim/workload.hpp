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

#ifndef PROXYSIM_WORKLOAD_HPP
#define PROXYSIM_WORKLOAD_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "proxysim/popularity.hpp"

namespace proxysim {

// Closed interval [lo, hi] with 0 < lo <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr Interval kDefaultSizeRangeKb{1.0, 15.0};
inline constexpr Interval kDefaultChannelRangeMs{1.0, 10.0};
inline constexpr std::size_t kDefaultSessionSize = 1000;

// Per-rank file size (kilobits) and channel activity time (milliseconds).
struct ObjectAttributes {
  std::vector<double> sizes_kb;
  std::vector<double> channel_ms;

  std::size_t n_objects() const { return sizes_kb.size(); }
};

struct Workload {
  std::vector<Rank> requests;
  // End offsets of consecutive sessions; the last equals requests.size().
  std::vector<std::size_t> session_boundaries;
  // 0 when loaded from a trace file.
  std::uint64_t seed = 0;
  std::uint64_t n_objects = 0;

  std::size_t size() const { return requests.size(); }
  std::size_t session_count() const { return session_boundaries.size(); }
  std::span<const Rank> session(std::size_t index) const;

  bool operator==(const Workload&) const = default;
};

struct RankHistogram {
  // Index r-1 counts requests for rank r.
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};

// Thrown by load_trace; line() is 1-based.
class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Session boundaries for `total` requests cut into blocks of `session_size`.
std::vector<std::size_t> block_boundaries(std::size_t total,
                                          std::size_t session_size);

// i.i.d. draws from the catalog, cut into sessions of session_size (the last
// may be shorter). Pure function of its arguments.
Workload generate_workload(const ZipfCatalog& catalog,
                           std::size_t total_requests,
                           std::size_t session_size, std::uint64_t seed);

// Sizes and times drawn independently and uniformly from their intervals.
ObjectAttributes assign_attributes(std::uint64_t n_objects,
                                   Interval size_range_kb,
                                   Interval time_range_ms, std::uint64_t seed);

RankHistogram rank_histogram(const Workload& workload);

// Trace format:
//   #n_objects=<N> session=<m>
//   <rank>
//   ...
// The header is optional on load; without it N is the largest rank seen and
// the whole trace is one session. save_trace requires block-shaped sessions
// (every session but the last has the same length).
void write_trace(const Workload& workload, std::ostream& out);
Workload read_trace(std::istream& in);
void save_trace(const Workload& workload, const std::filesystem::path& path);
Workload load_trace(const std::filesystem::path& path);

// `rank,size_kb,channel_ms`
void write_attributes_csv(const ObjectAttributes& attributes,
                          std::ostream& out);

}  // namespace proxysim

#endif  // PROXYSIM_WORKLOAD_HPP
