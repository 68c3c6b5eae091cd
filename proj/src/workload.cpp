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

#include "proxysim/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>

namespace proxysim {

namespace {

void check_interval(Interval range, const char* name) {
  if (!(range.lo > 0.0) || !(range.lo <= range.hi) || !std::isfinite(range.hi)) {
    throw std::invalid_argument(std::string(name) +
                                " range must satisfy 0 < lo <= hi");
  }
}

double draw_in(Interval range, RandomStream& rng) {
  return range.lo + (range.hi - range.lo) * unit_uniform(rng);
}

bool parse_unsigned(std::string_view text, std::uint64_t& value) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

// Parses "#n_objects=<N> session=<m>".
void parse_header(std::string_view line, std::uint64_t& n_objects,
                  std::uint64_t& session) {
  line.remove_prefix(1);
  bool have_n = false;
  bool have_session = false;
  while (!line.empty()) {
    const auto space = line.find(' ');
    const auto field = line.substr(0, space);
    line = space == std::string_view::npos ? std::string_view{}
                                           : line.substr(space + 1);
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw TraceParseError(1, "malformed header field '" +
                                   std::string(field) + "'");
    }
    const auto key = field.substr(0, eq);
    std::uint64_t value = 0;
    if (!parse_unsigned(field.substr(eq + 1), value) || value == 0) {
      throw TraceParseError(1, "header value for '" + std::string(key) +
                                   "' must be a positive integer");
    }
    if (key == "n_objects") {
      n_objects = value;
      have_n = true;
    } else if (key == "session") {
      session = value;
      have_session = true;
    } else {
      throw TraceParseError(1, "unknown header key '" + std::string(key) + "'");
    }
  }
  if (!have_n || !have_session) {
    throw TraceParseError(1, "header needs n_objects and session");
  }
}

}  // namespace

std::span<const Rank> Workload::session(std::size_t index) const {
  const std::size_t begin = index == 0 ? 0 : session_boundaries.at(index - 1);
  const std::size_t end = session_boundaries.at(index);
  return std::span<const Rank>(requests).subspan(begin, end - begin);
}

std::uint64_t RankHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

TraceParseError::TraceParseError(std::size_t line, const std::string& message)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + message),
      line_(line) {}

std::vector<std::size_t> block_boundaries(std::size_t total,
                                          std::size_t session_size) {
  if (session_size == 0) {
    throw std::invalid_argument("session size must be >= 1");
  }
  std::vector<std::size_t> boundaries;
  boundaries.reserve(total / session_size + 1);
  for (std::size_t end = session_size; end < total; end += session_size) {
    boundaries.push_back(end);
  }
  boundaries.push_back(total);
  return boundaries;
}

Workload generate_workload(const ZipfCatalog& catalog,
                           std::size_t total_requests,
                           std::size_t session_size, std::uint64_t seed) {
  if (total_requests == 0) {
    throw std::invalid_argument("workload needs at least one request");
  }
  Workload workload;
  workload.seed = seed;
  workload.n_objects = catalog.n_objects();
  workload.session_boundaries = block_boundaries(total_requests, session_size);
  workload.requests.resize(total_requests);

  RandomStream rng(seed);
  for (auto& rank : workload.requests) {
    rank = catalog.sample(rng);
  }
  return workload;
}

ObjectAttributes assign_attributes(std::uint64_t n_objects,
                                   Interval size_range_kb,
                                   Interval time_range_ms, std::uint64_t seed) {
  if (n_objects == 0) {
    throw std::invalid_argument("attributes need at least one object");
  }
  check_interval(size_range_kb, "size");
  check_interval(time_range_ms, "channel time");

  ObjectAttributes attributes;
  attributes.sizes_kb.resize(n_objects);
  attributes.channel_ms.resize(n_objects);
  RandomStream rng(seed);
  for (std::uint64_t i = 0; i < n_objects; ++i) {
    attributes.sizes_kb[i] = draw_in(size_range_kb, rng);
    attributes.channel_ms[i] = draw_in(time_range_ms, rng);
  }
  return attributes;
}

RankHistogram rank_histogram(const Workload& workload) {
  RankHistogram histogram;
  histogram.counts.assign(workload.n_objects, 0);
  for (const Rank rank : workload.requests) {
    ++histogram.counts.at(rank - 1);
  }
  return histogram;
}

void write_trace(const Workload& workload, std::ostream& out) {
  const auto& bounds = workload.session_boundaries;
  if (workload.requests.empty() || bounds.empty()) {
    throw std::invalid_argument("cannot save an empty workload");
  }
  const std::size_t session_size = bounds.front();
  if (bounds != block_boundaries(workload.size(), session_size)) {
    throw std::invalid_argument(
        "trace format only records fixed-size sessions");
  }

  out << "#n_objects=" << workload.n_objects << " session=" << session_size
      << '\n';
  char buf[16];
  for (const Rank rank : workload.requests) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), rank);
    *end++ = '\n';
    out.write(buf, end - buf);
  }
}

Workload read_trace(std::istream& in) {
  Workload workload;
  std::uint64_t declared_objects = 0;
  std::uint64_t session_size = 0;
  std::uint64_t max_rank = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (line_no == 1 && text.starts_with('#')) {
      parse_header(text, declared_objects, session_size);
      continue;
    }
    std::uint64_t rank = 0;
    if (!parse_unsigned(text, rank)) {
      throw TraceParseError(line_no, "expected a decimal rank, got '" +
                                         std::string(text) + "'");
    }
    if (rank == 0) {
      throw TraceParseError(line_no, "ranks start at 1");
    }
    if (declared_objects != 0 && rank > declared_objects) {
      throw TraceParseError(line_no, "rank " + std::to_string(rank) +
                                         " exceeds n_objects=" +
                                         std::to_string(declared_objects));
    }
    if (rank > std::numeric_limits<Rank>::max()) {
      throw TraceParseError(line_no, "rank too large");
    }
    max_rank = std::max(max_rank, rank);
    workload.requests.push_back(static_cast<Rank>(rank));
  }
  if (in.bad()) {
    throw std::runtime_error("read error while loading trace");
  }
  if (workload.requests.empty()) {
    throw TraceParseError(line_no == 0 ? 1 : line_no,
                          "trace holds no requests");
  }

  workload.n_objects = declared_objects != 0 ? declared_objects : max_rank;
  workload.session_boundaries = block_boundaries(
      workload.size(), session_size != 0 ? session_size : workload.size());
  return workload;
}

void save_trace(const Workload& workload, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_trace(workload, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

Workload load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open trace " + path.string());
  }
  return read_trace(in);
}

void write_attributes_csv(const ObjectAttributes& attributes,
                          std::ostream& out) {
  out << "rank,size_kb,channel_ms\n";
  char buf[96];
  for (std::size_t i = 0; i < attributes.n_objects(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i + 1,
                  attributes.sizes_kb[i], attributes.channel_ms[i]);
    out << buf;
  }
}

}  // namespace proxysim
