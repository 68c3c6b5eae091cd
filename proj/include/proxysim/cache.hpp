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

#ifndef PROXYSIM_CACHE_HPP
#define PROXYSIM_CACHE_HPP

#include <cstddef>
#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "proxysim/popularity.hpp"
#include "proxysim/workload.hpp"

namespace proxysim {

enum class Policy {
  kSessionLfu,  // session-buffered least-hit-count replacement
  kLru,
  kLfuClassic,  // kSessionLfu processed one request at a time
};

// Accepts "session_lfu", "lru", "lfu_classic". Throws std::invalid_argument.
Policy parse_policy(std::string_view name);
std::string_view policy_name(Policy policy);

struct AccessOutcome {
  Rank rank = 0;
  bool hit = false;
  // Set only on a miss that found the cache full.
  std::optional<Rank> evicted;

  bool operator==(const AccessOutcome&) const = default;
};

struct CacheEntry {
  std::uint64_t hit_count = 0;
  std::uint64_t insertion_seq = 0;

  bool operator==(const CacheEntry&) const = default;
};

// Requests staged for one session. process_session empties it.
class SessionBuffer {
 public:
  explicit SessionBuffer(std::size_t capacity);

  // Throws std::length_error when the buffer is full.
  void push(Rank rank);
  void flush() { pending_.clear(); }

  std::span<const Rank> pending() const { return pending_; }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return pending_.empty(); }

 private:
  std::size_t capacity_;
  std::vector<Rank> pending_;
};

// Bounded cache that evicts the resident object with the smallest hit count,
// oldest insertion first among ties. A hit bumps the count by one; an
// admitted object starts at one. Counts are never aged and do not survive
// eviction.
class SessionLfuCache {
 public:
  // Warm entries start at hit count 0 with insertion order following the
  // list. Throws std::invalid_argument on capacity 0, duplicates, or a list
  // longer than the capacity.
  explicit SessionLfuCache(std::size_t capacity,
                           std::span<const Rank> warm_list = {});

  AccessOutcome access(Rank rank);

  // Serves every pending request in order, appends one outcome per request
  // to `outcomes`, then flushes the buffer.
  void process_session(SessionBuffer& buffer,
                       std::vector<AccessOutcome>& outcomes);
  std::vector<AccessOutcome> process_session(SessionBuffer& buffer);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(Rank rank) const { return entries_.contains(rank); }
  std::optional<CacheEntry> entry(Rank rank) const;
  // Resident entries sorted by rank.
  std::vector<std::pair<Rank, CacheEntry>> entries() const;

 private:
  using EvictionKey = std::pair<std::uint64_t, std::uint64_t>;  // count, seq

  void insert(Rank rank, std::uint64_t hit_count);

  std::size_t capacity_;
  std::uint64_t next_seq_ = 0;
  std::unordered_map<Rank, CacheEntry> entries_;
  std::map<EvictionKey, Rank> eviction_order_;
};

class LruCache {
 public:
  explicit LruCache(std::size_t capacity);

  AccessOutcome access(Rank rank);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return index_.size(); }
  bool contains(Rank rank) const { return index_.contains(rank); }

 private:
  std::size_t capacity_;
  std::list<Rank> recency_;  // front is most recent
  std::unordered_map<Rank, std::list<Rank>::iterator> index_;
};

// Runs the whole workload through a cold cache. session_lfu stages each
// workload session in a SessionBuffer sized to the longest session.
std::vector<AccessOutcome> run_policy(Policy policy, std::size_t capacity,
                                      const Workload& workload);
std::vector<AccessOutcome> run_policy(std::string_view policy,
                                      std::size_t capacity,
                                      const Workload& workload);

}  // namespace proxysim

#endif  // PROXYSIM_CACHE_HPP
