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

#include "proxysim/cache.hpp"

#include <algorithm>
#include <stdexcept>

namespace proxysim {

Policy parse_policy(std::string_view name) {
  if (name == "session_lfu") return Policy::kSessionLfu;
  if (name == "lru") return Policy::kLru;
  if (name == "lfu_classic") return Policy::kLfuClassic;
  throw std::invalid_argument("unknown policy '" + std::string(name) +
                              "' (expected session_lfu, lru or lfu_classic)");
}

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::kSessionLfu:
      return "session_lfu";
    case Policy::kLru:
      return "lru";
    case Policy::kLfuClassic:
      return "lfu_classic";
  }
  return "unknown";
}

SessionBuffer::SessionBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("session buffer capacity must be >= 1");
  }
  pending_.reserve(capacity);
}

void SessionBuffer::push(Rank rank) {
  if (pending_.size() == capacity_) {
    throw std::length_error("session buffer full");
  }
  pending_.push_back(rank);
}

SessionLfuCache::SessionLfuCache(std::size_t capacity,
                                 std::span<const Rank> warm_list)
    : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("cache capacity must be >= 1");
  }
  if (warm_list.size() > capacity) {
    throw std::invalid_argument("warm list larger than cache capacity");
  }
  for (const Rank rank : warm_list) {
    if (rank == 0) {
      throw std::invalid_argument("warm list ranks start at 1");
    }
    if (entries_.contains(rank)) {
      throw std::invalid_argument("duplicate rank " + std::to_string(rank) +
                                  " in warm list");
    }
    insert(rank, 0);
  }
}

void SessionLfuCache::insert(Rank rank, std::uint64_t hit_count) {
  const CacheEntry entry{hit_count, next_seq_++};
  entries_.emplace(rank, entry);
  eviction_order_.emplace(EvictionKey{entry.hit_count, entry.insertion_seq},
                          rank);
}

AccessOutcome SessionLfuCache::access(Rank rank) {
  if (auto it = entries_.find(rank); it != entries_.end()) {
    CacheEntry& entry = it->second;
    auto node = eviction_order_.extract({entry.hit_count, entry.insertion_seq});
    ++entry.hit_count;
    node.key() = {entry.hit_count, entry.insertion_seq};
    eviction_order_.insert(std::move(node));
    return {rank, true, std::nullopt};
  }

  AccessOutcome outcome{rank, false, std::nullopt};
  if (entries_.size() == capacity_) {
    auto victim = eviction_order_.begin();
    outcome.evicted = victim->second;
    entries_.erase(victim->second);
    eviction_order_.erase(victim);
  }
  // The admitting request is the object's first access.
  insert(rank, 1);
  return outcome;
}

void SessionLfuCache::process_session(SessionBuffer& buffer,
                                      std::vector<AccessOutcome>& outcomes) {
  for (const Rank rank : buffer.pending()) {
    outcomes.push_back(access(rank));
  }
  buffer.flush();
}

std::vector<AccessOutcome> SessionLfuCache::process_session(
    SessionBuffer& buffer) {
  std::vector<AccessOutcome> outcomes;
  outcomes.reserve(buffer.pending().size());
  process_session(buffer, outcomes);
  return outcomes;
}

std::optional<CacheEntry> SessionLfuCache::entry(Rank rank) const {
  if (auto it = entries_.find(rank); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::vector<std::pair<Rank, CacheEntry>> SessionLfuCache::entries() const {
  std::vector<std::pair<Rank, CacheEntry>> out(entries_.begin(),
                                               entries_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

LruCache::LruCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("cache capacity must be >= 1");
  }
}

AccessOutcome LruCache::access(Rank rank) {
  if (auto it = index_.find(rank); it != index_.end()) {
    recency_.splice(recency_.begin(), recency_, it->second);
    return {rank, true, std::nullopt};
  }
  AccessOutcome outcome{rank, false, std::nullopt};
  if (index_.size() == capacity_) {
    const Rank victim = recency_.back();
    recency_.pop_back();
    index_.erase(victim);
    outcome.evicted = victim;
  }
  recency_.push_front(rank);
  index_.emplace(rank, recency_.begin());
  return outcome;
}

std::vector<AccessOutcome> run_policy(Policy policy, std::size_t capacity,
                                      const Workload& workload) {
  std::vector<AccessOutcome> outcomes;
  outcomes.reserve(workload.size());

  switch (policy) {
    case Policy::kSessionLfu: {
      std::size_t longest = 1;
      for (std::size_t s = 0; s < workload.session_count(); ++s) {
        longest = std::max(longest, workload.session(s).size());
      }
      SessionLfuCache cache(capacity);
      SessionBuffer buffer(longest);
      for (std::size_t s = 0; s < workload.session_count(); ++s) {
        for (const Rank rank : workload.session(s)) buffer.push(rank);
        cache.process_session(buffer, outcomes);
      }
      break;
    }
    case Policy::kLfuClassic: {
      SessionLfuCache cache(capacity);
      SessionBuffer buffer(1);
      for (const Rank rank : workload.requests) {
        buffer.push(rank);
        cache.process_session(buffer, outcomes);
      }
      break;
    }
    case Policy::kLru: {
      LruCache cache(capacity);
      for (const Rank rank : workload.requests) {
        outcomes.push_back(cache.access(rank));
      }
      break;
    }
  }
  return outcomes;
}

std::vector<AccessOutcome> run_policy(std::string_view policy,
                                      std::size_t capacity,
                                      const Workload& workload) {
  return run_policy(parse_policy(policy), capacity, workload);
}

}  // namespace proxysim
