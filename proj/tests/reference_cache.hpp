// Copyright 2026 The proxysim Authors.
// SPDX-License-Identifier: Apache-2.0

// Straight transcription of the least-hit-count replacement rule, written
// without any of the production data structures: a flat vector rescanned on
// every request. Used as the oracle for SessionLfuCache.

#ifndef PROXYSIM_TESTS_REFERENCE_CACHE_HPP
#define PROXYSIM_TESTS_REFERENCE_CACHE_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace proxysim::testing {

struct ReferenceOutcome {
  std::uint32_t rank;
  bool hit;
  std::optional<std::uint32_t> evicted;
};

class ReferenceLeastHitCache {
 public:
  explicit ReferenceLeastHitCache(std::size_t capacity) : capacity_(capacity) {}

  ReferenceOutcome access(std::uint32_t rank) {
    for (Slot& slot : slots_) {
      if (slot.rank == rank) {
        slot.hits += 1;
        return {rank, true, std::nullopt};
      }
    }
    std::optional<std::uint32_t> evicted;
    if (slots_.size() == capacity_) {
      std::size_t victim = 0;
      for (std::size_t i = 1; i < slots_.size(); ++i) {
        const bool fewer = slots_[i].hits < slots_[victim].hits;
        const bool tie_older = slots_[i].hits == slots_[victim].hits &&
                               slots_[i].stamp < slots_[victim].stamp;
        if (fewer || tie_older) victim = i;
      }
      evicted = slots_[victim].rank;
      slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    slots_.push_back({rank, 1, clock_++});
    return {rank, false, evicted};
  }

  std::size_t size() const { return slots_.size(); }

 private:
  struct Slot {
    std::uint32_t rank;
    double hits;
    std::uint64_t stamp;
  };
  std::size_t capacity_;
  std::uint64_t clock_ = 0;
  std::vector<Slot> slots_;
};

}  // namespace proxysim::testing

#endif  // PROXYSIM_TESTS_REFERENCE_CACHE_HPP
