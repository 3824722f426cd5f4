// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "orkg/graph_store.hpp"

namespace orkg::graph {

// Single-writer / multi-reader wrapper. A write callback runs under the
// exclusive lock, so readers see either none or all of it.
//
// glibc's rwlock prefers readers, so a steady stream of readers would starve
// writers. A waiting writer holds gate_, which new readers must pass through
// before taking the shared lock.
class SharedGraph {
 public:
  explicit SharedGraph(GraphStore store = GraphStore{}) : store_(std::move(store)) {}

  template <typename F>
  decltype(auto) read(F&& f) const {
    { std::lock_guard pass(gate_); }
    std::shared_lock lock(mutex_);
    return std::forward<F>(f)(std::as_const(store_));
  }

  // The generation advances once per write call, whether or not it threw.
  template <typename F>
  decltype(auto) write(F&& f) {
    std::unique_lock gate(gate_);
    std::unique_lock lock(mutex_);
    gate.unlock();
    struct Bump {
      std::atomic<std::uint64_t>& g;
      ~Bump() { g.fetch_add(1, std::memory_order_release); }
    } bump{generation_};
    return std::forward<F>(f)(store_);
  }

  std::uint64_t generation() const { return generation_.load(std::memory_order_acquire); }

 private:
  mutable std::mutex gate_;
  mutable std::shared_mutex mutex_;
  GraphStore store_;
  std::atomic<std::uint64_t> generation_{0};
};

}  // namespace orkg::graph
