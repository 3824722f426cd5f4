// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Durable state of a data directory:
//
//   LOCK            flock()ed by the owning process
//   snapshot.json   {"sequence", "dump", "records", "counters"}
//   snapshot-N.dump dump-format image covering events 1..N
//   events.log      one JSON event per line, sequence N+1, N+2, ...
//
// An event is appended and fsync()ed before the write that produced it is
// acknowledged. Replay loads the snapshot and re-applies every later event.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orkg/graph_store.hpp"

namespace orkg::service {

using graph::GraphStore;
using graph::Mutation;

struct EventRecord {
  std::uint64_t sequence = 0;
  std::string op;
  std::vector<Mutation> mutations;
  std::string timestamp;
};

nlohmann::json mutation_to_json(const Mutation& m);
Mutation mutation_from_json(const nlohmann::json& j);  // throws MalformedRecord
std::string encode_event(const EventRecord& e);         // no trailing newline
EventRecord decode_event(const std::string& line);      // throws MalformedRecord

// Exclusive advisory lock on <dir>/LOCK for the lifetime of the object.
class DirectoryLock {
 public:
  // Throws DirectoryLocked if another holder exists, StorageFailure if the
  // directory cannot be created or written.
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

struct SnapshotStats {
  std::uint64_t sequence = 0;
  std::size_t records = 0;
};

// Points at which a test can interrupt the write path.
enum class FaultPoint { BeforeAppend, AfterAppend, BeforeSnapshotCommit };

class Storage {
 public:
  using FaultHook = std::function<void(FaultPoint)>;

  // Takes the directory lock.
  explicit Storage(std::filesystem::path dir);
  ~Storage();
  Storage(const Storage&) = delete;
  Storage& operator=(const Storage&) = delete;

  // Loads snapshot + log into `store` (which must be empty). A torn final
  // line is dropped and truncated away. Throws CorruptLog naming the
  // sequence number of the first bad record.
  void recover(GraphStore& store);

  // Appends one event and flushes it to disk. Returns its sequence number.
  // On failure nothing is appended and StorageFailure is thrown. A fault
  // hook that throws at AfterAppend simulates a crash after the flush; the
  // instance must then be discarded.
  std::uint64_t append(const std::string& op, const std::vector<Mutation>& mutations);

  // Writes a snapshot of `store` covering every appended event and empties
  // the log. On failure the previous snapshot stays in force.
  SnapshotStats compact(const GraphStore& store);

  std::uint64_t last_sequence() const { return sequence_; }
  std::uint64_t snapshot_sequence() const { return snapshot_sequence_; }
  bool fresh() const { return fresh_; }
  const std::filesystem::path& dir() const { return dir_; }

  void set_fault_hook(FaultHook hook) { fault_ = std::move(hook); }

 private:
  void fault(FaultPoint p) const {
    if (fault_) fault_(p);
  }
  void open_log();

  std::filesystem::path dir_;
  DirectoryLock lock_;
  int log_fd_ = -1;
  std::uint64_t sequence_ = 0;
  std::uint64_t snapshot_sequence_ = 0;
  bool fresh_ = true;
  FaultHook fault_;
};

}  // namespace orkg::service
