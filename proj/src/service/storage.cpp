// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/service/storage.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "orkg/dump.hpp"
#include "orkg/error.hpp"

namespace orkg::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kLogName = "events.log";
constexpr const char* kSnapshotName = "snapshot.json";

[[noreturn]] void storage_failure(const std::string& what) {
  throw Error(ErrorCode::StorageFailure, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::string& data) {
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      storage_failure("write");
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

void sync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) storage_failure("open " + dir.string());
  const int rc = ::fsync(fd);
  ::close(fd);
  if (rc != 0) storage_failure("fsync " + dir.string());
}

// Write to <path>.tmp, fsync, rename over <path>.
void write_file_atomic(const fs::path& path, const std::string& data) {
  const fs::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) storage_failure("open " + tmp.string());
  try {
    write_all(fd, data);
    if (::fsync(fd) != 0) storage_failure("fsync " + tmp.string());
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    ::unlink(tmp.c_str());
    storage_failure("rename " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) storage_failure("open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json counters_to_json(const graph::IdCounters& c) {
  return {{"resource", c.resource}, {"predicate", c.predicate}, {"literal", c.literal}, {"statement", c.statement}};
}

graph::IdCounters counters_from_json(const json& j) {
  return {j.at("resource").get<std::uint64_t>(), j.at("predicate").get<std::uint64_t>(),
          j.at("literal").get<std::uint64_t>(), j.at("statement").get<std::uint64_t>()};
}

std::string now_string() { return graph::format_timestamp(GraphStore::system_now()); }

}  // namespace

json mutation_to_json(const Mutation& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, graph::NodeCreated>) {
          return {{"type", "node"}, {"record", graph::node_record(v.node)}};
        } else if constexpr (std::is_same_v<T, graph::StatementAdded>) {
          return {{"type", "add"}, {"record", graph::statement_record(v.statement)}};
        } else if constexpr (std::is_same_v<T, graph::StatementDeleted>) {
          return {{"type", "delete"}, {"record", graph::statement_record(v.statement)}};
        } else {
          json j{{"type", "annotate"}, {"id", v.id.str()}, {"key", v.key}, {"value", v.value}};
          j["previous"] = v.previous ? json(*v.previous) : json(nullptr);
          return j;
        }
      },
      m);
}

Mutation mutation_from_json(const json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "node") return graph::NodeCreated{graph::parse_node_record(j.at("record"))};
    if (type == "add") return graph::StatementAdded{graph::parse_statement_record(j.at("record"))};
    if (type == "delete") return graph::StatementDeleted{graph::parse_statement_record(j.at("record"))};
    if (type == "annotate") {
      graph::StatementAnnotated a;
      const auto id = graph::StatementId::parse(j.at("id").get<std::string>());
      if (!id) throw Error(ErrorCode::MalformedRecord, "bad statement id");
      a.id = *id;
      a.key = j.at("key").get<std::string>();
      a.value = j.at("value").get<std::string>();
      if (!j.at("previous").is_null()) a.previous = j.at("previous").get<std::string>();
      return a;
    }
    throw Error(ErrorCode::MalformedRecord, "unknown mutation type '" + type + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

std::string encode_event(const EventRecord& e) {
  nlohmann::ordered_json j;
  j["seq"] = e.sequence;
  j["op"] = e.op;
  j["ts"] = e.timestamp;
  json payload = json::array();
  for (const auto& m : e.mutations) payload.push_back(mutation_to_json(m));
  j["mutations"] = std::move(payload);
  return j.dump();
}

EventRecord decode_event(const std::string& line) {
  try {
    const auto j = json::parse(line);
    EventRecord e;
    e.sequence = j.at("seq").get<std::uint64_t>();
    e.op = j.at("op").get<std::string>();
    e.timestamp = j.at("ts").get<std::string>();
    for (const auto& m : j.at("mutations")) e.mutations.push_back(mutation_from_json(m));
    return e;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

DirectoryLock::DirectoryLock(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "cannot create " + dir.string() + ": " + ec.message());
  const fs::path path = dir / "LOCK";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) storage_failure("open " + path.string());
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    if (err == EWOULDBLOCK) throw Error(ErrorCode::DirectoryLocked, dir.string() + " is in use by another process");
    errno = err;
    storage_failure("flock " + path.string());
  }
  // Writability check up front rather than on the first write.
  if (::access(dir.c_str(), W_OK) != 0) storage_failure(dir.string() + " is not writable");
}

DirectoryLock::~DirectoryLock() {
  if (fd_ >= 0) ::close(fd_);  // releases the flock
}

Storage::Storage(fs::path dir) : dir_(std::move(dir)), lock_(dir_) {}

Storage::~Storage() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

void Storage::open_log() {
  const fs::path path = dir_ / kLogName;
  log_fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (log_fd_ < 0) storage_failure("open " + path.string());
}

void Storage::recover(GraphStore& store) {
  if (!store.empty()) throw Error(ErrorCode::BadRequest, "recover needs an empty store");
  const fs::path snapshot = dir_ / kSnapshotName;
  if (fs::exists(snapshot)) {
    fresh_ = false;
    try {
      const auto meta = json::parse(read_file(snapshot));
      snapshot_sequence_ = meta.at("sequence").get<std::uint64_t>();
      std::ifstream dump(dir_ / meta.at("dump").get<std::string>(), std::ios::binary);
      if (!dump) throw Error(ErrorCode::CorruptLog, "snapshot dump missing");
      graph::import_dump(store, dump);
      store.advance_counters(counters_from_json(meta.at("counters")));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::CorruptLog, std::string("snapshot metadata: ") + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CorruptLog) throw;
      throw Error(ErrorCode::CorruptLog, std::string("snapshot: ") + e.what());
    }
    sequence_ = snapshot_sequence_;
  }

  const fs::path log = dir_ / kLogName;
  std::string content = fs::exists(log) ? read_file(log) : std::string();
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto end = content.find('\n', pos);
    if (end == std::string::npos) {
      // Torn tail: never flushed completely, never acknowledged.
      fs::resize_file(log, pos);
      break;
    }
    const std::uint64_t expected = sequence_ + 1;
    EventRecord event;
    try {
      event = decode_event(content.substr(pos, end - pos));
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptLog, "event " + std::to_string(expected) + ": " + e.what());
    }
    pos = end + 1;
    // Events already folded into the snapshot (crash between snapshot commit
    // and log truncation).
    if (event.sequence <= snapshot_sequence_ && snapshot_sequence_ > 0) continue;
    if (event.sequence != expected) {
      throw Error(ErrorCode::CorruptLog, "event " + std::to_string(expected) + ": found sequence " +
                                             std::to_string(event.sequence));
    }
    try {
      for (const auto& m : event.mutations) store.apply(m);
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptLog, "event " + std::to_string(expected) + ": " + e.what());
    }
    sequence_ = event.sequence;
    fresh_ = false;
  }
  open_log();
}

std::uint64_t Storage::append(const std::string& op, const std::vector<Mutation>& mutations) {
  if (log_fd_ < 0) throw Error(ErrorCode::StorageFailure, "storage not recovered");
  EventRecord event{sequence_ + 1, op, mutations, now_string()};
  const std::string line = encode_event(event) + "\n";
  try {
    fault(FaultPoint::BeforeAppend);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::StorageFailure, e.what());
  }
  const off_t offset = ::lseek(log_fd_, 0, SEEK_END);
  try {
    write_all(log_fd_, line);
    if (::fdatasync(log_fd_) != 0) storage_failure("fdatasync");
  } catch (...) {
    if (offset >= 0 && ::ftruncate(log_fd_, offset) != 0) {
      // Nothing more to do; recovery treats the remainder as a torn tail.
    }
    throw;
  }
  sequence_ = event.sequence;
  fresh_ = false;
  fault(FaultPoint::AfterAppend);
  return sequence_;
}

SnapshotStats Storage::compact(const GraphStore& store) {
  const std::uint64_t seq = sequence_;
  const std::string dump_name = "snapshot-" + std::to_string(seq) + ".dump";
  std::string previous_dump;
  if (fs::exists(dir_ / kSnapshotName)) {
    try {
      previous_dump = json::parse(read_file(dir_ / kSnapshotName)).at("dump").get<std::string>();
    } catch (const json::exception&) {
    }
  }

  std::ostringstream dump;
  const std::size_t records = graph::export_dump(store, dump);
  write_file_atomic(dir_ / dump_name, dump.str());
  nlohmann::ordered_json meta;
  meta["sequence"] = seq;
  meta["dump"] = dump_name;
  meta["records"] = records;
  meta["counters"] = counters_to_json(store.counters());
  fault(FaultPoint::BeforeSnapshotCommit);
  write_file_atomic(dir_ / kSnapshotName, meta.dump(2) + "\n");
  sync_dir(dir_);
  snapshot_sequence_ = seq;

  // The snapshot is committed; from here on failures only leave redundant
  // events behind, which recovery skips.
  if (log_fd_ >= 0 && ::ftruncate(log_fd_, 0) == 0) ::fdatasync(log_fd_);
  if (!previous_dump.empty() && previous_dump != dump_name) {
    std::error_code ec;
    fs::remove(dir_ / previous_dump, ec);
  }
  fresh_ = false;
  return {seq, records};
}

}  // namespace orkg::service
