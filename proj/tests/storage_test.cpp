// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/service/storage.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "orkg/dump.hpp"
#include "orkg/error.hpp"
#include "orkg/service/backend.hpp"
#include "support.hpp"

namespace orkg::service {
namespace {

using namespace orkg::testing;
namespace fs = std::filesystem;

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an orkg::Error";
  return ErrorCode::BadRequest;
}

BackendOptions options(const TempDir& dir, bool seed = true) {
  BackendOptions o;
  o.data_dir = dir.path();
  o.seed_vocabulary = seed;
  return o;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

GraphStore load(const std::string& dump) {
  GraphStore store;
  std::istringstream in(dump);
  graph::import_dump(store, in);
  return store;
}

struct Crash : std::runtime_error {
  Crash() : std::runtime_error("simulated crash") {}
};

TEST(EventCodecTest, RoundTripsEveryMutationKind) {
  GraphStore store = fixed_clock_store();
  store.begin_journal();
  const auto a = store.create_node(NodeKind::Resource, "A", {"Paper"});
  const auto p = store.create_node(NodeKind::Predicate, "p");
  const auto l = store.create_node(NodeKind::Literal, "line\nbreak \"quoted\"");
  const auto s = store.add_statement(a, p, l, "curator");
  store.annotate_statement(s, "note", "first");
  store.annotate_statement(s, "note", "second");
  store.delete_statement(s);
  const auto journal = store.end_journal();
  const EventRecord event{7, "test", journal, "2018-04-23T09:00:00Z"};
  const auto line = encode_event(event);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto back = decode_event(line);
  EXPECT_EQ(back.sequence, 7u);
  EXPECT_EQ(back.op, "test");
  EXPECT_EQ(back.timestamp, event.timestamp);
  GraphStore replica;
  for (const auto& m : back.mutations) replica.apply(m);
  EXPECT_TRUE(replica == store);
  EXPECT_EQ(replica.counters(), store.counters());
  EXPECT_EQ(error_of([] { decode_event("{\"seq\":1}"); }), ErrorCode::MalformedRecord);
  EXPECT_EQ(error_of([] { decode_event("nonsense"); }), ErrorCode::MalformedRecord);
}

TEST(BackendTest, FreshDirectoryHasNoStatements) {
  TempDir dir;
  Backend backend(options(dir));
  EXPECT_EQ(backend.health().statements, 0u);
  EXPECT_GT(backend.health().nodes, 0u) << "vocabulary seeded";
  EXPECT_EQ(backend.health().sequence, 0u);
  backend.create_node(NodeKind::Resource, "first");
  EXPECT_EQ(backend.health().sequence, 1u) << "first client write is event 1";
}

TEST(BackendTest, RestartKeepsState) {
  TempDir dir;
  std::string before;
  {
    Backend backend(options(dir));
    backend.ingest_paper(frankenstein_submission());
    before = backend.export_dump();
  }
  Backend reopened(options(dir));
  EXPECT_EQ(reopened.export_dump(), before);
  EXPECT_EQ(reopened.health().statements, 18u);
  EXPECT_EQ(reopened.health().sequence, 1u) << "reopening must not log another seed";
}

TEST(BackendTest, SecondInstanceIsLockedOut) {
  TempDir dir;
  Backend first(options(dir));
  EXPECT_EQ(error_of([&] { Backend second(options(dir)); }), ErrorCode::DirectoryLocked);
}

TEST(BackendTest, LockIsReleasedOnClose) {
  TempDir dir;
  { Backend first(options(dir)); }
  EXPECT_NO_THROW(Backend second(options(dir)));
}

TEST(BackendTest, CrashAfterFlushKeepsWrite) {
  TempDir dir;
  {
    Backend backend(options(dir));
    backend.storage().set_fault_hook([](FaultPoint p) {
      if (p == FaultPoint::AfterAppend) throw Crash();
    });
    EXPECT_THROW(backend.create_node(NodeKind::Resource, "durable"), Crash);
  }
  Backend reopened(options(dir));
  EXPECT_EQ(reopened.find_nodes("durable", NodeKind::Resource, 5).size(), 1u);
}

TEST(BackendTest, CrashBeforeFlushLosesUnacknowledgedWrite) {
  TempDir dir;
  {
    Backend backend(options(dir));
    backend.storage().set_fault_hook([](FaultPoint p) {
      if (p == FaultPoint::BeforeAppend) throw Crash();
    });
    EXPECT_ANY_THROW(backend.create_node(NodeKind::Resource, "lost"));
  }
  Backend reopened(options(dir));
  EXPECT_TRUE(reopened.find_nodes("lost", NodeKind::Resource, 5).empty());
}

TEST(BackendTest, StorageFailureRollsBackMemory) {
  TempDir dir;
  Backend backend(options(dir));
  const auto before = backend.export_dump();
  backend.storage().set_fault_hook([](FaultPoint p) {
    if (p == FaultPoint::BeforeAppend) throw Error(ErrorCode::StorageFailure, "disk full");
  });
  EXPECT_EQ(error_of([&] { backend.ingest_paper(frankenstein_submission()); }), ErrorCode::StorageFailure);
  EXPECT_EQ(backend.export_dump(), before);
  backend.storage().set_fault_hook(nullptr);
  // Counters were rolled back too: ids continue where they left off.
  const auto node = backend.create_node(NodeKind::Resource, "after");
  GraphStore check = load(before);
  EXPECT_EQ(node.id, check.create_node(NodeKind::Resource, "after"));
}

TEST(BackendTest, FailedWriteIsNotLogged) {
  TempDir dir;
  Backend backend(options(dir));
  EXPECT_EQ(error_of([&] { backend.create_node(NodeKind::Resource, "  "); }), ErrorCode::EmptyLabel);
  EXPECT_EQ(backend.health().sequence, 0u);
}

TEST(BackendTest, CompactThenRestartEqualsPlainRestart) {
  TempDir dir, copy;
  {
    Backend backend(options(dir));
    backend.ingest_paper(frankenstein_submission());
    const auto s = backend.query_statements({}).front();
    backend.annotate_statement(s.id, "confidence", "high");
    backend.delete_statement(backend.query_statements({}).back().id);
  }
  fs::copy(dir.path(), copy.path(), fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  std::string compacted, plain;
  graph::NodeId next_compacted, next_plain;
  {
    Backend a(options(dir));
    const auto stats = a.compact();
    EXPECT_EQ(stats.sequence, 3u);
    EXPECT_TRUE(lines(dir.path() / "events.log").empty());
  }
  {
    Backend a(options(dir));
    compacted = a.export_dump();
    next_compacted = a.create_node(NodeKind::Resource, "next").id;
    EXPECT_EQ(a.health().sequence, 4u) << "sequence continues after the snapshot";
  }
  {
    Backend b(options(copy));
    plain = b.export_dump();
    next_plain = b.create_node(NodeKind::Resource, "next").id;
  }
  EXPECT_EQ(compacted, plain);
  EXPECT_EQ(next_compacted, next_plain);
}

TEST(BackendTest, CompactTwiceIsNoOpOnState) {
  TempDir dir;
  Backend backend(options(dir));
  backend.ingest_paper(frankenstein_submission());
  const auto first = backend.compact();
  const auto dump = backend.export_dump();
  const auto second = backend.compact();
  EXPECT_EQ(first.sequence, second.sequence);
  EXPECT_EQ(first.records, second.records);
  EXPECT_EQ(backend.export_dump(), dump);
}

TEST(BackendTest, CompactEmptyStore) {
  TempDir dir;
  Backend backend(options(dir, false));
  EXPECT_EQ(backend.compact().records, 0u);
}

TEST(BackendTest, FailedCompactKeepsOldSnapshot) {
  TempDir dir;
  std::string state;
  {
    Backend backend(options(dir));
    backend.ingest_paper(frankenstein_submission());
    state = backend.export_dump();
    backend.storage().set_fault_hook([](FaultPoint p) {
      if (p == FaultPoint::BeforeSnapshotCommit) throw Error(ErrorCode::StorageFailure, "simulated");
    });
    EXPECT_EQ(error_of([&] { backend.compact(); }), ErrorCode::StorageFailure);
    EXPECT_EQ(lines(dir.path() / "events.log").size(), 1u);
  }
  Backend reopened(options(dir));
  EXPECT_EQ(reopened.export_dump(), state);
}

TEST(BackendTest, TornTailIsDiscarded) {
  TempDir dir;
  {
    Backend backend(options(dir));
    backend.create_node(NodeKind::Resource, "kept");
  }
  {
    std::ofstream log(dir.path() / "events.log", std::ios::app);
    log << R"({"seq":2,"op":"create_node","ts":"2018-04-23T09:00:00Z","mutations":[{"type":"no)";
  }
  {
    Backend backend(options(dir));
    EXPECT_EQ(backend.health().sequence, 1u);
    backend.create_node(NodeKind::Resource, "later");
  }
  Backend reopened(options(dir));
  EXPECT_EQ(reopened.health().sequence, 2u);
  EXPECT_EQ(reopened.find_nodes("later", NodeKind::Resource, 1).size(), 1u);
}

TEST(BackendTest, CorruptLogRefusesToStart) {
  TempDir dir;
  {
    Backend backend(options(dir));
    backend.create_node(NodeKind::Resource, "a");
    backend.create_node(NodeKind::Resource, "b");
  }
  auto log = lines(dir.path() / "events.log");
  ASSERT_EQ(log.size(), 2u);
  {
    std::ofstream out(dir.path() / "events.log", std::ios::trunc);
    out << log[0] << "\n" << "{garbage}\n" << log[1] << "\n";
  }
  try {
    Backend backend(options(dir));
    FAIL() << "expected CorruptLog";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptLog);
    EXPECT_NE(std::string(e.what()).find("event 2"), std::string::npos) << e.what();
  }
  {
    std::ofstream out(dir.path() / "events.log", std::ios::trunc);
    out << log[1] << "\n";  // sequence gap: starts at 2
  }
  EXPECT_EQ(error_of([&] { Backend backend(options(dir)); }), ErrorCode::CorruptLog);
}

// Replaying any prefix of the log gives exactly the state after that many
// acknowledged writes, and that state is internally consistent.
TEST(BackendTest, EveryLogPrefixReplaysToAConsistentState) {
  std::vector<std::string> states;
  TempDir run;
  {
    Backend backend(options(run));
    states.push_back(backend.export_dump());
    std::mt19937 rng(17);
    std::vector<graph::NodeId> nodes;
    std::uniform_int_distribution<int> op(0, 9);
    for (int step = 0; step < 120; ++step) {
      const int o = op(rng);
      try {
        if (o < 3 || nodes.size() < 4) {
          nodes.push_back(backend.create_node(static_cast<NodeKind>(o % 3), "n" + std::to_string(step)).id);
        } else if (o < 7) {
          std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
          backend.add_statement(nodes[pick(rng)], nodes[pick(rng)], nodes[pick(rng)], "fuzz");
        } else if (o < 8) {
          auto all = backend.query_statements({});
          if (all.empty()) continue;
          backend.annotate_statement(all[rng() % all.size()].id, "k", std::to_string(step));
        } else if (o < 9) {
          auto all = backend.query_statements({});
          if (all.empty()) continue;
          backend.delete_statement(all[rng() % all.size()].id);
        } else {
          auto s = frankenstein_submission();
          s.metadata.doi.reset();
          s.metadata.title = "Paper " + std::to_string(step);
          backend.ingest_paper(s);
        }
      } catch (const Error&) {
        continue;  // rejected writes are not logged
      }
      states.push_back(backend.export_dump());
    }
  }
  const auto log = lines(run.path() / "events.log");
  ASSERT_EQ(log.size() + 1, states.size());
  for (std::size_t n = 0; n <= log.size(); n += 1 + n / 10) {
    TempDir prefix;
    for (const auto& entry : fs::directory_iterator(run.path())) {
      if (entry.path().filename() != "LOCK") fs::copy(entry.path(), prefix.path() / entry.path().filename());
    }
    {
      std::ofstream out(prefix.path() / "events.log", std::ios::trunc);
      for (std::size_t i = 0; i < n; ++i) out << log[i] << "\n";
    }
    Backend replayed(options(prefix));
    const auto dump = replayed.export_dump();
    ASSERT_EQ(dump, states[n]) << "prefix " << n;
    const auto store = load(dump);
    ASSERT_EQ(integrity_violation(store), std::nullopt) << "prefix " << n;
  }
}

TEST(BackendTest, ImportIntoFreshDirectoryAndExportAgain) {
  TempDir source, target;
  std::string dump;
  {
    Backend backend(options(source));
    backend.ingest_paper(frankenstein_submission());
    dump = backend.export_dump();
  }
  {
    Backend raw(options(target, false));
    std::istringstream in(dump);
    EXPECT_EQ(raw.import_dump(in, graph::ImportMode::EmptyOnly), 72u);
    raw.compact();
  }
  Backend reopened(options(target, false));
  EXPECT_EQ(reopened.export_dump(), dump);
  EXPECT_EQ(reopened.list_papers(std::nullopt, false).size(), 1u) << "vocabulary found after import";
}

TEST(BackendTest, SimilarRebuildsAfterWrites) {
  TempDir dir;
  Backend backend(options(dir));
  const auto first = backend.ingest_paper(frankenstein_submission());
  const auto c1 = first.contributions.at(0).id;
  EXPECT_TRUE(backend.similar(c1, 5).empty());
  const auto java = first.contributions[0].properties[0].values[1];
  ASSERT_EQ(java.label, "Java");
  auto second = frankenstein_submission(java.id);
  second.metadata.doi.reset();
  const auto view = backend.ingest_paper(second);
  const auto m = backend.similar(c1, 5);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].contribution, view.contributions.at(0).id);
  EXPECT_EQ(error_of([&] { backend.similar(first.id, 5); }), ErrorCode::NotAContribution);
  EXPECT_EQ(error_of([&] { backend.similar(graph::NodeId{NodeKind::Resource, 9999}, 5); }), ErrorCode::UnknownNode);
}

// Readers hold the shared lock, so a paper is visible with all of its
// contribution statements or not at all.
TEST(BackendTest, ReadersNeverSeePartialPapers) {
  TempDir dir;
  Backend backend(options(dir));
  std::atomic<bool> done{false};
  std::atomic<int> violations{0}, reads{0};
  std::vector<std::thread> readers;
  for (int r = 0; r < 8; ++r) {
    readers.emplace_back([&] {
      while (!done) {
        backend.read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
          for (const auto& [id, node] : store.nodes()) {
            if (!node.classes.count("Paper")) continue;
            const auto view = contrib::get_paper(store, vocab, id);
            if (view.contributions.size() != 1 || view.contributions[0].properties.size() != 4 ||
                !view.contributions[0].problem) {
              ++violations;
            }
          }
          return 0;
        });
        ++reads;
      }
    });
  }
  for (int i = 0; i < 40; ++i) {
    auto s = frankenstein_submission();
    s.metadata.doi.reset();
    s.metadata.title = "Paper " + std::to_string(i);
    backend.ingest_paper(s);
  }
  done = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(violations, 0);
  EXPECT_GT(reads, 0);
}

}  // namespace
}  // namespace orkg::service
