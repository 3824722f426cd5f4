// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// The service core shared by the HTTP front end and the embedded CLI:
// one in-memory store behind a reader/writer lock, a durable event log,
// and a lazily rebuilt similarity index.
//
// Every write runs under the exclusive lock inside an undo journal. The
// journal is appended to the log (and flushed) before the call returns; if
// the append fails the in-memory change is rolled back. Readers hold the
// shared lock, so they never see a batch half applied.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orkg/comparison.hpp"
#include "orkg/contribution.hpp"
#include "orkg/dump.hpp"
#include "orkg/graph_store.hpp"
#include "orkg/metadata.hpp"
#include "orkg/service/storage.hpp"
#include "orkg/shared_graph.hpp"
#include "orkg/similarity.hpp"

namespace orkg::service {

using graph::NodeId;
using graph::NodeKind;
using graph::StatementId;

struct BackendOptions {
  std::filesystem::path data_dir;
  metadata::MetadataSource metadata;
  std::size_t similarity_depth = 2;
  // Create the reserved vocabulary and research fields on open. Off for
  // raw dump import/export.
  bool seed_vocabulary = true;
  GraphStore::Clock clock = &GraphStore::system_now;
};

struct Health {
  std::size_t statements = 0;
  std::size_t nodes = 0;
  std::uint64_t sequence = 0;
};

struct PaperSummary {
  NodeId id;
  std::string title;
};

class Backend {
 public:
  // Locks the directory and recovers state. Throws DirectoryLocked,
  // CorruptLog, StorageFailure.
  explicit Backend(BackendOptions options);

  graph::Node create_node(NodeKind kind, const std::string& label, std::set<std::string> classes = {});
  graph::Statement add_statement(NodeId subject, NodeId predicate, NodeId object, const std::string& curator);
  void delete_statement(StatementId id);
  graph::Statement annotate_statement(StatementId id, const std::string& key, const std::string& value);
  contrib::PaperView ingest_paper(const contrib::PaperSubmission& submission);
  std::size_t import_dump(std::istream& in, graph::ImportMode mode);
  SnapshotStats compact();

  Health health() const;
  std::vector<graph::Node> find_nodes(const std::string& query, std::optional<NodeKind> kind, std::size_t limit) const;
  std::vector<graph::Statement> query_statements(const graph::StatementFilter& filter) const;
  contrib::PaperView get_paper(NodeId paper) const;
  // All papers without a field; throws UnknownField for unknown ids.
  std::vector<PaperSummary> list_papers(const std::optional<std::string>& field, bool include_descendants) const;
  std::vector<similarity::Match> similar(NodeId contribution, std::size_t k) const;
  comparison::ComparisonTable compare(const std::vector<NodeId>& contributions,
                                      const comparison::ComparisonOptions& options) const;
  contrib::BibliographicMetadata fetch_metadata(const std::string& doi) const;
  std::string export_dump() const;
  void export_dump(std::ostream& out) const;

  // The paper owning a contribution, if any.
  std::optional<NodeId> paper_of(NodeId contribution) const;

  const contrib::Taxonomy& taxonomy() const { return taxonomy_; }
  Storage& storage() { return storage_; }

  // Consistent read access for callers that need several lookups at once.
  template <typename F>
  decltype(auto) read(F&& f) const {
    return graph_.read([&](const GraphStore& store) { return f(store, vocabulary(store)); });
  }

 private:
  template <typename F>
  decltype(auto) write(const char* op, F&& f);
  const contrib::Vocabulary& vocabulary(const GraphStore& store) const;

  BackendOptions options_;
  contrib::Taxonomy taxonomy_;
  Storage storage_;
  graph::SharedGraph graph_;
  std::optional<contrib::Vocabulary> vocab_;
  mutable similarity::SimilarityEngine similarity_;
  mutable std::mutex rebuild_mutex_;
};

}  // namespace orkg::service
