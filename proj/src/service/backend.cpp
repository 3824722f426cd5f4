// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/service/backend.hpp"

#include <sstream>

#include "orkg/error.hpp"

namespace orkg::service {

namespace {

similarity::Config similarity_config(std::size_t depth) {
  similarity::Config c;
  c.depth = depth;
  return c;
}

}  // namespace

template <typename F>
decltype(auto) Backend::write(const char* op, F&& f) {
  return graph_.write([&](GraphStore& store) {
    store.begin_journal();
    try {
      auto result = f(store);
      auto journal = store.end_journal();
      if (!journal.empty()) {
        try {
          storage_.append(op, journal);
        } catch (...) {
          store.rollback(journal);
          throw;
        }
        similarity_.mark_stale();
      }
      return result;
    } catch (...) {
      if (store.journaling()) store.rollback(store.end_journal());
      throw;
    }
  });
}

Backend::Backend(BackendOptions options)
    : options_(std::move(options)),
      taxonomy_(contrib::Taxonomy::shipped()),
      storage_(options_.data_dir),
      graph_(GraphStore(options_.clock)),
      similarity_(similarity_config(options_.similarity_depth)) {
  graph_.write([&](GraphStore& store) { storage_.recover(store); });
  if (!options_.seed_vocabulary) {
    vocab_ = graph_.read([&](const GraphStore& store) { return contrib::find_vocabulary(store, taxonomy_); });
    return;
  }
  if (storage_.fresh()) {
    // The seed goes straight into a sequence-0 snapshot, so the first
    // client write is event 1.
    graph_.write([&](GraphStore& store) {
      vocab_ = contrib::ensure_vocabulary(store, taxonomy_);
      storage_.compact(store);
    });
  } else {
    vocab_ = write("seed_vocabulary", [&](GraphStore& store) { return contrib::ensure_vocabulary(store, taxonomy_); });
  }
}

const contrib::Vocabulary& Backend::vocabulary(const GraphStore&) const {
  if (!vocab_) throw Error(ErrorCode::BadRequest, "store has no reserved vocabulary");
  return *vocab_;
}

graph::Node Backend::create_node(NodeKind kind, const std::string& label, std::set<std::string> classes) {
  return write("create_node", [&](GraphStore& store) {
    return store.node(store.create_node(kind, label, std::move(classes)));
  });
}

graph::Statement Backend::add_statement(NodeId subject, NodeId predicate, NodeId object, const std::string& curator) {
  return write("add_statement", [&](GraphStore& store) {
    return store.statement(store.add_statement(subject, predicate, object, curator));
  });
}

void Backend::delete_statement(StatementId id) {
  write("delete_statement", [&](GraphStore& store) {
    store.delete_statement(id);
    return true;
  });
}

graph::Statement Backend::annotate_statement(StatementId id, const std::string& key, const std::string& value) {
  return write("annotate_statement", [&](GraphStore& store) { return store.annotate_statement(id, key, value); });
}

contrib::PaperView Backend::ingest_paper(const contrib::PaperSubmission& submission) {
  return write("ingest_paper", [&](GraphStore& store) {
    const auto& vocab = vocabulary(store);
    return contrib::get_paper(store, vocab, contrib::ingest_paper(store, vocab, taxonomy_, submission));
  });
}

std::size_t Backend::import_dump(std::istream& in, graph::ImportMode mode) {
  const auto count = write("import_dump", [&](GraphStore& store) { return graph::import_dump(store, in, mode); });
  if (!vocab_) vocab_ = graph_.read([&](const GraphStore& store) { return contrib::find_vocabulary(store, taxonomy_); });
  return count;
}

SnapshotStats Backend::compact() {
  return graph_.write([&](GraphStore& store) { return storage_.compact(store); });
}

Health Backend::health() const {
  return graph_.read([&](const GraphStore& store) {
    return Health{store.statement_count(), store.node_count(), storage_.last_sequence()};
  });
}

std::vector<graph::Node> Backend::find_nodes(const std::string& query, std::optional<NodeKind> kind,
                                             std::size_t limit) const {
  return graph_.read([&](const GraphStore& store) { return store.find_nodes(query, kind, limit); });
}

std::vector<graph::Statement> Backend::query_statements(const graph::StatementFilter& filter) const {
  return graph_.read([&](const GraphStore& store) { return store.query_statements(filter); });
}

contrib::PaperView Backend::get_paper(NodeId paper) const {
  return read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
    return contrib::get_paper(store, vocab, paper);
  });
}

std::vector<PaperSummary> Backend::list_papers(const std::optional<std::string>& field,
                                               bool include_descendants) const {
  return read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
    std::vector<NodeId> ids;
    if (field) {
      ids = contrib::list_papers_by_field(store, vocab, taxonomy_, *field, include_descendants);
    } else {
      const std::string cls(contrib::vocab::kPaperClass);
      for (const auto& [id, node] : store.nodes()) {
        if (id.kind == NodeKind::Resource && node.classes.count(cls)) ids.push_back(id);
      }
    }
    std::vector<PaperSummary> out;
    for (NodeId id : ids) out.push_back({id, contrib::title_of(store, vocab, id).value_or(store.node(id).label)});
    return out;
  });
}

std::vector<similarity::Match> Backend::similar(NodeId contribution, std::size_t k) const {
  return read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
    store.node(contribution);  // UnknownNode before NotAContribution
    {
      std::lock_guard lock(rebuild_mutex_);
      if (similarity_.stale()) similarity_.rebuild(store, vocab);
    }
    return similarity_.top_k_similar(contribution, k);
  });
}

comparison::ComparisonTable Backend::compare(const std::vector<NodeId>& contributions,
                                             const comparison::ComparisonOptions& options) const {
  return read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
    return comparison::compare(store, vocab, contributions, options);
  });
}

contrib::BibliographicMetadata Backend::fetch_metadata(const std::string& doi) const {
  return metadata::fetch_metadata(metadata::normalize_doi(doi), options_.metadata);
}

std::string Backend::export_dump() const {
  return graph_.read([&](const GraphStore& store) { return graph::export_dump(store); });
}

void Backend::export_dump(std::ostream& out) const {
  graph_.read([&](const GraphStore& store) { return graph::export_dump(store, out); });
}

std::optional<NodeId> Backend::paper_of(NodeId contribution) const {
  return read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
    return contrib::paper_of(store, vocab, contribution);
  });
}

}  // namespace orkg::service
