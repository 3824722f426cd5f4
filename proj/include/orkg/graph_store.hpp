// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// In-memory annotated-statement graph.
//
// Nodes are resources, predicates or literals. A statement is a directed
// (subject, predicate, object) edge that carries its own annotation map and
// immutable provenance (who created it, and when). Statements are indexed by
// subject, predicate and object; a triple index enforces uniqueness.
//
// The store itself is not synchronized. SharedGraph (shared_graph.hpp) adds
// the single-writer / multi-reader contract on top.

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace orkg::graph {

enum class NodeKind : std::uint8_t { Resource = 0, Predicate = 1, Literal = 2 };

std::string_view kind_name(NodeKind kind);  // "resource", "predicate", "literal"
std::optional<NodeKind> parse_kind(std::string_view name);

struct NodeId {
  NodeKind kind = NodeKind::Resource;
  std::uint64_t number = 0;

  std::string str() const;
  static std::optional<NodeId> parse(std::string_view text);

  auto operator<=>(const NodeId&) const = default;
};

struct StatementId {
  std::uint64_t number = 0;

  std::string str() const;
  static std::optional<StatementId> parse(std::string_view text);

  auto operator<=>(const StatementId&) const = default;
};

struct NodeIdHash {
  std::size_t operator()(const NodeId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.number * 3 + static_cast<std::uint64_t>(id.kind));
  }
};

using Timestamp = std::chrono::sys_seconds;

// RFC 3339, UTC, second precision: "YYYY-MM-DDThh:mm:ssZ".
std::string format_timestamp(Timestamp ts);
std::optional<Timestamp> parse_timestamp(std::string_view text);

struct Node {
  NodeId id;
  std::string label;
  std::set<std::string> classes;

  NodeKind kind() const { return id.kind; }
  bool operator==(const Node&) const = default;
};

struct Provenance {
  Timestamp created_at{};
  std::string created_by;

  bool operator==(const Provenance&) const = default;
};

inline constexpr std::string_view kCreatedAtKey = "created_at";
inline constexpr std::string_view kCreatedByKey = "created_by";

bool is_reserved_annotation(std::string_view key);

struct Statement {
  StatementId id;
  NodeId subject;
  NodeId predicate;
  NodeId object;
  // User annotations only; the reserved provenance keys live in `provenance`.
  std::map<std::string, std::string> annotations;
  Provenance provenance;

  // Annotation map with the reserved provenance keys mirrored in.
  std::map<std::string, std::string> annotations_with_provenance() const;

  bool operator==(const Statement&) const = default;
};

struct StatementFilter {
  std::optional<NodeId> subject;
  std::optional<NodeId> predicate;
  std::optional<NodeId> object;

  bool empty() const { return !subject && !predicate && !object; }
  bool matches(const Statement& s) const;
};

struct IdCounters {
  std::uint64_t resource = 0;
  std::uint64_t predicate = 0;
  std::uint64_t literal = 0;
  std::uint64_t statement = 0;

  bool operator==(const IdCounters&) const = default;
};

// Journal entries. Each mutating call records what it did so that a batch
// can be undone (rollback) or shipped to an event log and replayed (apply).
struct NodeCreated {
  Node node;
};
struct StatementAdded {
  Statement statement;
};
struct StatementDeleted {
  Statement statement;
};
struct StatementAnnotated {
  StatementId id;
  std::string key;
  std::string value;
  std::optional<std::string> previous;
};
using Mutation = std::variant<NodeCreated, StatementAdded, StatementDeleted, StatementAnnotated>;

class GraphStore {
 public:
  using Clock = std::function<Timestamp()>;

  static Timestamp system_now();

  explicit GraphStore(Clock clock = &GraphStore::system_now);

  GraphStore(const GraphStore&) = default;
  GraphStore& operator=(const GraphStore&) = default;
  GraphStore(GraphStore&&) noexcept = default;
  GraphStore& operator=(GraphStore&&) noexcept = default;

  NodeId create_node(NodeKind kind, std::string_view label, std::set<std::string> classes = {});

  const Node* find_node(NodeId id) const;
  const Node& node(NodeId id) const;  // throws UnknownNode

  // Auto-completion lookup: case-insensitive substring match, prefix matches
  // first, then shorter labels, then id order. Empty query lists the most
  // recently created nodes.
  std::vector<Node> find_nodes(std::string_view query, std::optional<NodeKind> kind,
                               std::size_t limit) const;

  StatementId add_statement(NodeId subject, NodeId predicate, NodeId object,
                            std::string_view created_by);

  const Statement& annotate_statement(StatementId id, std::string_view key, std::string_view value);

  const Statement* find_statement(StatementId id) const;
  const Statement& statement(StatementId id) const;  // throws UnknownStatement

  std::vector<Statement> query_statements(const StatementFilter& filter) const;

  // Statement ids matching the filter, ascending. Cheaper than
  // query_statements when the caller only needs to walk.
  std::vector<StatementId> match(const StatementFilter& filter) const;

  void delete_statement(StatementId id);

  // Breadth-first closure of outgoing statements from `root`, following
  // resource objects only, at most `max_depth` edges deep. Each node is
  // expanded once. Result ordered by statement id.
  std::vector<Statement> subtree(NodeId root, std::size_t max_depth) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t statement_count() const { return statements_.size(); }
  bool empty() const { return nodes_.empty() && statements_.empty(); }

  const std::map<NodeId, Node>& nodes() const { return nodes_; }
  const std::map<StatementId, Statement>& statements() const { return statements_; }

  const std::vector<StatementId>& outgoing(NodeId subject) const;
  const std::vector<StatementId>& incoming(NodeId object) const;

  IdCounters counters() const { return counters_; }
  // Raises each counter to at least the given value.
  void advance_counters(const IdCounters& floor);

  // Materialize records with their original ids (dump import, log replay).
  void restore_node(const Node& node);
  void restore_statement(const Statement& statement);

  void begin_journal();
  std::vector<Mutation> end_journal();
  bool journaling() const { return journal_.has_value(); }

  // Undo a journal produced by this store, newest entry first.
  void rollback(const std::vector<Mutation>& journal);
  // Re-apply a journal entry recorded elsewhere (log replay).
  void apply(const Mutation& mutation);

  // Id-preserving equality over nodes and statements (annotations and
  // provenance included). Counters and creation order are not compared.
  bool operator==(const GraphStore& other) const;

 private:
  struct Triple {
    NodeId subject, predicate, object;
    auto operator<=>(const Triple&) const = default;
  };

  void check_statement_nodes(NodeId subject, NodeId predicate, NodeId object) const;
  void insert_statement(Statement statement);
  Statement erase_statement(StatementId id);
  void erase_node(NodeId id);
  void record(Mutation m);
  std::uint64_t& counter_for(NodeKind kind);

  Clock clock_;
  std::map<NodeId, Node> nodes_;
  std::unordered_map<NodeId, std::string, NodeIdHash> folded_labels_;
  std::vector<NodeId> creation_order_;
  std::map<StatementId, Statement> statements_;
  std::map<Triple, StatementId> triples_;
  std::unordered_map<NodeId, std::vector<StatementId>, NodeIdHash> by_subject_;
  std::unordered_map<NodeId, std::vector<StatementId>, NodeIdHash> by_predicate_;
  std::unordered_map<NodeId, std::vector<StatementId>, NodeIdHash> by_object_;
  IdCounters counters_;
  std::optional<std::vector<Mutation>> journal_;
};

}  // namespace orkg::graph
