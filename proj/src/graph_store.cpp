// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/graph_store.hpp"

#include <algorithm>
#include <charconv>
#include <ctime>
#include <deque>
#include <unordered_set>

#include "orkg/error.hpp"
#include "orkg/text.hpp"

namespace orkg::graph {

namespace {

const std::vector<StatementId> kNoStatements;

char kind_prefix(NodeKind kind) {
  switch (kind) {
    case NodeKind::Resource: return 'R';
    case NodeKind::Predicate: return 'P';
    case NodeKind::Literal: return 'L';
  }
  return '?';
}

std::optional<std::uint64_t> parse_number(std::string_view digits) {
  if (digits.empty() || digits.size() > 19) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

void sorted_insert(std::vector<StatementId>& ids, StatementId id) {
  ids.insert(std::lower_bound(ids.begin(), ids.end(), id), id);
}

void sorted_erase(std::unordered_map<NodeId, std::vector<StatementId>, NodeIdHash>& index,
                  NodeId key, StatementId id) {
  auto it = index.find(key);
  if (it == index.end()) return;
  auto& ids = it->second;
  auto pos = std::lower_bound(ids.begin(), ids.end(), id);
  if (pos != ids.end() && *pos == id) ids.erase(pos);
  if (ids.empty()) index.erase(it);
}

void check_text(std::string_view value, std::string_view what) {
  if (!text::is_valid_utf8(value)) {
    throw Error(ErrorCode::InvalidLabel, std::string(what) + " is not valid UTF-8");
  }
}

}  // namespace

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Resource: return "resource";
    case NodeKind::Predicate: return "predicate";
    case NodeKind::Literal: return "literal";
  }
  return "unknown";
}

std::optional<NodeKind> parse_kind(std::string_view name) {
  if (name == "resource") return NodeKind::Resource;
  if (name == "predicate") return NodeKind::Predicate;
  if (name == "literal") return NodeKind::Literal;
  return std::nullopt;
}

std::string NodeId::str() const { return kind_prefix(kind) + std::to_string(number); }

std::optional<NodeId> NodeId::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  NodeKind kind;
  switch (text.front()) {
    case 'R': kind = NodeKind::Resource; break;
    case 'P': kind = NodeKind::Predicate; break;
    case 'L': kind = NodeKind::Literal; break;
    default: return std::nullopt;
  }
  auto number = parse_number(text.substr(1));
  if (!number) return std::nullopt;
  return NodeId{kind, *number};
}

std::string StatementId::str() const { return "S" + std::to_string(number); }

std::optional<StatementId> StatementId::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != 'S') return std::nullopt;
  auto number = parse_number(text.substr(1));
  if (!number) return std::nullopt;
  return StatementId{*number};
}

std::string format_timestamp(Timestamp ts) {
  const std::time_t t = ts.time_since_epoch().count();
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  // Strictly "YYYY-MM-DDThh:mm:ssZ".
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  auto field = [&](std::size_t pos, std::size_t len) { return parse_number(text.substr(pos, len)); };
  auto year = field(0, 4), month = field(5, 2), day = field(8, 2);
  auto hour = field(11, 2), minute = field(14, 2), second = field(17, 2);
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year(static_cast<int>(*year)),
                           std::chrono::month(static_cast<unsigned>(*month)),
                           std::chrono::day(static_cast<unsigned>(*day))};
  if (!ymd.ok() || *hour > 23 || *minute > 59 || *second > 59) return std::nullopt;
  return sys_days(ymd) + hours(*hour) + minutes(*minute) + seconds(*second);
}

bool is_reserved_annotation(std::string_view key) {
  return key == kCreatedAtKey || key == kCreatedByKey;
}

std::map<std::string, std::string> Statement::annotations_with_provenance() const {
  auto out = annotations;
  out[std::string(kCreatedAtKey)] = format_timestamp(provenance.created_at);
  out[std::string(kCreatedByKey)] = provenance.created_by;
  return out;
}

bool StatementFilter::matches(const Statement& s) const {
  return (!subject || *subject == s.subject) && (!predicate || *predicate == s.predicate) &&
         (!object || *object == s.object);
}

Timestamp GraphStore::system_now() {
  return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

GraphStore::GraphStore(Clock clock) : clock_(std::move(clock)) {}

std::uint64_t& GraphStore::counter_for(NodeKind kind) {
  switch (kind) {
    case NodeKind::Resource: return counters_.resource;
    case NodeKind::Predicate: return counters_.predicate;
    case NodeKind::Literal: return counters_.literal;
  }
  return counters_.resource;
}

void GraphStore::record(Mutation m) {
  if (journal_) journal_->push_back(std::move(m));
}

NodeId GraphStore::create_node(NodeKind kind, std::string_view label, std::set<std::string> classes) {
  const auto trimmed = text::trim(label);
  if (trimmed.empty()) throw Error(ErrorCode::EmptyLabel, "node label is empty");
  check_text(trimmed, "label");
  if (kind != NodeKind::Resource && !classes.empty()) {
    throw Error(ErrorCode::ClassesOnNonResource, "only resources carry classes");
  }
  for (const auto& c : classes) {
    if (text::trim(c).empty()) throw Error(ErrorCode::EmptyLabel, "class tag is empty");
    check_text(c, "class tag");
  }
  auto& counter = counter_for(kind);
  Node node{NodeId{kind, counter + 1}, std::string(trimmed), std::move(classes)};
  ++counter;
  folded_labels_.emplace(node.id, text::fold(node.label));
  creation_order_.push_back(node.id);
  const NodeId id = node.id;
  record(NodeCreated{node});
  nodes_.emplace(id, std::move(node));
  return id;
}

const Node* GraphStore::find_node(NodeId id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Node& GraphStore::node(NodeId id) const {
  if (const Node* n = find_node(id)) return *n;
  throw Error(ErrorCode::UnknownNode, "unknown node " + id.str());
}

std::vector<Node> GraphStore::find_nodes(std::string_view query, std::optional<NodeKind> kind,
                                         std::size_t limit) const {
  if (limit == 0) throw Error(ErrorCode::BadRequest, "limit must be at least 1");
  std::vector<Node> out;
  const auto needle = text::fold(text::trim(query));

  if (needle.empty()) {
    for (auto it = creation_order_.rbegin(); it != creation_order_.rend() && out.size() < limit;
         ++it) {
      if (kind && it->kind != *kind) continue;
      out.push_back(nodes_.at(*it));
    }
    return out;
  }

  struct Hit {
    bool prefix;
    std::size_t length;
    NodeId id;
    auto operator<=>(const Hit&) const = default;
  };
  std::vector<Hit> hits;
  for (const auto& [id, node] : nodes_) {
    if (kind && id.kind != *kind) continue;
    const auto& folded = folded_labels_.at(id);
    const auto pos = folded.find(needle);
    if (pos == std::string::npos) continue;
    // prefix matches sort first, hence the negation
    hits.push_back(Hit{pos != 0, node.label.size(), id});
  }
  const auto n = std::min(limit, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(nodes_.at(hits[i].id));
  return out;
}

void GraphStore::check_statement_nodes(NodeId subject, NodeId predicate, NodeId object) const {
  for (NodeId id : {subject, predicate, object}) {
    if (!find_node(id)) throw Error(ErrorCode::UnknownNode, "unknown node " + id.str());
  }
  if (subject.kind != NodeKind::Resource) {
    throw Error(ErrorCode::KindViolation, "subject " + subject.str() + " is not a resource");
  }
  if (predicate.kind != NodeKind::Predicate) {
    throw Error(ErrorCode::KindViolation, "predicate " + predicate.str() + " is not a predicate");
  }
  if (object.kind == NodeKind::Predicate) {
    throw Error(ErrorCode::KindViolation, "object " + object.str() + " is a predicate");
  }
  if (triples_.count(Triple{subject, predicate, object})) {
    throw Error(ErrorCode::DuplicateTriple, "statement (" + subject.str() + ", " + predicate.str() +
                                                ", " + object.str() + ") already exists");
  }
}

void GraphStore::insert_statement(Statement statement) {
  const StatementId id = statement.id;
  triples_.emplace(Triple{statement.subject, statement.predicate, statement.object}, id);
  sorted_insert(by_subject_[statement.subject], id);
  sorted_insert(by_predicate_[statement.predicate], id);
  sorted_insert(by_object_[statement.object], id);
  statements_.emplace(id, std::move(statement));
}

Statement GraphStore::erase_statement(StatementId id) {
  auto it = statements_.find(id);
  Statement s = std::move(it->second);
  statements_.erase(it);
  triples_.erase(Triple{s.subject, s.predicate, s.object});
  sorted_erase(by_subject_, s.subject, id);
  sorted_erase(by_predicate_, s.predicate, id);
  sorted_erase(by_object_, s.object, id);
  return s;
}

void GraphStore::erase_node(NodeId id) {
  nodes_.erase(id);
  folded_labels_.erase(id);
  auto pos = std::find(creation_order_.rbegin(), creation_order_.rend(), id);
  if (pos != creation_order_.rend()) creation_order_.erase(std::next(pos).base());
}

StatementId GraphStore::add_statement(NodeId subject, NodeId predicate, NodeId object,
                                      std::string_view created_by) {
  if (text::trim(created_by).empty()) {
    throw Error(ErrorCode::BadRequest, "created_by must be non-empty");
  }
  check_text(created_by, "created_by");
  check_statement_nodes(subject, predicate, object);
  Statement s;
  s.id = StatementId{counters_.statement + 1};
  s.subject = subject;
  s.predicate = predicate;
  s.object = object;
  s.provenance = Provenance{clock_(), std::string(created_by)};
  ++counters_.statement;
  record(StatementAdded{s});
  insert_statement(std::move(s));
  return StatementId{counters_.statement};
}

const Statement& GraphStore::annotate_statement(StatementId id, std::string_view key,
                                                std::string_view value) {
  auto it = statements_.find(id);
  if (it == statements_.end()) {
    throw Error(ErrorCode::UnknownStatement, "unknown statement " + id.str());
  }
  if (is_reserved_annotation(key)) {
    throw Error(ErrorCode::ReservedKey, "annotation key '" + std::string(key) + "' is reserved");
  }
  if (key.empty()) throw Error(ErrorCode::BadRequest, "annotation key is empty");
  check_text(key, "annotation key");
  check_text(value, "annotation value");
  auto& annotations = it->second.annotations;
  std::optional<std::string> previous;
  if (auto a = annotations.find(std::string(key)); a != annotations.end()) previous = a->second;
  annotations[std::string(key)] = std::string(value);
  record(StatementAnnotated{id, std::string(key), std::string(value), std::move(previous)});
  return it->second;
}

const Statement* GraphStore::find_statement(StatementId id) const {
  auto it = statements_.find(id);
  return it == statements_.end() ? nullptr : &it->second;
}

const Statement& GraphStore::statement(StatementId id) const {
  if (const Statement* s = find_statement(id)) return *s;
  throw Error(ErrorCode::UnknownStatement, "unknown statement " + id.str());
}

std::vector<StatementId> GraphStore::match(const StatementFilter& filter) const {
  std::vector<StatementId> out;
  if (filter.empty()) {
    out.reserve(statements_.size());
    for (const auto& [id, s] : statements_) out.push_back(id);
    return out;
  }
  // Walk the smallest index among the bound positions.
  const std::vector<StatementId>* best = nullptr;
  auto consider = [&](const std::optional<NodeId>& key,
                      const std::unordered_map<NodeId, std::vector<StatementId>, NodeIdHash>& index) {
    if (!key) return;
    auto it = index.find(*key);
    const auto* ids = it == index.end() ? &kNoStatements : &it->second;
    if (!best || ids->size() < best->size()) best = ids;
  };
  consider(filter.subject, by_subject_);
  consider(filter.predicate, by_predicate_);
  consider(filter.object, by_object_);
  for (StatementId id : *best) {
    if (filter.matches(statements_.at(id))) out.push_back(id);
  }
  return out;
}

std::vector<Statement> GraphStore::query_statements(const StatementFilter& filter) const {
  std::vector<Statement> out;
  for (StatementId id : match(filter)) out.push_back(statements_.at(id));
  return out;
}

void GraphStore::delete_statement(StatementId id) {
  if (!statements_.count(id)) {
    throw Error(ErrorCode::UnknownStatement, "unknown statement " + id.str());
  }
  Statement removed = erase_statement(id);
  record(StatementDeleted{std::move(removed)});
}

const std::vector<StatementId>& GraphStore::outgoing(NodeId subject) const {
  auto it = by_subject_.find(subject);
  return it == by_subject_.end() ? kNoStatements : it->second;
}

const std::vector<StatementId>& GraphStore::incoming(NodeId object) const {
  auto it = by_object_.find(object);
  return it == by_object_.end() ? kNoStatements : it->second;
}

std::vector<Statement> GraphStore::subtree(NodeId root, std::size_t max_depth) const {
  if (!find_node(root)) throw Error(ErrorCode::UnknownNode, "unknown node " + root.str());
  if (root.kind != NodeKind::Resource) {
    throw Error(ErrorCode::NotAResource, root.str() + " is not a resource");
  }
  if (max_depth == 0) throw Error(ErrorCode::BadRequest, "max_depth must be at least 1");

  std::vector<StatementId> collected;
  std::unordered_set<NodeId, NodeIdHash> visited{root};
  std::deque<std::pair<NodeId, std::size_t>> frontier{{root, 0}};
  while (!frontier.empty()) {
    auto [node, depth] = frontier.front();
    frontier.pop_front();
    for (StatementId sid : outgoing(node)) {
      collected.push_back(sid);
      const NodeId object = statements_.at(sid).object;
      if (object.kind == NodeKind::Resource && depth + 1 < max_depth &&
          visited.insert(object).second) {
        frontier.emplace_back(object, depth + 1);
      }
    }
  }
  std::sort(collected.begin(), collected.end());
  std::vector<Statement> out;
  out.reserve(collected.size());
  for (StatementId sid : collected) out.push_back(statements_.at(sid));
  return out;
}

void GraphStore::advance_counters(const IdCounters& floor) {
  counters_.resource = std::max(counters_.resource, floor.resource);
  counters_.predicate = std::max(counters_.predicate, floor.predicate);
  counters_.literal = std::max(counters_.literal, floor.literal);
  counters_.statement = std::max(counters_.statement, floor.statement);
}

void GraphStore::restore_node(const Node& node) {
  if (nodes_.count(node.id)) {
    throw Error(ErrorCode::IdCollision, "node " + node.id.str() + " already exists");
  }
  if (text::trim(node.label).empty()) throw Error(ErrorCode::EmptyLabel, "node label is empty");
  check_text(node.label, "label");
  if (node.kind() != NodeKind::Resource && !node.classes.empty()) {
    throw Error(ErrorCode::ClassesOnNonResource, "only resources carry classes");
  }
  auto& counter = counter_for(node.kind());
  counter = std::max(counter, node.id.number);
  folded_labels_.emplace(node.id, text::fold(node.label));
  creation_order_.push_back(node.id);
  nodes_.emplace(node.id, node);
  record(NodeCreated{node});
}

void GraphStore::restore_statement(const Statement& statement) {
  if (statements_.count(statement.id)) {
    throw Error(ErrorCode::IdCollision, "statement " + statement.id.str() + " already exists");
  }
  for (const auto& [key, value] : statement.annotations) {
    if (is_reserved_annotation(key)) {
      throw Error(ErrorCode::ReservedKey, "annotation key '" + key + "' is reserved");
    }
  }
  check_statement_nodes(statement.subject, statement.predicate, statement.object);
  counters_.statement = std::max(counters_.statement, statement.id.number);
  record(StatementAdded{statement});
  insert_statement(statement);
}

void GraphStore::begin_journal() { journal_.emplace(); }

std::vector<Mutation> GraphStore::end_journal() {
  std::vector<Mutation> out = journal_ ? std::move(*journal_) : std::vector<Mutation>{};
  journal_.reset();
  return out;
}

void GraphStore::rollback(const std::vector<Mutation>& journal) {
  auto saved = std::move(journal_);
  journal_.reset();
  for (auto it = journal.rbegin(); it != journal.rend(); ++it) {
    std::visit(
        [this](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, NodeCreated>) {
            erase_node(m.node.id);
            auto& counter = counter_for(m.node.id.kind);
            if (counter == m.node.id.number) --counter;
          } else if constexpr (std::is_same_v<T, StatementAdded>) {
            erase_statement(m.statement.id);
            if (counters_.statement == m.statement.id.number) --counters_.statement;
          } else if constexpr (std::is_same_v<T, StatementDeleted>) {
            insert_statement(m.statement);
          } else {
            auto& annotations = statements_.at(m.id).annotations;
            if (m.previous) {
              annotations[m.key] = *m.previous;
            } else {
              annotations.erase(m.key);
            }
          }
        },
        *it);
  }
  journal_ = std::move(saved);
}

void GraphStore::apply(const Mutation& mutation) {
  std::visit(
      [this](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NodeCreated>) {
          restore_node(m.node);
        } else if constexpr (std::is_same_v<T, StatementAdded>) {
          restore_statement(m.statement);
        } else if constexpr (std::is_same_v<T, StatementDeleted>) {
          delete_statement(m.statement.id);
        } else {
          annotate_statement(m.id, m.key, m.value);
        }
      },
      mutation);
}

bool GraphStore::operator==(const GraphStore& other) const {
  return nodes_ == other.nodes_ && statements_ == other.statements_;
}

}  // namespace orkg::graph
