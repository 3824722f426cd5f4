// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/dump.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "orkg/error.hpp"

namespace orkg::graph {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorCode::MalformedRecord, why);
}

const std::string& string_field(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    malformed(std::string("field \"") + key + "\" missing or not a string");
  }
  return it->get_ref<const std::string&>();
}

NodeId node_id_field(const json& record, const char* key) {
  auto id = NodeId::parse(string_field(record, key));
  if (!id) malformed(std::string("field \"") + key + "\" is not a node id");
  return *id;
}

}  // namespace

ordered_json node_record(const Node& node) {
  ordered_json record;
  record["kind"] = kind_name(node.kind());
  record["id"] = node.id.str();
  record["label"] = node.label;
  record["classes"] = ordered_json::array();
  for (const auto& c : node.classes) record["classes"].push_back(c);
  return record;
}

ordered_json statement_record(const Statement& s) {
  ordered_json record;
  record["kind"] = "statement";
  record["id"] = s.id.str();
  record["subject"] = s.subject.str();
  record["predicate"] = s.predicate.str();
  record["object"] = s.object.str();
  record["annotations"] = ordered_json::object();
  for (const auto& [k, v] : s.annotations) record["annotations"][k] = v;
  record["created_at"] = format_timestamp(s.provenance.created_at);
  record["created_by"] = s.provenance.created_by;
  return record;
}

Node parse_node_record(const json& record) {
  if (!record.is_object()) malformed("record is not an object");
  auto kind = parse_kind(string_field(record, "kind"));
  if (!kind) malformed("unknown node kind");
  Node node;
  node.id = node_id_field(record, "id");
  if (node.id.kind != *kind) malformed("id prefix does not match kind");
  node.label = string_field(record, "label");
  auto classes = record.find("classes");
  if (classes == record.end() || !classes->is_array()) malformed("field \"classes\" missing");
  for (const auto& c : *classes) {
    if (!c.is_string()) malformed("class tag is not a string");
    node.classes.insert(c.get<std::string>());
  }
  return node;
}

Statement parse_statement_record(const json& record) {
  if (!record.is_object()) malformed("record is not an object");
  if (string_field(record, "kind") != "statement") malformed("not a statement record");
  Statement s;
  auto id = StatementId::parse(string_field(record, "id"));
  if (!id) malformed("field \"id\" is not a statement id");
  s.id = *id;
  s.subject = node_id_field(record, "subject");
  s.predicate = node_id_field(record, "predicate");
  s.object = node_id_field(record, "object");
  auto annotations = record.find("annotations");
  if (annotations == record.end() || !annotations->is_object()) {
    malformed("field \"annotations\" missing");
  }
  for (const auto& [k, v] : annotations->items()) {
    if (!v.is_string()) malformed("annotation value is not a string");
    s.annotations.emplace(k, v.get<std::string>());
  }
  auto created_at = parse_timestamp(string_field(record, "created_at"));
  if (!created_at) malformed("field \"created_at\" is not an RFC 3339 UTC timestamp");
  s.provenance.created_at = *created_at;
  s.provenance.created_by = string_field(record, "created_by");
  if (s.provenance.created_by.empty()) malformed("field \"created_by\" is empty");
  return s;
}

std::size_t export_dump(const GraphStore& store, std::ostream& sink) {
  std::size_t count = 0;
  auto write = [&](const ordered_json& record) {
    sink << record.dump() << '\n';
    if (!sink) throw Error(ErrorCode::SinkFailure, "failed writing dump record " + std::to_string(count + 1));
    ++count;
  };
  // std::map<NodeId> is ordered by (kind, number), which is the dump order.
  for (const auto& [id, node] : store.nodes()) write(node_record(node));
  for (const auto& [id, s] : store.statements()) write(statement_record(s));
  sink.flush();
  if (!sink) throw Error(ErrorCode::SinkFailure, "failed flushing dump");
  return count;
}

std::string export_dump(const GraphStore& store) {
  std::ostringstream out;
  export_dump(store, out);
  return out.str();
}

std::size_t import_dump(GraphStore& store, std::istream& source, ImportMode mode) {
  if (mode == ImportMode::EmptyOnly && !store.empty()) {
    throw Error(ErrorCode::BadRequest, "store is not empty and merge mode was not requested");
  }
  // Inside an enclosing journal the caller owns rollback.
  const bool owns_journal = !store.journaling();
  if (owns_journal) store.begin_journal();

  std::size_t line_no = 0;
  std::size_t count = 0;
  std::string line;
  try {
    while (std::getline(source, line)) {
      ++line_no;
      try {
        if (source.eof()) malformed("truncated record (no line terminator)");
        const json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) malformed("not a JSON object");
        auto kind = record.find("kind");
        if (kind != record.end() && kind->is_string() && *kind == "statement") {
          const Statement s = parse_statement_record(record);
          for (NodeId id : {s.subject, s.predicate, s.object}) {
            if (!store.find_node(id)) {
              throw Error(ErrorCode::ForwardReference,
                          "statement " + s.id.str() + " references unseen node " + id.str());
            }
          }
          store.restore_statement(s);
        } else {
          store.restore_node(parse_node_record(record));
        }
      } catch (const Error& e) {
        const auto code = (e.code() == ErrorCode::ForwardReference || e.code() == ErrorCode::IdCollision)
                              ? e.code()
                              : ErrorCode::MalformedRecord;
        throw Error(code, "line " + std::to_string(line_no) + ": " + e.what());
      }
      ++count;
    }
  } catch (...) {
    if (owns_journal) store.rollback(store.end_journal());
    throw;
  }
  if (owns_journal) store.end_journal();
  return count;
}

}  // namespace orkg::graph
