// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Line-delimited JSON dump of a GraphStore.
//
// One record per line. Node records: {"kind","id","label","classes"}.
// Statement records: {"kind","id","subject","predicate","object",
// "annotations","created_at","created_by"}. Keys appear in exactly that
// order; resources, then predicates, then literals, then statements, each
// ordered by numeric id.

#include <cstddef>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "orkg/graph_store.hpp"

namespace orkg::graph {

enum class ImportMode { EmptyOnly, Merge };

std::size_t export_dump(const GraphStore& store, std::ostream& sink);
std::string export_dump(const GraphStore& store);

// Atomic: on any error the store is left unchanged.
std::size_t import_dump(GraphStore& store, std::istream& source,
                        ImportMode mode = ImportMode::EmptyOnly);

nlohmann::ordered_json node_record(const Node& node);
nlohmann::ordered_json statement_record(const Statement& statement);

// Throw MalformedRecord (without line context) on shape errors.
Node parse_node_record(const nlohmann::json& record);
Statement parse_statement_record(const nlohmann::json& record);

}  // namespace orkg::graph
