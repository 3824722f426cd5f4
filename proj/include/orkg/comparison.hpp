// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// State-of-the-art comparison: a property-aligned matrix over a selection of
// contributions. Columns keep the caller's order; a row is kept when its
// property appears on at least ceil(min_coverage * n) of the n columns.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orkg/contribution.hpp"
#include "orkg/graph_store.hpp"

namespace orkg::comparison {

using graph::GraphStore;
using graph::NodeId;

struct ComparisonOptions {
  // Unset means "shared by at least two contributions".
  std::optional<double> min_coverage;
  std::size_t depth = 1;
  // Align case-insensitively by predicate label rather than predicate id.
  bool align_by_label = true;
};

struct Column {
  NodeId contribution;
  std::optional<NodeId> paper;
  std::string title;  // paper title, or the contribution label without a paper

  bool operator==(const Column&) const = default;
};

struct Row {
  std::string label;  // "label / label" for nested paths
  std::size_t coverage = 0;
  std::vector<std::vector<std::string>> cells;  // one per column, sorted

  bool operator==(const Row&) const = default;
};

struct ComparisonTable {
  std::vector<Column> columns;
  std::vector<Row> rows;

  bool operator==(const ComparisonTable&) const = default;
};

// Minimum number of columns a property must occur on. Throws BadRequest
// when min_coverage is outside (0, 1].
std::size_t coverage_threshold(const std::optional<double>& min_coverage, std::size_t columns);

// Throws TooFewContributions, UnknownNode, NotAContribution.
ComparisonTable compare(const GraphStore& store, const contrib::Vocabulary& vocab,
                        const std::vector<NodeId>& contributions, const ComparisonOptions& options = {});

// RFC 4180: CRLF record separators, fields quoted when they contain a comma,
// quote, CR or LF. Multiple cell values are joined with "; ".
std::string render_csv(const ComparisonTable& table);

nlohmann::json to_json(const ComparisonTable& table);

}  // namespace orkg::comparison
