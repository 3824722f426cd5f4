// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "orkg/error.hpp"
#include "orkg/text.hpp"

namespace orkg::comparison {

using graph::NodeKind;
using graph::Statement;

namespace {

struct Property {
  std::string key;
  std::string label;
};

struct Occurrence {
  Property property;
  std::string value;
};

// Statements of the contribution's subtree, each keyed by the predicate path
// from the contribution down to it. Nested nodes take the path through which
// breadth-first search first reached them.
std::vector<Occurrence> occurrences(const GraphStore& store, const contrib::Vocabulary& vocab, NodeId root,
                                    const ComparisonOptions& options) {
  const auto statements = store.subtree(root, options.depth);
  std::unordered_map<NodeId, std::vector<const Statement*>, graph::NodeIdHash> out_edges;
  for (const auto& s : statements) {
    if (s.predicate != vocab.instance_of) out_edges[s.subject].push_back(&s);
  }

  struct Path {
    std::string key;
    std::string label;
  };
  std::unordered_map<NodeId, Path, graph::NodeIdHash> paths{{root, Path{}}};
  std::deque<NodeId> frontier{root};
  std::vector<Occurrence> result;
  while (!frontier.empty()) {
    const NodeId node = frontier.front();
    frontier.pop_front();
    const Path base = paths.at(node);
    auto edges = out_edges.find(node);
    if (edges == out_edges.end()) continue;
    for (const Statement* s : edges->second) {
      const auto& predicate_label = store.node(s->predicate).label;
      Path p;
      const std::string step_key = options.align_by_label ? text::fold(predicate_label) : s->predicate.str();
      p.key = base.key.empty() ? step_key : base.key + " / " + step_key;
      p.label = base.label.empty() ? predicate_label : base.label + " / " + predicate_label;
      result.push_back(Occurrence{Property{p.key, p.label}, store.node(s->object).label});
      if (s->object.kind == NodeKind::Resource && !paths.count(s->object)) {
        paths.emplace(s->object, p);
        frontier.push_back(s->object);
      }
    }
  }
  return result;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::size_t coverage_threshold(const std::optional<double>& min_coverage, std::size_t columns) {
  if (!min_coverage) return 2;
  const double c = *min_coverage;
  if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorCode::BadRequest, "min_coverage must lie in (0, 1]");
  // Tolerance absorbs rounding in values such as 2.0 / n.
  const auto t = static_cast<std::size_t>(std::ceil(c * static_cast<double>(columns) - 1e-9));
  return std::max<std::size_t>(t, 1);
}

ComparisonTable compare(const GraphStore& store, const contrib::Vocabulary& vocab,
                        const std::vector<NodeId>& contributions, const ComparisonOptions& options) {
  const std::set<NodeId> distinct(contributions.begin(), contributions.end());
  if (contributions.size() < 2 || distinct.size() != contributions.size()) {
    throw Error(ErrorCode::TooFewContributions, "comparison needs at least two distinct contributions");
  }
  if (options.depth == 0) throw Error(ErrorCode::BadRequest, "depth must be at least 1");
  const std::size_t threshold = coverage_threshold(options.min_coverage, contributions.size());

  ComparisonTable table;
  for (NodeId id : contributions) {
    store.node(id);  // throws UnknownNode
    if (id.kind != NodeKind::Resource || !contrib::has_class(store, id, contrib::vocab::kContributionClass)) {
      throw Error(ErrorCode::NotAContribution, id.str() + " is not a contribution");
    }
    Column column{id, contrib::paper_of(store, vocab, id), {}};
    std::optional<std::string> title;
    if (column.paper) title = contrib::title_of(store, vocab, *column.paper);
    column.title = title.value_or(store.node(id).label);
    table.columns.push_back(std::move(column));
  }

  struct Accumulator {
    std::string label;
    std::vector<std::vector<std::string>> cells;
  };
  std::map<std::string, Accumulator> by_key;
  const std::size_t n = contributions.size();
  for (std::size_t col = 0; col < n; ++col) {
    for (auto& occ : occurrences(store, vocab, contributions[col], options)) {
      auto [it, inserted] = by_key.try_emplace(occ.property.key);
      // Label spellings that fold together: keep the smallest so the row
      // label does not depend on column order.
      if (inserted) {
        it->second.label = occ.property.label;
        it->second.cells.resize(n);
      } else if (occ.property.label < it->second.label) {
        it->second.label = occ.property.label;
      }
      it->second.cells[col].push_back(std::move(occ.value));
    }
  }

  std::vector<std::pair<std::string, Row>> rows;
  for (auto& [key, acc] : by_key) {
    Row row;
    row.label = acc.label;
    row.coverage = static_cast<std::size_t>(
        std::count_if(acc.cells.begin(), acc.cells.end(), [](const auto& c) { return !c.empty(); }));
    if (row.coverage < threshold) continue;
    for (auto& cell : acc.cells) std::sort(cell.begin(), cell.end());
    row.cells = std::move(acc.cells);
    rows.emplace_back(key, std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.coverage != b.second.coverage) return a.second.coverage > b.second.coverage;
    if (a.second.label != b.second.label) return a.second.label < b.second.label;
    return a.first < b.first;
  });
  for (auto& [key, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

std::string render_csv(const ComparisonTable& table) {
  std::string out = "Property";
  for (const auto& c : table.columns) out += "," + csv_field(c.title);
  out += "\r\n";
  for (const auto& row : table.rows) {
    out += csv_field(row.label);
    for (const auto& cell : row.cells) {
      std::string joined;
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (i) joined += "; ";
        joined += cell[i];
      }
      out += "," + csv_field(joined);
    }
    out += "\r\n";
  }
  return out;
}

nlohmann::json to_json(const ComparisonTable& table) {
  using nlohmann::json;
  json columns = json::array();
  for (const auto& c : table.columns) {
    columns.push_back(json{{"contribution", c.contribution.str()},
                           {"paper", c.paper ? json(c.paper->str()) : json(nullptr)},
                           {"title", c.title}});
  }
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back(json{{"property", r.label}, {"coverage", r.coverage}, {"cells", r.cells}});
  }
  return json{{"columns", columns}, {"rows", rows}};
}

}  // namespace orkg::comparison
