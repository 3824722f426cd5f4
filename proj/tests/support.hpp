// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Shared fixtures and test-only oracles.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <tuple>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orkg/comparison.hpp"
#include "orkg/contribution.hpp"
#include "orkg/graph_store.hpp"
#include "orkg/text.hpp"

namespace orkg::testing {

using contrib::NodeRef;
using graph::GraphStore;
using graph::NodeId;
using graph::NodeKind;

inline graph::Timestamp fixed_time() {
  using namespace std::chrono;
  return sys_days(year(2018) / 4 / 23) + hours(9);
}

inline GraphStore fixed_clock_store() { return GraphStore(&fixed_time); }

// The use case: a collaborative question answering framework written in
// Java and Python, evaluated on QALD and LC-Quad with f1-score and
// accuracy@k.
inline contrib::ContributionDraft frankenstein_draft(std::optional<NodeId> java = std::nullopt) {
  contrib::ContributionDraft d;
  d.name = "Contribution 1";
  d.problem = NodeRef::resource("Collaborative question answering");
  d.results = {
      {NodeRef::resource("utilizes programming language"),
       {NodeRef::resource("Python"), java ? NodeRef::existing(*java) : NodeRef::resource("Java")}},
      {NodeRef::resource("approach"), {NodeRef::resource("Generate optimal QA pipelines")}},
      {NodeRef::resource("evaluated on dataset"), {NodeRef::resource("QALD"), NodeRef::resource("LC-Quad")}},
      {NodeRef::resource("evaluation metric"), {NodeRef::resource("f1-score"), NodeRef::resource("accuracy@k")}},
  };
  return d;
}

inline contrib::PaperSubmission frankenstein_submission(std::optional<NodeId> java = std::nullopt) {
  contrib::PaperSubmission s;
  s.metadata.title = "Why Reinvent the Wheel: Let's Build Question Answering Systems Together";
  s.metadata.doi = "10.1145/3178876.3186023";
  s.metadata.authors = {"Kuldeep Singh", "Arun Sethupat Radhakrishna", "Andreas Both"};
  s.metadata.publication_year = 2018;
  s.metadata.venue = "Proceedings of the 2018 World Wide Web Conference";
  s.research_field = "information-systems";
  s.contributions = {frankenstein_draft(java)};
  s.submitted_by = "curator-1";
  return s;
}

inline std::set<std::pair<std::string, std::string>> labeled_pairs(const GraphStore& store,
                                                                   const std::vector<graph::Statement>& statements) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& s : statements) {
    out.emplace(store.node(s.predicate).label, store.node(s.object).label);
  }
  return out;
}

// Brute-force auto-completion: scan every node, apply the ordering rule.
inline std::vector<NodeId> find_nodes_oracle(const GraphStore& store, const std::string& query,
                                             std::optional<NodeKind> kind, std::size_t limit) {
  const auto needle = text::fold(text::trim(query));
  std::vector<std::tuple<int, std::size_t, NodeId>> hits;
  for (const auto& [id, node] : store.nodes()) {
    if (kind && id.kind != *kind) continue;
    const auto folded = text::fold(node.label);
    if (folded.find(needle) == std::string::npos) continue;
    hits.emplace_back(folded.rfind(needle, 0) == 0 ? 0 : 1, node.label.size(), id);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < hits.size() && i < limit; ++i) out.push_back(std::get<2>(hits[i]));
  return out;
}

// Subtree by shortest-distance relaxation over all statements: a statement
// belongs to the closure iff its subject lies within max_depth - 1 resource
// hops of the root.
inline std::set<graph::StatementId> subtree_oracle(const GraphStore& store, NodeId root, std::size_t max_depth) {
  std::map<NodeId, std::size_t> dist{{root, 0}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [id, s] : store.statements()) {
      auto d = dist.find(s.subject);
      if (d == dist.end() || s.object.kind != NodeKind::Resource) continue;
      const auto candidate = d->second + 1;
      auto o = dist.find(s.object);
      if (o == dist.end() || o->second > candidate) {
        dist[s.object] = candidate;
        changed = true;
      }
    }
  }
  std::set<graph::StatementId> out;
  for (const auto& [id, s] : store.statements()) {
    auto d = dist.find(s.subject);
    if (d != dist.end() && d->second + 1 <= max_depth) out.insert(id);
  }
  return out;
}

// Checks every statement against the raw node table: endpoints exist and
// have the right kinds, and no triple occurs twice.
inline std::optional<std::string> integrity_violation(const GraphStore& store) {
  std::set<std::tuple<NodeId, NodeId, NodeId>> triples;
  for (const auto& [id, s] : store.statements()) {
    if (!store.find_node(s.subject) || s.subject.kind != NodeKind::Resource) return id.str() + ": bad subject";
    if (!store.find_node(s.predicate) || s.predicate.kind != NodeKind::Predicate) return id.str() + ": bad predicate";
    if (!store.find_node(s.object) || s.object.kind == NodeKind::Predicate) return id.str() + ": bad object";
    if (!triples.emplace(s.subject, s.predicate, s.object).second) return id.str() + ": duplicate triple";
  }
  return std::nullopt;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "orkg") {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace orkg::testing

namespace orkg::testing {

// Random contribution graph for oracle comparisons. Contributions draw
// predicates and objects from small pools so that overlaps and exact ties
// are common; some object resources carry their own statements (depth 2),
// and literal labels differ only by case in places.
struct RandomStore {
  GraphStore store = fixed_clock_store();
  contrib::Vocabulary vocab;
  std::vector<NodeId> contributions;
};

inline RandomStore random_contribution_store(std::mt19937& rng, std::size_t count) {
  RandomStore r;
  r.vocab = contrib::ensure_vocabulary(r.store, contrib::Taxonomy::shipped());
  auto& store = r.store;
  std::vector<NodeId> predicates{r.vocab.addresses, r.vocab.evaluated_on_dataset, r.vocab.evaluation_metric,
                                 r.vocab.utilizes_programming_language, r.vocab.approach};
  predicates.push_back(store.create_node(NodeKind::Predicate, "Evaluated On Dataset"));
  predicates.push_back(store.create_node(NodeKind::Predicate, "has benchmark"));
  std::vector<NodeId> values;
  for (int i = 0; i < 25; ++i) values.push_back(store.create_node(NodeKind::Resource, "value " + std::to_string(i % 20)));
  const std::vector<std::string> literals{"0.5", "QALD", "qald", "F1", "f1", "Java"};
  // nested structure below a few values
  std::uniform_int_distribution<std::size_t> pv(0, values.size() - 1), pp(0, predicates.size() - 1),
      pl(0, literals.size() - 1);
  for (int i = 0; i < 20; ++i) {
    try {
      store.add_statement(values[pv(rng)], predicates[pp(rng)], values[pv(rng)], "gen");
    } catch (const Error&) {
    }
  }
  std::uniform_int_distribution<int> stmt_count(0, 7), coin(0, 3);
  for (std::size_t c = 0; c < count; ++c) {
    const NodeId id = store.create_node(NodeKind::Resource, "Contribution " + std::to_string(c),
                                        {std::string(contrib::vocab::kContributionClass)});
    r.contributions.push_back(id);
    store.add_statement(id, r.vocab.instance_of, r.vocab.contribution_class, "gen");
    // Every tenth contribution clones its predecessor's statements.
    if (c % 10 == 9) {
      for (const auto& s : store.query_statements({r.contributions[c - 1], std::nullopt, std::nullopt})) {
        if (s.predicate == r.vocab.instance_of) continue;
        NodeId object = s.object;
        if (object.kind == NodeKind::Literal) object = store.create_node(NodeKind::Literal, store.node(object).label);
        store.add_statement(id, s.predicate, object, "gen");
      }
      continue;
    }
    for (int k = stmt_count(rng); k > 0; --k) {
      const NodeId object = coin(rng) == 0 ? store.create_node(NodeKind::Literal, literals[pl(rng)]) : values[pv(rng)];
      try {
        store.add_statement(id, predicates[pp(rng)], object, "gen");
      } catch (const Error&) {
      }
    }
  }
  return r;
}

// Feature strings straight from the statement table (no extract_features).
inline std::set<std::string> feature_oracle(const GraphStore& store, const contrib::Vocabulary& vocab, NodeId c,
                                            std::size_t depth) {
  std::set<std::string> out;
  for (auto sid : subtree_oracle(store, c, depth)) {
    const auto& s = store.statement(sid);
    if (s.predicate == vocab.instance_of) continue;
    const std::string object =
        s.object.kind == NodeKind::Literal ? "lit:" + text::fold(store.node(s.object).label) : s.object.str();
    out.insert(s.predicate.str() + "|" + object);
  }
  return out;
}

inline double jaccard_oracle(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Exhaustive ranking: score every other contribution, keep positive scores,
// order by score descending then id ascending.
inline std::vector<std::pair<NodeId, double>> top_k_oracle(const std::map<NodeId, std::set<std::string>>& features,
                                                           NodeId query, std::size_t k) {
  std::vector<std::pair<NodeId, double>> all;
  for (const auto& [id, f] : features) {
    if (id == query) continue;
    const double s = jaccard_oracle(features.at(query), f);
    if (s > 0.0) all.emplace_back(id, s);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

// Depth-1 comparison straight from the statement table: rows keyed by
// folded predicate label, threshold ceil(c * n) or 2 when unset.
inline comparison::ComparisonTable compare_oracle(const GraphStore& store, const contrib::Vocabulary& vocab,
                                                    const std::vector<NodeId>& columns,
                                                    std::optional<double> min_coverage) {
  const std::size_t n = columns.size();
  const std::size_t threshold =
      min_coverage ? static_cast<std::size_t>(std::llround(std::ceil(*min_coverage * n - 1e-9))) : 2;
  std::map<std::string, std::pair<std::string, std::vector<std::vector<std::string>>>> rows;
  comparison::ComparisonTable t;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<NodeId> paper;
    std::string title = store.node(columns[i]).label;
    for (const auto& [sid, s] : store.statements()) {
      if (s.predicate == vocab.has_contribution && s.object == columns[i]) paper = s.subject;
    }
    if (paper) {
      for (const auto& [sid, s] : store.statements()) {
        if (s.subject == *paper && s.predicate == vocab.has_title) title = store.node(s.object).label;
      }
    }
    t.columns.push_back(comparison::Column{columns[i], paper, title});
    for (const auto& [sid, s] : store.statements()) {
      if (s.subject != columns[i] || s.predicate == vocab.instance_of) continue;
      const auto& label = store.node(s.predicate).label;
      auto& row = rows[text::fold(label)];
      if (row.second.empty()) {
        row.first = label;
        row.second.resize(n);
      }
      row.first = std::min(row.first, label);
      row.second[i].push_back(store.node(s.object).label);
    }
  }
  std::vector<std::tuple<std::size_t, std::string, std::string, comparison::Row>> kept;
  for (auto& [key, r] : rows) {
    std::size_t coverage = 0;
    for (auto& cell : r.second) {
      std::sort(cell.begin(), cell.end());
      coverage += !cell.empty();
    }
    if (coverage >= threshold) kept.emplace_back(coverage, r.first, key, comparison::Row{r.first, coverage, r.second});
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });
  for (auto& k : kept) t.rows.push_back(std::get<3>(k));
  return t;
}

}  // namespace orkg::testing
