// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Contribution similarity.
//
// A contribution is represented by the set of (predicate, object) features in
// its subtree (class typing excluded). Two contributions are compared with
// Jaccard similarity, optionally weighted per predicate:
//
//   score(A, B) = w(A ∩ B) / w(A ∪ B),   0 when both sets are empty.
//
// Retrieval goes through an inverted index (feature -> contributions). The
// exhaustive kernels score every pair directly; they come in a serial
// reference form and an OpenMP form and are kept for testing and
// benchmarking.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orkg/contribution.hpp"
#include "orkg/graph_store.hpp"

namespace orkg::similarity {

using graph::GraphStore;
using graph::NodeId;

struct Feature {
  NodeId predicate;
  // Object node id for resources, "lit:" + folded label for literals.
  std::string object_key;

  auto operator<=>(const Feature&) const = default;
};

struct FeatureHash {
  std::size_t operator()(const Feature& f) const noexcept;
};

struct FeatureSet {
  NodeId contribution;
  std::vector<Feature> features;  // sorted, unique

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
};

struct Config {
  std::size_t depth = 2;
  // Missing predicates weigh 1.0.
  std::map<NodeId, double> predicate_weights;

  double weight(NodeId predicate) const;
  bool unweighted() const { return predicate_weights.empty(); }
};

enum class Execution { Serial, Parallel };

struct Match {
  NodeId contribution;
  double score = 0.0;

  bool operator==(const Match&) const = default;
};

struct IndexStats {
  std::size_t contributions = 0;
  std::size_t features = 0;

  bool operator==(const IndexStats&) const = default;
};

// Throws NotAContribution unless `contribution` is a resource classed
// "Contribution".
FeatureSet extract_features(const GraphStore& store, const contrib::Vocabulary& vocab, NodeId contribution,
                            std::size_t depth);

double similarity_score(const FeatureSet& a, const FeatureSet& b, const Config& config = {});

// Every resource classed "Contribution", ascending.
std::vector<NodeId> list_contributions(const GraphStore& store);

std::vector<FeatureSet> extract_all(const GraphStore& store, const contrib::Vocabulary& vocab,
                                    const std::vector<NodeId>& contributions, std::size_t depth,
                                    Execution execution = Execution::Parallel);

// Scores sets[query] against every other set and keeps the best k with a
// positive score (descending score, then ascending id).
std::vector<Match> exhaustive_top_k(const std::vector<FeatureSet>& sets, std::size_t query, std::size_t k,
                                    const Config& config = {}, Execution execution = Execution::Parallel);

// Orders by descending score, then ascending id, and truncates to k.
void rank(std::vector<Match>& matches, std::size_t k);

class SimilarityIndex {
 public:
  static SimilarityIndex build(const GraphStore& store, const contrib::Vocabulary& vocab, Config config = {},
                               Execution execution = Execution::Parallel);
  static SimilarityIndex from_sets(std::vector<FeatureSet> sets, Config config = {});

  // Throws NotAContribution for ids not in the index.
  std::vector<Match> top_k(NodeId contribution, std::size_t k) const;

  IndexStats stats() const { return {sets_.size(), postings_.size()}; }
  const FeatureSet* features_of(NodeId contribution) const;
  const std::vector<FeatureSet>& sets() const { return sets_; }
  const Config& config() const { return config_; }

 private:
  Config config_;
  std::vector<FeatureSet> sets_;  // ascending contribution id
  std::vector<double> set_weight_;
  std::unordered_map<NodeId, std::uint32_t, graph::NodeIdHash> slot_;
  std::unordered_map<Feature, std::vector<std::uint32_t>, FeatureHash> postings_;
};

// Holds the current index snapshot. Writes elsewhere mark it stale; queries
// against a stale engine fail with IndexStale until rebuild() swaps in a
// fresh snapshot. Readers keep the snapshot they obtained.
class SimilarityEngine {
 public:
  explicit SimilarityEngine(Config config = {}) : config_(std::move(config)) {}

  void mark_stale();
  bool stale() const;
  IndexStats rebuild(const GraphStore& store, const contrib::Vocabulary& vocab);
  std::shared_ptr<const SimilarityIndex> snapshot() const;

  // Throws IndexStale, NotAContribution.
  std::vector<Match> top_k_similar(NodeId contribution, std::size_t k) const;

  // Paper-level ranking: a paper scores the maximum over its contributions'
  // matches against any of `paper`'s contributions.
  std::vector<Match> top_k_similar_papers(const GraphStore& store, const contrib::Vocabulary& vocab, NodeId paper,
                                          std::size_t k) const;

  const Config& config() const { return config_; }

 private:
  Config config_;
  mutable std::mutex mutex_;
  std::shared_ptr<const SimilarityIndex> index_;
  bool stale_ = true;
};

}  // namespace orkg::similarity
