// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/similarity.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <set>

#include "orkg/error.hpp"
#include "orkg/text.hpp"

namespace orkg::similarity {

using graph::NodeKind;

std::size_t FeatureHash::operator()(const Feature& f) const noexcept {
  const std::size_t h = graph::NodeIdHash{}(f.predicate);
  return h ^ (std::hash<std::string>{}(f.object_key) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

double Config::weight(NodeId predicate) const {
  auto it = predicate_weights.find(predicate);
  return it == predicate_weights.end() ? 1.0 : it->second;
}

namespace {

bool is_contribution(const GraphStore& store, NodeId id) {
  return id.kind == NodeKind::Resource && contrib::has_class(store, id, contrib::vocab::kContributionClass);
}

double total_weight(const FeatureSet& s, const Config& config) {
  if (config.unweighted()) return static_cast<double>(s.size());
  double w = 0.0;
  for (const auto& f : s.features) w += config.weight(f.predicate);
  return w;
}

// Sorted-merge intersection weight.
double overlap_weight(const FeatureSet& a, const FeatureSet& b, const Config& config) {
  double w = 0.0;
  auto i = a.features.begin(), j = b.features.begin();
  while (i != a.features.end() && j != b.features.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      w += config.unweighted() ? 1.0 : config.weight(i->predicate);
      ++i;
      ++j;
    }
  }
  return w;
}

double jaccard(double overlap, double wa, double wb) {
  const double uni = wa + wb - overlap;
  return uni > 0.0 ? overlap / uni : 0.0;
}

}  // namespace

FeatureSet extract_features(const GraphStore& store, const contrib::Vocabulary& vocab, NodeId contribution,
                            std::size_t depth) {
  if (!is_contribution(store, contribution)) {
    throw Error(ErrorCode::NotAContribution, contribution.str() + " is not a contribution");
  }
  FeatureSet set;
  set.contribution = contribution;
  for (const auto& s : store.subtree(contribution, depth)) {
    if (s.predicate == vocab.instance_of) continue;
    std::string key = s.object.kind == NodeKind::Literal ? "lit:" + text::fold(store.node(s.object).label)
                                                         : s.object.str();
    set.features.push_back(Feature{s.predicate, std::move(key)});
  }
  std::sort(set.features.begin(), set.features.end());
  set.features.erase(std::unique(set.features.begin(), set.features.end()), set.features.end());
  return set;
}

double similarity_score(const FeatureSet& a, const FeatureSet& b, const Config& config) {
  return jaccard(overlap_weight(a, b, config), total_weight(a, config), total_weight(b, config));
}

std::vector<NodeId> list_contributions(const GraphStore& store) {
  std::vector<NodeId> out;
  const auto& nodes = store.nodes();
  const auto end = nodes.lower_bound(NodeId{NodeKind::Predicate, 0});
  const std::string cls(contrib::vocab::kContributionClass);
  for (auto it = nodes.begin(); it != end; ++it) {
    if (it->second.classes.count(cls)) out.push_back(it->first);
  }
  return out;
}

std::vector<FeatureSet> extract_all(const GraphStore& store, const contrib::Vocabulary& vocab,
                                    const std::vector<NodeId>& contributions, std::size_t depth,
                                    Execution execution) {
  std::vector<FeatureSet> sets(contributions.size());
  const auto n = static_cast<std::ptrdiff_t>(contributions.size());
  if (execution == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      sets[static_cast<std::size_t>(i)] = extract_features(store, vocab, contributions[static_cast<std::size_t>(i)], depth);
    }
    return sets;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      sets[static_cast<std::size_t>(i)] = extract_features(store, vocab, contributions[static_cast<std::size_t>(i)], depth);
    } catch (...) {
#pragma omp critical(orkg_similarity_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return sets;
}

void rank(std::vector<Match>& matches, std::size_t k) {
  auto better = [](const Match& a, const Match& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.contribution < b.contribution;
  };
  if (matches.size() > k) {
    std::partial_sort(matches.begin(), matches.begin() + static_cast<std::ptrdiff_t>(k), matches.end(), better);
    matches.resize(k);
  } else {
    std::sort(matches.begin(), matches.end(), better);
  }
}

std::vector<Match> exhaustive_top_k(const std::vector<FeatureSet>& sets, std::size_t query, std::size_t k,
                                    const Config& config, Execution execution) {
  if (k == 0) throw Error(ErrorCode::BadRequest, "k must be at least 1");
  const auto& q = sets.at(query);
  const double wq = total_weight(q, config);
  const auto n = static_cast<std::ptrdiff_t>(sets.size());
  std::vector<double> scores(sets.size(), 0.0);

  if (execution == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& other = sets[static_cast<std::size_t>(i)];
      scores[static_cast<std::size_t>(i)] = jaccard(overlap_weight(q, other, config), wq, total_weight(other, config));
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& other = sets[static_cast<std::size_t>(i)];
      scores[static_cast<std::size_t>(i)] = jaccard(overlap_weight(q, other, config), wq, total_weight(other, config));
    }
  }

  std::vector<Match> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i == query || scores[i] <= 0.0) continue;
    out.push_back(Match{sets[i].contribution, scores[i]});
  }
  rank(out, k);
  return out;
}

SimilarityIndex SimilarityIndex::from_sets(std::vector<FeatureSet> sets, Config config) {
  SimilarityIndex index;
  index.config_ = std::move(config);
  std::sort(sets.begin(), sets.end(),
            [](const FeatureSet& a, const FeatureSet& b) { return a.contribution < b.contribution; });
  index.sets_ = std::move(sets);
  index.set_weight_.reserve(index.sets_.size());
  for (std::uint32_t slot = 0; slot < index.sets_.size(); ++slot) {
    const auto& s = index.sets_[slot];
    index.slot_.emplace(s.contribution, slot);
    index.set_weight_.push_back(total_weight(s, index.config_));
    for (const auto& f : s.features) index.postings_[f].push_back(slot);
  }
  return index;
}

SimilarityIndex SimilarityIndex::build(const GraphStore& store, const contrib::Vocabulary& vocab, Config config,
                                       Execution execution) {
  auto sets = extract_all(store, vocab, list_contributions(store), config.depth, execution);
  return from_sets(std::move(sets), std::move(config));
}

const FeatureSet* SimilarityIndex::features_of(NodeId contribution) const {
  auto it = slot_.find(contribution);
  return it == slot_.end() ? nullptr : &sets_[it->second];
}

std::vector<Match> SimilarityIndex::top_k(NodeId contribution, std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::BadRequest, "k must be at least 1");
  auto it = slot_.find(contribution);
  if (it == slot_.end()) throw Error(ErrorCode::NotAContribution, contribution.str() + " is not an indexed contribution");
  const std::uint32_t query = it->second;

  std::unordered_map<std::uint32_t, double> overlap;
  for (const auto& f : sets_[query].features) {
    const double w = config_.weight(f.predicate);
    for (std::uint32_t other : postings_.at(f)) {
      if (other != query) overlap[other] += w;
    }
  }
  std::vector<Match> out;
  out.reserve(overlap.size());
  for (const auto& [other, w] : overlap) {
    const double score = jaccard(w, set_weight_[query], set_weight_[other]);
    if (score > 0.0) out.push_back(Match{sets_[other].contribution, score});
  }
  rank(out, k);
  return out;
}

void SimilarityEngine::mark_stale() {
  std::lock_guard lock(mutex_);
  stale_ = true;
}

bool SimilarityEngine::stale() const {
  std::lock_guard lock(mutex_);
  return stale_;
}

IndexStats SimilarityEngine::rebuild(const GraphStore& store, const contrib::Vocabulary& vocab) {
  auto fresh = std::make_shared<const SimilarityIndex>(SimilarityIndex::build(store, vocab, config_));
  const auto stats = fresh->stats();
  std::lock_guard lock(mutex_);
  index_ = std::move(fresh);
  stale_ = false;
  return stats;
}

std::shared_ptr<const SimilarityIndex> SimilarityEngine::snapshot() const {
  std::lock_guard lock(mutex_);
  return index_;
}

std::vector<Match> SimilarityEngine::top_k_similar(NodeId contribution, std::size_t k) const {
  std::shared_ptr<const SimilarityIndex> index;
  {
    std::lock_guard lock(mutex_);
    if (stale_ || !index_) throw Error(ErrorCode::IndexStale, "similarity index must be rebuilt");
    index = index_;
  }
  return index->top_k(contribution, k);
}

std::vector<Match> SimilarityEngine::top_k_similar_papers(const GraphStore& store, const contrib::Vocabulary& vocab,
                                                          NodeId paper, std::size_t k) const {
  const auto view = contrib::get_paper(store, vocab, paper);
  std::map<NodeId, double> best;
  for (const auto& c : view.contributions) {
    for (const auto& m : top_k_similar(c.id, std::numeric_limits<std::size_t>::max())) {
      auto owner = contrib::paper_of(store, vocab, m.contribution);
      if (!owner || *owner == paper) continue;
      auto& slot = best[*owner];
      slot = std::max(slot, m.score);
    }
  }
  std::vector<Match> out;
  for (const auto& [p, score] : best) out.push_back(Match{p, score});
  rank(out, k);
  return out;
}

}  // namespace orkg::similarity
