// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/service/api_json.hpp"

#include "orkg/dump.hpp"

namespace orkg::service::api {

using nlohmann::json;

json node(const graph::Node& n) { return graph::node_record(n); }

json statement(const graph::Statement& s) {
  return json{{"id", s.id.str()},
              {"subject", s.subject.str()},
              {"predicate", s.predicate.str()},
              {"object", s.object.str()},
              {"annotations", s.annotations_with_provenance()},
              {"created_at", graph::format_timestamp(s.provenance.created_at)},
              {"created_by", s.provenance.created_by}};
}

json similar(const Backend& backend, NodeId contribution, const std::vector<similarity::Match>& matches) {
  return backend.read([&](const GraphStore& store, const contrib::Vocabulary& vocab) {
    json results = json::array();
    for (const auto& m : matches) {
      const auto paper = contrib::paper_of(store, vocab, m.contribution);
      results.push_back(json{{"contribution", m.contribution.str()},
                             {"label", store.node(m.contribution).label},
                             {"paper", paper ? json(paper->str()) : json(nullptr)},
                             {"score", m.score}});
    }
    return json{{"contribution", contribution.str()}, {"results", results}};
  });
}

json papers(const std::vector<PaperSummary>& papers) {
  json out = json::array();
  for (const auto& p : papers) out.push_back(json{{"id", p.id.str()}, {"title", p.title}});
  return out;
}

}  // namespace orkg::service::api
