// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/contribution.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>

#include "orkg/text.hpp"

namespace orkg::contrib {

namespace detail {
extern const char* const kShippedTaxonomy;
}

using graph::NodeKind;
using graph::StatementFilter;
using graph::StatementId;
using nlohmann::json;

namespace {

[[noreturn]] void bad_request(const std::string& why) { throw Error(ErrorCode::BadRequest, why); }

std::string index_path(std::string_view base, std::string_view member, std::size_t i) {
  return std::string(base) + std::string(member) + "[" + std::to_string(i) + "]";
}

bool is_blank(std::string_view s) { return text::trim(s).empty(); }

}  // namespace

// ---------------------------------------------------------------------------
// Taxonomy

Taxonomy Taxonomy::from_json(const json& document) {
  Taxonomy t;
  if (!document.is_object() || !document.contains("fields") || !document["fields"].is_array()) {
    bad_request("taxonomy document needs a \"fields\" array");
  }
  std::function<void(const json&, const std::optional<std::string>&, std::vector<std::string>&)> walk;
  walk = [&](const json& list, const std::optional<std::string>& parent,
             std::vector<std::string>& siblings_out) {
    std::set<std::string> sibling_labels;
    for (const auto& entry : list) {
      if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
          !entry.contains("label") || !entry["label"].is_string()) {
        bad_request("taxonomy entries need string \"id\" and \"label\"");
      }
      ResearchField field;
      field.id = entry["id"].get<std::string>();
      field.label = entry["label"].get<std::string>();
      field.parent = parent;
      if (is_blank(field.id) || is_blank(field.label)) bad_request("blank taxonomy id or label");
      if (t.fields_.count(field.id)) bad_request("duplicate taxonomy id " + field.id);
      if (!sibling_labels.insert(field.label).second) {
        bad_request("duplicate sibling label " + field.label);
      }
      siblings_out.push_back(field.id);
      t.order_.push_back(field.id);
      const std::string id = field.id;
      t.fields_.emplace(id, std::move(field));
      if (entry.contains("children")) {
        if (!entry["children"].is_array()) bad_request("\"children\" must be an array");
        std::vector<std::string> children;
        walk(entry["children"], id, children);
        t.fields_.at(id).children = std::move(children);
      }
    }
  };
  walk(document["fields"], std::nullopt, t.roots_);
  return t;
}

Taxonomy Taxonomy::parse(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) bad_request("taxonomy is not valid JSON");
  return from_json(doc);
}

const Taxonomy& Taxonomy::shipped() {
  static const Taxonomy taxonomy = parse(detail::kShippedTaxonomy);
  return taxonomy;
}

const ResearchField& Taxonomy::field(std::string_view id) const {
  auto it = fields_.find(std::string(id));
  if (it == fields_.end()) throw Error(ErrorCode::UnknownField, "unknown research field " + std::string(id));
  return it->second;
}

std::vector<std::string> Taxonomy::with_descendants(std::string_view id) const {
  std::vector<std::string> out;
  std::function<void(const ResearchField&)> walk = [&](const ResearchField& f) {
    out.push_back(f.id);
    for (const auto& child : f.children) walk(fields_.at(child));
  };
  walk(field(id));
  return out;
}

json Taxonomy::to_json() const {
  std::function<json(const std::string&)> node = [&](const std::string& id) {
    const auto& f = fields_.at(id);
    json j{{"id", f.id}, {"label", f.label}, {"children", json::array()}};
    for (const auto& c : f.children) j["children"].push_back(node(c));
    return j;
  };
  json fields = json::array();
  for (const auto& r : roots_) fields.push_back(node(r));
  return json{{"fields", fields}};
}

// ---------------------------------------------------------------------------
// Vocabulary

std::optional<std::string> Vocabulary::field_of(NodeId resource) const {
  for (const auto& [id, node] : fields) {
    if (node == resource) return id;
  }
  return std::nullopt;
}

std::optional<NodeId> find_predicate(const GraphStore& store, std::string_view label) {
  const auto& nodes = store.nodes();
  auto it = nodes.lower_bound(NodeId{NodeKind::Predicate, 0});
  auto end = nodes.lower_bound(NodeId{NodeKind::Literal, 0});
  for (; it != end; ++it) {
    if (it->second.label == label) return it->first;
  }
  return std::nullopt;
}

namespace {

std::optional<NodeId> find_tagged_resource(const GraphStore& store, std::string_view label,
                                           std::string_view tag) {
  const auto& nodes = store.nodes();
  auto end = nodes.lower_bound(NodeId{NodeKind::Predicate, 0});
  for (auto it = nodes.begin(); it != end; ++it) {
    if (it->second.classes.count(std::string(tag)) && (label.empty() || it->second.label == label)) {
      return it->first;
    }
  }
  return std::nullopt;
}

template <typename Lookup>
std::optional<Vocabulary> resolve_vocabulary(const Taxonomy& taxonomy, Lookup&& predicate,
                                             const std::function<std::optional<NodeId>()>& contribution_class,
                                             const std::function<std::optional<NodeId>(const ResearchField&)>& field) {
  Vocabulary v;
  const std::pair<NodeId*, std::string_view> predicates[] = {
      {&v.has_contribution, vocab::kHasContribution},
      {&v.addresses, vocab::kAddresses},
      {&v.utilizes_method, vocab::kUtilizesMethod},
      {&v.has_research_field, vocab::kHasResearchField},
      {&v.has_title, vocab::kHasTitle},
      {&v.has_doi, vocab::kHasDoi},
      {&v.has_author, vocab::kHasAuthor},
      {&v.has_publication_year, vocab::kHasPublicationYear},
      {&v.has_venue, vocab::kHasVenue},
      {&v.utilizes_programming_language, vocab::kUtilizesProgrammingLanguage},
      {&v.evaluated_on_dataset, vocab::kEvaluatedOnDataset},
      {&v.evaluation_metric, vocab::kEvaluationMetric},
      {&v.approach, vocab::kApproach},
      {&v.instance_of, vocab::kInstanceOf},
  };
  for (const auto& [slot, label] : predicates) {
    auto id = predicate(label);
    if (!id) return std::nullopt;
    *slot = *id;
  }
  auto cls = contribution_class();
  if (!cls) return std::nullopt;
  v.contribution_class = *cls;
  for (const auto& id : taxonomy.ids()) {
    auto node = field(taxonomy.field(id));
    if (!node) return std::nullopt;
    v.fields.emplace(id, *node);
  }
  return v;
}

std::string field_tag(std::string_view id) { return std::string(vocab::kFieldTagPrefix) + std::string(id); }

}  // namespace

Vocabulary ensure_vocabulary(GraphStore& store, const Taxonomy& taxonomy) {
  auto v = resolve_vocabulary(
      taxonomy,
      [&](std::string_view label) -> std::optional<NodeId> {
        if (auto id = find_predicate(store, label)) return id;
        return store.create_node(NodeKind::Predicate, label);
      },
      [&]() -> std::optional<NodeId> {
        if (auto id = find_tagged_resource(store, vocab::kContributionClass, vocab::kClassClass)) return id;
        return store.create_node(NodeKind::Resource, vocab::kContributionClass,
                                 {std::string(vocab::kClassClass)});
      },
      [&](const ResearchField& f) -> std::optional<NodeId> {
        if (auto id = find_tagged_resource(store, "", field_tag(f.id))) return id;
        return store.create_node(NodeKind::Resource, f.label,
                                 {std::string(vocab::kResearchFieldClass), field_tag(f.id)});
      });
  return *v;
}

std::optional<Vocabulary> find_vocabulary(const GraphStore& store, const Taxonomy& taxonomy) {
  return resolve_vocabulary(
      taxonomy, [&](std::string_view label) { return find_predicate(store, label); },
      [&]() { return find_tagged_resource(store, vocab::kContributionClass, vocab::kClassClass); },
      [&](const ResearchField& f) { return find_tagged_resource(store, "", field_tag(f.id)); });
}

// ---------------------------------------------------------------------------
// Validation

void ValidationReport::add(Severity severity, std::string message, std::string path) {
  if (severity == Severity::Error) status = Status::Invalid;
  issues.push_back(Issue{severity, std::move(message), std::move(path)});
}

std::size_t ValidationReport::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(),
                                                [&](const Issue& i) { return i.severity == severity; }));
}

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error(ErrorCode::ValidationFailed,
            report.issues.empty() ? std::string("validation failed")
                                  : "validation failed: " +
                                        std::find_if(report.issues.begin(), report.issues.end(),
                                                     [](const Issue& i) { return i.severity == Severity::Error; })
                                            ->message),
      report_(std::move(report)) {}

namespace {

void check_ref(ValidationReport& report, const NodeRef& ref, const std::string& path, bool allow_literal) {
  switch (ref.kind) {
    case NodeRef::Kind::Existing:
      if (!NodeId::parse(ref.value)) report.add(Severity::Error, "invalid node id '" + ref.value + "'", path);
      break;
    case NodeRef::Kind::NewLiteral:
      if (!allow_literal) report.add(Severity::Error, "a literal is not allowed here", path);
      [[fallthrough]];
    case NodeRef::Kind::NewResource:
      if (is_blank(ref.value)) report.add(Severity::Error, "label is empty", path);
      else if (!text::is_valid_utf8(ref.value)) report.add(Severity::Error, "label is not valid UTF-8", path);
      break;
  }
}

bool is_approach_group(const PropertyGroup& group) {
  return group.predicate.kind == NodeRef::Kind::NewResource &&
         text::fold(text::trim(group.predicate.value)) == vocab::kApproach;
}

void merge(ValidationReport& into, ValidationReport from) {
  for (auto& issue : from.issues) into.add(issue.severity, std::move(issue.message), std::move(issue.path));
}

}  // namespace

ValidationReport validate_contribution(const ContributionDraft& draft, std::string_view path) {
  ValidationReport report;
  const std::string base(path);
  if (!draft.problem) {
    report.add(Severity::Error, "research problem required", base + "problem");
  } else {
    check_ref(report, *draft.problem, base + "problem", false);
  }
  if (draft.method) check_ref(report, *draft.method, base + "method", false);

  if (draft.results.empty()) {
    report.add(Severity::Error, "at least one ResearchResult required", base + "results");
  }
  for (std::size_t i = 0; i < draft.results.size(); ++i) {
    const auto& group = draft.results[i];
    const auto group_path = index_path(base, "results", i);
    check_ref(report, group.predicate, group_path + ".predicate", false);
    if (group.values.empty()) {
      report.add(Severity::Error, "property group needs at least one value", group_path + ".values");
    }
    for (std::size_t k = 0; k < group.values.size(); ++k) {
      const auto& value = group.values[k];
      check_ref(report, value, index_path(group_path, ".values", k), true);
      if (value.kind == NodeRef::Kind::Existing &&
          std::find(group.values.begin(), group.values.begin() + static_cast<std::ptrdiff_t>(k), value) !=
              group.values.begin() + static_cast<std::ptrdiff_t>(k)) {
        report.add(Severity::Error, "duplicate value " + value.value, index_path(group_path, ".values", k));
      }
    }
  }
  if (!draft.method && std::none_of(draft.results.begin(), draft.results.end(), is_approach_group)) {
    report.add(Severity::Warning, "no research method given", base + "method");
  }
  return report;
}

ValidationReport validate_metadata(const BibliographicMetadata& m) {
  ValidationReport report;
  if (is_blank(m.title)) report.add(Severity::Error, "title required", "metadata.title");
  if (m.publication_year && (*m.publication_year < 1600 || *m.publication_year > 2100)) {
    report.add(Severity::Error, "publication_year must be within [1600, 2100]", "metadata.publication_year");
  }
  if (m.doi && is_blank(*m.doi)) report.add(Severity::Error, "doi is empty", "metadata.doi");
  if (m.venue && is_blank(*m.venue)) report.add(Severity::Error, "venue is empty", "metadata.venue");
  for (std::size_t i = 0; i < m.authors.size(); ++i) {
    if (is_blank(m.authors[i])) report.add(Severity::Error, "author name is empty", index_path("metadata.", "authors", i));
  }
  for (const std::string* s : {&m.title}) {
    if (!text::is_valid_utf8(*s)) report.add(Severity::Error, "title is not valid UTF-8", "metadata.title");
  }
  return report;
}

ValidationReport validate_submission(const PaperSubmission& submission) {
  ValidationReport report = validate_metadata(submission.metadata);
  if (is_blank(submission.submitted_by)) {
    report.add(Severity::Error, "submitted_by required", "submitted_by");
  }
  if (submission.contributions.empty()) {
    report.add(Severity::Error, "at least one contribution required", "contributions");
  }
  for (std::size_t i = 0; i < submission.contributions.size(); ++i) {
    merge(report, validate_contribution(submission.contributions[i], index_path("", "contributions", i) + "."));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Ingest

bool has_class(const GraphStore& store, NodeId id, std::string_view cls) {
  const auto* node = store.find_node(id);
  return node && node->classes.count(std::string(cls)) != 0;
}

namespace {

NodeId existing_ref(const GraphStore& store, const NodeRef& ref, std::string_view role,
                    std::initializer_list<NodeKind> allowed) {
  auto id = NodeId::parse(ref.value);
  if (!id || !store.find_node(*id)) {
    throw Error(ErrorCode::UnknownNodeReference, std::string(role) + " references unknown node '" + ref.value + "'");
  }
  if (std::find(allowed.begin(), allowed.end(), id->kind) == allowed.end()) {
    throw Error(ErrorCode::UnknownNodeReference,
                std::string(role) + " reference " + ref.value + " has the wrong node kind");
  }
  return *id;
}

class Ingest {
 public:
  Ingest(GraphStore& store, const Vocabulary& vocab, std::string curator)
      : store_(store), vocab_(vocab), curator_(std::move(curator)) {}

  void check_refs(const PaperSubmission& submission) const {
    for (const auto& c : submission.contributions) {
      if (c.problem && c.problem->kind == NodeRef::Kind::Existing) {
        existing_ref(store_, *c.problem, "problem", {NodeKind::Resource});
      }
      if (c.method && c.method->kind == NodeRef::Kind::Existing) {
        existing_ref(store_, *c.method, "method", {NodeKind::Resource});
      }
      for (const auto& g : c.results) {
        if (g.predicate.kind == NodeRef::Kind::Existing) {
          existing_ref(store_, g.predicate, "predicate", {NodeKind::Predicate});
        }
        for (const auto& v : g.values) {
          if (v.kind == NodeRef::Kind::Existing) {
            existing_ref(store_, v, "value", {NodeKind::Resource, NodeKind::Literal});
          }
        }
      }
    }
  }

  NodeId paper(const PaperSubmission& s, NodeId field) {
    const auto& m = s.metadata;
    const NodeId paper =
        store_.create_node(NodeKind::Resource, m.title, {std::string(vocab::kPaperClass)});
    literal(paper, vocab_.has_title, m.title);
    if (m.doi) literal(paper, vocab_.has_doi, *m.doi);
    for (const auto& author : m.authors) literal(paper, vocab_.has_author, author);
    if (m.publication_year) literal(paper, vocab_.has_publication_year, std::to_string(*m.publication_year));
    if (m.venue) literal(paper, vocab_.has_venue, *m.venue);
    link(paper, vocab_.has_research_field, field);
    for (std::size_t i = 0; i < s.contributions.size(); ++i) contribution(paper, s.contributions[i], i);
    return paper;
  }

 private:
  void literal(NodeId subject, NodeId predicate, const std::string& value) {
    link(subject, predicate, store_.create_node(NodeKind::Literal, value));
  }

  void link(NodeId subject, NodeId predicate, NodeId object) {
    store_.add_statement(subject, predicate, object, curator_);
  }

  NodeId resolve(const NodeRef& ref, std::string_view cls) {
    switch (ref.kind) {
      case NodeRef::Kind::Existing: return *NodeId::parse(ref.value);
      case NodeRef::Kind::NewLiteral: return store_.create_node(NodeKind::Literal, ref.value);
      case NodeRef::Kind::NewResource: break;
    }
    std::set<std::string> classes;
    if (!cls.empty()) classes.insert(std::string(cls));
    return store_.create_node(NodeKind::Resource, ref.value, std::move(classes));
  }

  NodeId resolve_predicate(const NodeRef& ref) {
    if (ref.kind == NodeRef::Kind::Existing) return *NodeId::parse(ref.value);
    const auto label = text::trim(ref.value);
    if (auto id = find_predicate(store_, label)) return *id;
    return store_.create_node(NodeKind::Predicate, label);
  }

  void contribution(NodeId paper, const ContributionDraft& draft, std::size_t index) {
    const std::string name =
        is_blank(draft.name) ? "Contribution " + std::to_string(index + 1) : std::string(text::trim(draft.name));
    const NodeId c = store_.create_node(NodeKind::Resource, name, {std::string(vocab::kContributionClass)});
    link(paper, vocab_.has_contribution, c);
    link(c, vocab_.instance_of, vocab_.contribution_class);
    link(c, vocab_.addresses, resolve(*draft.problem, vocab::kProblemClass));
    if (draft.method) link(c, vocab_.utilizes_method, resolve(*draft.method, vocab::kMethodClass));
    for (const auto& group : draft.results) {
      const NodeId predicate = resolve_predicate(group.predicate);
      for (const auto& value : group.values) link(c, predicate, resolve(value, ""));
    }
  }

  GraphStore& store_;
  const Vocabulary& vocab_;
  std::string curator_;
};

}  // namespace

NodeId ingest_paper(GraphStore& store, const Vocabulary& vocab, const Taxonomy& taxonomy,
                    const PaperSubmission& submission) {
  auto report = validate_submission(submission);
  if (!report.valid()) throw ValidationFailed(std::move(report));
  taxonomy.field(submission.research_field);  // throws UnknownField
  auto field = vocab.fields.find(submission.research_field);
  if (field == vocab.fields.end()) {
    throw Error(ErrorCode::UnknownField, "research field " + submission.research_field + " is not seeded");
  }

  Ingest ingest(store, vocab, std::string(text::trim(submission.submitted_by)));
  ingest.check_refs(submission);

  const bool owns_journal = !store.journaling();
  if (owns_journal) store.begin_journal();
  try {
    const NodeId paper = ingest.paper(submission, field->second);
    if (owns_journal) store.end_journal();
    return paper;
  } catch (...) {
    if (owns_journal) store.rollback(store.end_journal());
    throw;
  }
}

// ---------------------------------------------------------------------------
// Views

namespace {

ValueView value_view(const GraphStore& store, NodeId id) { return ValueView{id, store.node(id).label}; }

std::optional<std::string> first_literal(const GraphStore& store, NodeId subject, NodeId predicate) {
  auto ids = store.match(StatementFilter{subject, predicate, std::nullopt});
  if (ids.empty()) return std::nullopt;
  return store.node(store.statement(ids.front()).object).label;
}

ContributionView contribution_view(const GraphStore& store, const Vocabulary& vocab, NodeId c) {
  ContributionView view;
  view.id = c;
  view.name = store.node(c).label;
  std::map<NodeId, std::size_t> slot;
  for (StatementId sid : store.outgoing(c)) {
    const auto& s = store.statement(sid);
    if (s.predicate == vocab.instance_of) continue;
    if (s.predicate == vocab.addresses && !view.problem) {
      view.problem = value_view(store, s.object);
      continue;
    }
    if (s.predicate == vocab.utilizes_method && !view.method) {
      view.method = value_view(store, s.object);
      continue;
    }
    auto [it, inserted] = slot.emplace(s.predicate, view.properties.size());
    if (inserted) view.properties.push_back(PropertyView{s.predicate, store.node(s.predicate).label, {}});
    view.properties[it->second].values.push_back(value_view(store, s.object));
  }
  return view;
}

}  // namespace

std::optional<std::string> title_of(const GraphStore& store, const Vocabulary& vocab, NodeId paper) {
  return first_literal(store, paper, vocab.has_title);
}

PaperView get_paper(const GraphStore& store, const Vocabulary& vocab, NodeId paper) {
  const auto& node = store.node(paper);  // throws UnknownNode
  if (paper.kind != NodeKind::Resource || !node.classes.count(std::string(vocab::kPaperClass))) {
    throw Error(ErrorCode::NotAPaper, paper.str() + " is not a paper");
  }
  PaperView view;
  view.id = paper;
  auto& m = view.metadata;
  m.title = first_literal(store, paper, vocab.has_title).value_or(node.label);
  m.doi = first_literal(store, paper, vocab.has_doi);
  m.venue = first_literal(store, paper, vocab.has_venue);
  if (auto year = first_literal(store, paper, vocab.has_publication_year)) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(year->data(), year->data() + year->size(), value);
    if (ec == std::errc{} && ptr == year->data() + year->size()) m.publication_year = value;
  }
  for (StatementId sid : store.match(StatementFilter{paper, vocab.has_author, std::nullopt})) {
    m.authors.push_back(store.node(store.statement(sid).object).label);
  }
  for (StatementId sid : store.match(StatementFilter{paper, vocab.has_research_field, std::nullopt})) {
    if (auto field = vocab.field_of(store.statement(sid).object)) {
      view.research_field = *field;
      break;
    }
  }
  for (StatementId sid : store.match(StatementFilter{paper, vocab.has_contribution, std::nullopt})) {
    view.contributions.push_back(contribution_view(store, vocab, store.statement(sid).object));
  }
  return view;
}

std::vector<NodeId> list_papers_by_field(const GraphStore& store, const Vocabulary& vocab,
                                         const Taxonomy& taxonomy, std::string_view field,
                                         bool include_descendants) {
  std::vector<std::string> fields =
      include_descendants ? taxonomy.with_descendants(field) : std::vector<std::string>{taxonomy.field(field).id};
  std::set<NodeId> papers;
  for (const auto& f : fields) {
    auto node = vocab.fields.find(f);
    if (node == vocab.fields.end()) continue;
    for (StatementId sid : store.match(StatementFilter{std::nullopt, vocab.has_research_field, node->second})) {
      const NodeId subject = store.statement(sid).subject;
      if (has_class(store, subject, vocab::kPaperClass)) papers.insert(subject);
    }
  }
  return {papers.begin(), papers.end()};
}

std::optional<NodeId> paper_of(const GraphStore& store, const Vocabulary& vocab, NodeId contribution) {
  auto ids = store.match(StatementFilter{std::nullopt, vocab.has_contribution, contribution});
  if (ids.empty()) return std::nullopt;
  return store.statement(ids.front()).subject;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string required_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) bad_request(where + "." + key + " must be a string");
  return j[key].get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) bad_request(where + "." + key + " must be a string");
  return j[key].get<std::string>();
}

ContributionDraft draft_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) bad_request(where + " must be an object");
  ContributionDraft d;
  d.name = optional_string(j, "name", where).value_or("");
  if (j.contains("problem") && !j["problem"].is_null()) d.problem = node_ref_from_json(j["problem"]);
  if (j.contains("method") && !j["method"].is_null()) d.method = node_ref_from_json(j["method"]);
  if (j.contains("results")) {
    if (!j["results"].is_array()) bad_request(where + ".results must be an array");
    for (const auto& g : j["results"]) {
      if (!g.is_object() || !g.contains("predicate")) bad_request(where + ".results entries need a predicate");
      PropertyGroup group;
      group.predicate = node_ref_from_json(g["predicate"]);
      if (g.contains("values")) {
        if (!g["values"].is_array()) bad_request(where + ".results[].values must be an array");
        for (const auto& v : g["values"]) group.values.push_back(node_ref_from_json(v));
      }
      d.results.push_back(std::move(group));
    }
  }
  return d;
}

}  // namespace

NodeRef node_ref_from_json(const json& j) {
  if (j.is_string()) return NodeRef::resource(j.get<std::string>());
  if (j.is_object() && j.size() == 1) {
    const auto& [key, value] = *j.items().begin();
    if (value.is_string()) {
      if (key == "id") return NodeRef{NodeRef::Kind::Existing, value.get<std::string>()};
      if (key == "label") return NodeRef::resource(value.get<std::string>());
      if (key == "literal") return NodeRef::literal(value.get<std::string>());
    }
  }
  bad_request("node reference must be a string or one of {\"id\"}, {\"label\"}, {\"literal\"}");
}

BibliographicMetadata metadata_from_json(const json& j) {
  if (!j.is_object()) bad_request("metadata must be an object");
  BibliographicMetadata m;
  m.title = required_string(j, "title", "metadata");
  m.doi = optional_string(j, "doi", "metadata");
  m.venue = optional_string(j, "venue", "metadata");
  if (j.contains("authors") && !j["authors"].is_null()) {
    if (!j["authors"].is_array()) bad_request("metadata.authors must be an array");
    for (const auto& a : j["authors"]) {
      if (!a.is_string()) bad_request("metadata.authors entries must be strings");
      m.authors.push_back(a.get<std::string>());
    }
  }
  if (j.contains("publication_year") && !j["publication_year"].is_null()) {
    if (!j["publication_year"].is_number_integer()) bad_request("metadata.publication_year must be an integer");
    const auto year = j["publication_year"].get<long long>();
    if (year < -100000 || year > 100000) bad_request("metadata.publication_year out of range");
    m.publication_year = static_cast<int>(year);
  }
  return m;
}

PaperSubmission submission_from_json(const json& j) {
  if (!j.is_object()) bad_request("submission must be a JSON object");
  PaperSubmission s;
  if (!j.contains("metadata")) bad_request("submission.metadata is required");
  s.metadata = metadata_from_json(j["metadata"]);
  s.research_field = required_string(j, "research_field", "submission");
  s.submitted_by = optional_string(j, "submitted_by", "submission").value_or("");
  if (!j.contains("contributions") || !j["contributions"].is_array()) {
    bad_request("submission.contributions must be an array");
  }
  for (std::size_t i = 0; i < j["contributions"].size(); ++i) {
    s.contributions.push_back(draft_from_json(j["contributions"][i], index_path("", "contributions", i)));
  }
  return s;
}

json to_json(const BibliographicMetadata& m) {
  json j{{"title", m.title}, {"doi", nullptr}, {"authors", m.authors}, {"publication_year", nullptr}, {"venue", nullptr}};
  if (m.doi) j["doi"] = *m.doi;
  if (m.publication_year) j["publication_year"] = *m.publication_year;
  if (m.venue) j["venue"] = *m.venue;
  return j;
}

json to_json(const NodeRef& r) {
  switch (r.kind) {
    case NodeRef::Kind::Existing: return json{{"id", r.value}};
    case NodeRef::Kind::NewLiteral: return json{{"literal", r.value}};
    case NodeRef::Kind::NewResource: break;
  }
  return json{{"label", r.value}};
}

json to_json(const PaperSubmission& s) {
  json contributions = json::array();
  for (const auto& c : s.contributions) {
    json results = json::array();
    for (const auto& g : c.results) {
      json values = json::array();
      for (const auto& v : g.values) values.push_back(to_json(v));
      results.push_back(json{{"predicate", to_json(g.predicate)}, {"values", values}});
    }
    json d{{"name", c.name}, {"problem", nullptr}, {"method", nullptr}, {"results", results}};
    if (c.problem) d["problem"] = to_json(*c.problem);
    if (c.method) d["method"] = to_json(*c.method);
    contributions.push_back(std::move(d));
  }
  return json{{"metadata", to_json(s.metadata)},
              {"research_field", s.research_field},
              {"contributions", contributions},
              {"submitted_by", s.submitted_by}};
}

json to_json(const ValidationReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues) {
    issues.push_back(json{{"severity", i.severity == Severity::Error ? "error" : "warning"},
                          {"message", i.message},
                          {"path", i.path}});
  }
  return json{{"status", r.valid() ? "Valid" : "Invalid"}, {"issues", issues}};
}

json to_json(const PaperView& v) {
  auto value = [](const ValueView& x) { return json{{"id", x.id.str()}, {"label", x.label}}; };
  json contributions = json::array();
  for (const auto& c : v.contributions) {
    json properties = json::array();
    for (const auto& p : c.properties) {
      json values = json::array();
      for (const auto& x : p.values) values.push_back(value(x));
      properties.push_back(json{{"predicate", p.predicate.str()}, {"label", p.label}, {"values", values}});
    }
    json cj{{"id", c.id.str()}, {"name", c.name}, {"problem", nullptr}, {"method", nullptr}, {"properties", properties}};
    if (c.problem) cj["problem"] = value(*c.problem);
    if (c.method) cj["method"] = value(*c.method);
    contributions.push_back(std::move(cj));
  }
  return json{{"id", v.id.str()},
              {"metadata", to_json(v.metadata)},
              {"research_field", v.research_field},
              {"contributions", contributions}};
}

}  // namespace orkg::contrib
