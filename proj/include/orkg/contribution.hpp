// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Research contributions and paper submissions, stored natively as graph
// statements.
//
// A submitted paper becomes a resource classed "Paper" with literal metadata
// statements, a link to its research field and one resource per contribution.
// Each contribution links the problem it addresses, optionally the method it
// utilizes, and one statement per result value.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orkg/error.hpp"
#include "orkg/graph_store.hpp"

namespace orkg::contrib {

using graph::GraphStore;
using graph::NodeId;

namespace vocab {
inline constexpr std::string_view kHasContribution = "has contribution";
inline constexpr std::string_view kAddresses = "addresses";
inline constexpr std::string_view kUtilizesMethod = "utilizes method";
inline constexpr std::string_view kHasResearchField = "has research field";
inline constexpr std::string_view kHasTitle = "has title";
inline constexpr std::string_view kHasDoi = "has DOI";
inline constexpr std::string_view kHasAuthor = "has author";
inline constexpr std::string_view kHasPublicationYear = "has publication year";
inline constexpr std::string_view kHasVenue = "has venue";
inline constexpr std::string_view kUtilizesProgrammingLanguage = "utilizes programming language";
inline constexpr std::string_view kEvaluatedOnDataset = "evaluated on dataset";
inline constexpr std::string_view kEvaluationMetric = "evaluation metric";
inline constexpr std::string_view kApproach = "approach";
inline constexpr std::string_view kInstanceOf = "instance of";

inline constexpr std::string_view kPaperClass = "Paper";
inline constexpr std::string_view kContributionClass = "Contribution";
inline constexpr std::string_view kProblemClass = "Problem";
inline constexpr std::string_view kMethodClass = "Method";
inline constexpr std::string_view kResearchFieldClass = "ResearchField";
inline constexpr std::string_view kClassClass = "Class";
inline constexpr std::string_view kFieldTagPrefix = "field:";
}  // namespace vocab

// ---------------------------------------------------------------------------
// Research field taxonomy

struct ResearchField {
  std::string id;
  std::string label;
  std::optional<std::string> parent;
  std::vector<std::string> children;
};

class Taxonomy {
 public:
  // Throws BadRequest when ids repeat or sibling labels collide.
  static Taxonomy from_json(const nlohmann::json& document);
  static Taxonomy parse(std::string_view text);
  // The taxonomy compiled into the binary from data/research_fields.json.
  static const Taxonomy& shipped();

  bool contains(std::string_view id) const { return fields_.count(std::string(id)) != 0; }
  const ResearchField& field(std::string_view id) const;  // throws UnknownField
  // The field itself followed by all of its descendants, depth-first.
  std::vector<std::string> with_descendants(std::string_view id) const;
  // Pre-order listing of every field.
  const std::vector<std::string>& ids() const { return order_; }
  nlohmann::json to_json() const;

 private:
  std::map<std::string, ResearchField> fields_;
  std::vector<std::string> order_;
  std::vector<std::string> roots_;
};

// ---------------------------------------------------------------------------
// Seed vocabulary

struct Vocabulary {
  NodeId has_contribution, addresses, utilizes_method, has_research_field;
  NodeId has_title, has_doi, has_author, has_publication_year, has_venue;
  NodeId utilizes_programming_language, evaluated_on_dataset, evaluation_metric, approach;
  NodeId instance_of;
  NodeId contribution_class;
  std::map<std::string, NodeId> fields;  // taxonomy id -> field resource

  std::optional<std::string> field_of(NodeId resource) const;
};

// Looks up the reserved predicates, the Contribution class resource and the
// field resources, creating whatever is missing. Idempotent.
Vocabulary ensure_vocabulary(GraphStore& store, const Taxonomy& taxonomy);
// Read-only variant; nullopt when anything is missing.
std::optional<Vocabulary> find_vocabulary(const GraphStore& store, const Taxonomy& taxonomy);

// ---------------------------------------------------------------------------
// Submission payloads

struct BibliographicMetadata {
  std::string title;
  std::optional<std::string> doi;
  std::vector<std::string> authors;
  std::optional<int> publication_year;
  std::optional<std::string> venue;

  bool operator==(const BibliographicMetadata&) const = default;
};

// A node reference as entered in the wizard: link an existing node by id, or
// create a new resource / literal from a label.
struct NodeRef {
  enum class Kind { Existing, NewResource, NewLiteral };
  Kind kind = Kind::NewResource;
  std::string value;

  static NodeRef existing(NodeId id) { return {Kind::Existing, id.str()}; }
  static NodeRef resource(std::string label) { return {Kind::NewResource, std::move(label)}; }
  static NodeRef literal(std::string label) { return {Kind::NewLiteral, std::move(label)}; }

  bool operator==(const NodeRef&) const = default;
};

struct PropertyGroup {
  NodeRef predicate;
  std::vector<NodeRef> values;
};

struct ContributionDraft {
  std::string name;
  std::optional<NodeRef> problem;
  std::optional<NodeRef> method;
  std::vector<PropertyGroup> results;
};

struct PaperSubmission {
  BibliographicMetadata metadata;
  std::string research_field;
  std::vector<ContributionDraft> contributions;
  std::string submitted_by;
};

enum class Severity { Error, Warning };

struct Issue {
  Severity severity;
  std::string message;
  std::string path;
};

struct ValidationReport {
  enum class Status { Valid, Invalid };
  Status status = Status::Valid;
  std::vector<Issue> issues;

  bool valid() const { return status == Status::Valid; }
  void add(Severity severity, std::string message, std::string path);
  std::size_t count(Severity severity) const;
};

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

ValidationReport validate_contribution(const ContributionDraft& draft, std::string_view path = "");
ValidationReport validate_metadata(const BibliographicMetadata& metadata);
// Metadata, curator and every contribution; prefixes issue paths.
ValidationReport validate_submission(const PaperSubmission& submission);

// ---------------------------------------------------------------------------
// Operations

// Writes the whole submission or nothing (the store is rolled back on error).
NodeId ingest_paper(GraphStore& store, const Vocabulary& vocab, const Taxonomy& taxonomy,
                    const PaperSubmission& submission);

struct ValueView {
  NodeId id;
  std::string label;
};

struct PropertyView {
  NodeId predicate;
  std::string label;
  std::vector<ValueView> values;
};

struct ContributionView {
  NodeId id;
  std::string name;
  std::optional<ValueView> problem;
  std::optional<ValueView> method;
  std::vector<PropertyView> properties;
};

struct PaperView {
  NodeId id;
  BibliographicMetadata metadata;
  std::string research_field;
  std::vector<ContributionView> contributions;
};

PaperView get_paper(const GraphStore& store, const Vocabulary& vocab, NodeId paper);

std::vector<NodeId> list_papers_by_field(const GraphStore& store, const Vocabulary& vocab,
                                         const Taxonomy& taxonomy, std::string_view field,
                                         bool include_descendants);

// The paper that owns a contribution (via "has contribution"), if any.
std::optional<NodeId> paper_of(const GraphStore& store, const Vocabulary& vocab,
                               NodeId contribution);
std::optional<std::string> title_of(const GraphStore& store, const Vocabulary& vocab, NodeId paper);

bool has_class(const GraphStore& store, NodeId id, std::string_view cls);

// Exact-label predicate lookup, lowest id first.
std::optional<NodeId> find_predicate(const GraphStore& store, std::string_view label);

// ---------------------------------------------------------------------------
// JSON shapes (field names as in the types above)

// Throws BadRequest on shape errors.
PaperSubmission submission_from_json(const nlohmann::json& j);
BibliographicMetadata metadata_from_json(const nlohmann::json& j);
NodeRef node_ref_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BibliographicMetadata& m);
nlohmann::json to_json(const NodeRef& r);
nlohmann::json to_json(const PaperSubmission& s);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const PaperView& v);

}  // namespace orkg::contrib
