// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// DOI lookup against a Crossref-compatible works API, or against a directory
// of stored responses (fixture mode, no network).

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>

#include "orkg/contribution.hpp"

namespace orkg::metadata {

// Normalized DOI: lowercase "10.{registrant}/{suffix}".
class Doi {
 public:
  const std::string& str() const { return value_; }
  bool operator==(const Doi&) const = default;

 private:
  friend Doi normalize_doi(std::string_view raw);
  explicit Doi(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

// Strips "https://doi.org/", "http://dx.doi.org/" (and the http/https and
// dx variants) or "doi:", trims and lowercases. Throws InvalidDoi.
Doi normalize_doi(std::string_view raw);

// Maps the "message" body of a works response (the full envelope is
// unwrapped too). Throws MissingTitle or MalformedDocument.
contrib::BibliographicMetadata parse_crossref_record(std::string_view document);

struct MetadataSource {
  enum class Mode { Live, Fixture };

  Mode mode = Mode::Live;
  std::string base_url = "https://api.crossref.org";
  std::filesystem::path fixture_dir;
  std::chrono::milliseconds timeout{10000};

  static MetadataSource live(std::string base_url, std::chrono::milliseconds timeout = std::chrono::seconds(10));
  static MetadataSource fixture(std::filesystem::path dir);
};

// "{doi with '/' replaced by '_'}.json"
std::string fixture_filename(const Doi& doi);

// Live: GET {base}/works/{doi}, one retry on timeout. Fixture: reads the
// stored response. Throws NotFound, Timeout, UpstreamError or
// MalformedDocument.
contrib::BibliographicMetadata fetch_metadata(const Doi& doi, const MetadataSource& source);

}  // namespace orkg::metadata
