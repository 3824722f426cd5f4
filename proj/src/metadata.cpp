// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/metadata.hpp"

#include <httplib.h>

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "orkg/error.hpp"
#include "orkg/text.hpp"

namespace orkg::metadata {

using contrib::BibliographicMetadata;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 7> kPrefixes = {
    "https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/",
    "doi.org/",         "dx.doi.org/",     "doi:",
};

bool valid_doi(std::string_view d) {
  if (d.substr(0, 3) != "10.") return false;
  std::size_t i = 3;
  while (i < d.size() && std::isdigit(static_cast<unsigned char>(d[i]))) ++i;
  if (i - 3 < 4 || i >= d.size() || d[i] != '/') return false;
  const auto suffix = d.substr(i + 1);
  if (suffix.empty()) return false;
  for (char c : suffix) {
    if (std::isspace(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) < 0x20) return false;
  }
  return true;
}

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedDocument, why); }

std::string percent_encode_path(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~' || c == '/' || c == ':' || c == ';' ||
        c == '(' || c == ')') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "no fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::BadRequest, "base URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

std::string fetch_live(const Doi& doi, const MetadataSource& source) {
  const auto url = split_url(source.base_url);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(source.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(source.timeout - seconds);
  const std::string path = url.path + "/works/" + percent_encode_path(doi.str());

  for (int attempt = 0;; ++attempt) {
    httplib::Client client(url.origin);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    client.set_follow_location(true);
    const auto started = std::chrono::steady_clock::now();
    auto result = client.Get(path, httplib::Headers{{"Accept", "application/json"}});
    if (!result) {
      const auto elapsed = std::chrono::steady_clock::now() - started;
      const auto err = result.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read && elapsed >= source.timeout * 9 / 10);
      if (timed_out) {
        if (attempt == 0) continue;
        throw Error(ErrorCode::Timeout, "metadata lookup for " + doi.str() + " timed out");
      }
      throw Error(ErrorCode::UpstreamError, "metadata lookup failed: " + httplib::to_string(err));
    }
    const int status = result->status;
    if (status == 404) throw Error(ErrorCode::NotFound, "DOI " + doi.str() + " not found upstream");
    if (status >= 500) throw Error(ErrorCode::UpstreamError, "upstream answered " + std::to_string(status));
    if (status != 200) throw Error(ErrorCode::UpstreamError, "unexpected upstream status " + std::to_string(status));
    return result->body;
  }
}

}  // namespace

Doi normalize_doi(std::string_view raw) {
  std::string_view s = text::trim(raw);
  const std::string folded = text::fold(s);
  for (auto prefix : kPrefixes) {
    if (std::string_view(folded).substr(0, prefix.size()) == prefix) {
      s.remove_prefix(prefix.size());
      break;
    }
  }
  std::string normalized = text::fold(text::trim(s));
  if (!valid_doi(normalized)) throw Error(ErrorCode::InvalidDoi, "not a DOI: '" + std::string(raw) + "'");
  return Doi(std::move(normalized));
}

BibliographicMetadata parse_crossref_record(std::string_view document) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) malformed("works record is not a JSON object");
  if (auto message = doc.find("message"); message != doc.end()) {
    if (!message->is_object()) malformed("\"message\" is not an object");
    doc = *message;
  }

  BibliographicMetadata m;
  auto title = doc.find("title");
  if (title != doc.end() && !title->is_array() && !title->is_null()) malformed("\"title\" is not an array");
  if (title == doc.end() || title->is_null() || title->empty() || !(*title)[0].is_string() ||
      text::trim((*title)[0].get_ref<const std::string&>()).empty()) {
    throw Error(ErrorCode::MissingTitle, "works record has no title");
  }
  m.title = (*title)[0].get<std::string>();

  if (auto authors = doc.find("author"); authors != doc.end() && !authors->is_null()) {
    if (!authors->is_array()) malformed("\"author\" is not an array");
    for (const auto& a : *authors) {
      if (!a.is_object()) malformed("author entry is not an object");
      auto part = [&](const char* key) -> std::string {
        auto it = a.find(key);
        if (it == a.end() || it->is_null()) return {};
        if (!it->is_string()) malformed(std::string("author.") + key + " is not a string");
        return std::string(text::trim(it->get_ref<const std::string&>()));
      };
      const auto given = part("given"), family = part("family");
      std::string name = given.empty() ? family : family.empty() ? given : given + " " + family;
      if (name.empty()) name = part("name");
      if (!name.empty()) m.authors.push_back(std::move(name));
    }
  }

  if (auto issued = doc.find("issued"); issued != doc.end() && issued->is_object()) {
    auto parts = issued->find("date-parts");
    if (parts != issued->end() && parts->is_array() && !parts->empty() && (*parts)[0].is_array() &&
        !(*parts)[0].empty() && (*parts)[0][0].is_number_integer()) {
      m.publication_year = (*parts)[0][0].get<int>();
    }
  }

  if (auto venue = doc.find("container-title"); venue != doc.end() && !venue->is_null()) {
    if (!venue->is_array()) malformed("\"container-title\" is not an array");
    if (!venue->empty() && (*venue)[0].is_string() && !text::trim((*venue)[0].get_ref<const std::string&>()).empty()) {
      m.venue = (*venue)[0].get<std::string>();
    }
  }

  if (auto doi = doc.find("DOI"); doi != doc.end() && doi->is_string()) {
    try {
      m.doi = normalize_doi(doi->get<std::string>()).str();
    } catch (const Error&) {
      malformed("\"DOI\" is not a valid DOI");
    }
  }
  return m;
}

MetadataSource MetadataSource::live(std::string base_url, std::chrono::milliseconds timeout) {
  MetadataSource s;
  s.mode = Mode::Live;
  s.base_url = std::move(base_url);
  s.timeout = timeout;
  return s;
}

MetadataSource MetadataSource::fixture(std::filesystem::path dir) {
  MetadataSource s;
  s.mode = Mode::Fixture;
  s.fixture_dir = std::move(dir);
  s.base_url.clear();
  return s;
}

std::string fixture_filename(const Doi& doi) {
  std::string name = doi.str();
  for (char& c : name) {
    if (c == '/') c = '_';
  }
  return name + ".json";
}

BibliographicMetadata fetch_metadata(const Doi& doi, const MetadataSource& source) {
  if (source.mode == MetadataSource::Mode::Fixture) {
    return parse_crossref_record(read_file(source.fixture_dir / fixture_filename(doi)));
  }
  return parse_crossref_record(fetch_live(doi, source));
}

}  // namespace orkg::metadata
