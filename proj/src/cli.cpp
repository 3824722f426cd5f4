// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>
#include <signal.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "orkg/error.hpp"
#include "orkg/service/api_json.hpp"
#include "orkg/service/backend.hpp"
#include "orkg/service/server.hpp"

namespace orkg::cli {

namespace {

using nlohmann::json;
using service::Backend;
using service::BackendOptions;

struct Options {
  std::string data_dir;
  std::string url;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string fixture_dir;
  std::string crossref_url = "https://api.crossref.org";
  std::string cors_origin;
  std::string curator_token;
  std::size_t similarity_depth = 2;
  // import / export
  std::string in;
  std::string out;
  bool merge = false;
  // add-paper
  std::string file;
  std::string curator;
  // compare / similar
  std::vector<std::string> ids;
  std::string id;
  bool csv = false;
  std::optional<double> min_coverage;
  std::size_t depth = 1;
  std::size_t k = 5;
};

// A remote call failed with an HTTP error body.
struct RemoteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

BackendOptions embedded(const Options& o, bool seed) {
  BackendOptions b;
  b.data_dir = o.data_dir;
  b.seed_vocabulary = seed;
  return b;
}

graph::NodeId node_id(const std::string& s) {
  auto id = graph::NodeId::parse(s);
  if (!id) throw Error(ErrorCode::BadRequest, "'" + s + "' is not a node id");
  return *id;
}

std::string remote(const std::string& url, const std::string& method, const std::string& path,
                   const std::string& body = {}, const std::string& curator = {}) {
  httplib::Client client(url);
  client.set_connection_timeout(std::chrono::seconds(5));
  client.set_read_timeout(std::chrono::seconds(60));
  httplib::Headers headers;
  if (!curator.empty()) headers.emplace("X-Curator", curator);
  httplib::Result r = method == "POST" ? client.Post(path, headers, body, "application/json")
                                       : client.Get(path, headers);
  if (!r) throw RemoteError("request to " + url + " failed: " + httplib::to_string(r.error()));
  if (r->status >= 300) {
    std::string message = r->body;
    try {
      const auto j = json::parse(r->body);
      message = j.at("error").get<std::string>() + ": " + j.at("message").get<std::string>();
    } catch (const json::exception&) {
    }
    throw RemoteError("HTTP " + std::to_string(r->status) + " " + message);
  }
  return r->body;
}

std::string comparison_query(const Options& o) {
  std::string q = "/api/comparison?contributions=";
  for (std::size_t i = 0; i < o.ids.size(); ++i) q += (i ? "," : "") + httplib::detail::encode_query_param(o.ids[i]);
  if (o.min_coverage) {
    std::ostringstream c;
    c.precision(17);
    c << *o.min_coverage;
    q += "&min_coverage=" + c.str();
  }
  q += "&depth=" + std::to_string(o.depth);
  q += o.csv ? "&format=csv" : "&format=json";
  return q;
}

int serve(const Options& o, std::ostream& out) {
  service::ServiceConfig config;
  config.host = o.host;
  config.port = o.port;
  config.data_dir = o.data_dir;
  config.metadata = o.fixture_dir.empty() ? metadata::MetadataSource::live(o.crossref_url)
                                          : metadata::MetadataSource::fixture(o.fixture_dir);
  config.similarity_depth = o.similarity_depth;
  config.cors_origin = o.cors_origin;
  if (!o.curator_token.empty()) config.curator_token = o.curator_token;

  // Block the stop signals before any worker thread exists; this thread
  // collects them with sigwait.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  service::Service service(config);
  const int port = service.start();
  out << "listening on " << config.host << ":" << port << std::endl;
  int sig = 0;
  sigwait(&stop_signals, &sig);
  service.stop();
  return kOk;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "serve") return serve(o, out);

  if (command == "export") {
    Backend backend(embedded(o, false));
    if (o.out == "-") {
      backend.export_dump(out);
      return kOk;
    }
    const std::string tmp = o.out + ".tmp";
    {
      std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorCode::SinkFailure, "cannot write " + o.out);
      backend.export_dump(file);
      file.flush();
      if (!file) throw Error(ErrorCode::SinkFailure, "cannot write " + o.out);
    }
    std::filesystem::rename(tmp, o.out);
    return kOk;
  }

  if (command == "import") {
    Backend backend(embedded(o, false));
    std::ifstream in(o.in, std::ios::binary);
    if (!in) throw Error(ErrorCode::NotFound, "cannot read " + o.in);
    const auto n = backend.import_dump(in, o.merge ? graph::ImportMode::Merge : graph::ImportMode::EmptyOnly);
    backend.compact();
    out << "imported " << n << " records" << std::endl;
    return kOk;
  }

  if (command == "add-paper") {
    const std::string body = read_file(o.file);
    auto submission = contrib::submission_from_json(json::parse(body));
    std::string who = o.curator.empty() ? submission.submitted_by : o.curator;
    if (who.empty()) who = "cli";
    if (!o.url.empty()) {
      out << remote(o.url, "POST", "/api/papers", body, who);
      return kOk;
    }
    Backend backend(embedded(o, true));
    submission.submitted_by = who;
    out << contrib::to_json(backend.ingest_paper(submission)).dump();
    return kOk;
  }

  if (command == "compare") {
    if (!o.url.empty()) {
      out << remote(o.url, "GET", comparison_query(o));
      return kOk;
    }
    Backend backend(embedded(o, false));
    std::vector<graph::NodeId> ids;
    for (const auto& s : o.ids) ids.push_back(node_id(s));
    comparison::ComparisonOptions options;
    options.min_coverage = o.min_coverage;
    options.depth = o.depth;
    const auto table = backend.compare(ids, options);
    out << (o.csv ? comparison::render_csv(table) : comparison::to_json(table).dump());
    return kOk;
  }

  if (command == "similar") {
    if (!o.url.empty()) {
      out << remote(o.url, "GET",
                    "/api/contributions/" + httplib::detail::encode_query_param(o.id) + "/similar?k=" +
                        std::to_string(o.k));
      return kOk;
    }
    Backend backend(embedded(o, false));
    const auto id = node_id(o.id);
    out << service::api::similar(backend, id, backend.similar(id, o.k)).dump();
    return kOk;
  }
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"orkg-lite: scholarly knowledge graph service", "orkg"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--data-dir", o.data_dir, "Data directory")->required();
  serve->add_option("--port", o.port, "Listen port (0 picks a free one)")->capture_default_str();
  serve->add_option("--host", o.host, "Listen address")->capture_default_str();
  serve->add_option("--fixture-dir", o.fixture_dir, "Serve DOI metadata from stored Crossref responses");
  serve->add_option("--crossref-url", o.crossref_url, "Crossref API base URL")->capture_default_str();
  serve->add_option("--cors-origin", o.cors_origin, "Allowed CORS origin");
  serve->add_option("--curator-token", o.curator_token, "Accept only this X-Curator value");
  serve->add_option("--similarity-depth", o.similarity_depth, "Feature depth")->check(CLI::Range(1, 8));

  auto* exp = app.add_subcommand("export", "Write the store as a dump file");
  exp->add_option("--data-dir", o.data_dir)->required();
  exp->add_option("--out", o.out, "Dump file ('-' for stdout)")->required();

  auto* imp = app.add_subcommand("import", "Load a dump file");
  imp->add_option("--data-dir", o.data_dir)->required();
  imp->add_option("--in", o.in, "Dump file")->required();
  imp->add_flag("--merge", o.merge, "Allow a non-empty store");

  auto* add = app.add_subcommand("add-paper", "Ingest a paper submission");
  add->add_option("--file", o.file, "Submission JSON")->required();
  auto* add_dir = add->add_option("--data-dir", o.data_dir);
  auto* add_url = add->add_option("--url", o.url, "Service base URL");
  add_dir->excludes(add_url);
  add->add_option("--curator", o.curator, "Curator recorded as created_by");

  auto* cmp = app.add_subcommand("compare", "Compare contributions");
  cmp->add_option("ids", o.ids, "Contribution ids")->required()->expected(2, -1);
  auto* cmp_dir = cmp->add_option("--data-dir", o.data_dir);
  auto* cmp_url = cmp->add_option("--url", o.url);
  cmp_dir->excludes(cmp_url);
  cmp->add_flag("--csv", o.csv, "CSV instead of JSON");
  cmp->add_option("--min-coverage", o.min_coverage, "Row coverage fraction in (0, 1]");
  cmp->add_option("--depth", o.depth, "Property path depth")->check(CLI::Range(1, 8));

  auto* sim = app.add_subcommand("similar", "Rank similar contributions");
  sim->add_option("id", o.id, "Contribution id")->required();
  auto* sim_dir = sim->add_option("--data-dir", o.data_dir);
  auto* sim_url = sim->add_option("--url", o.url);
  sim_dir->excludes(sim_url);
  sim->add_option("--k", o.k, "Number of results")->check(CLI::Range(1, 1000));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();  // program name
  try {
    app.parse(argv);
    for (auto* sub : {add, cmp, sim}) {
      if (sub->parsed() && o.data_dir.empty() && o.url.empty()) {
        throw CLI::RequiredError(sub->get_name() + " needs --data-dir or --url");
      }
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsage;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o, out);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
  } catch (const RemoteError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: BadRequest: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kFailure;
}

}  // namespace orkg::cli
