// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/service/server.hpp"

#include <httplib.h>

#include <charconv>
#include <sstream>

#include "orkg/service/api_json.hpp"
#include "orkg/text.hpp"

namespace orkg::service {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadRequest:
    case ErrorCode::EmptyLabel:
    case ErrorCode::InvalidLabel:
    case ErrorCode::ClassesOnNonResource:
    case ErrorCode::KindViolation:
    case ErrorCode::NotAResource:
    case ErrorCode::InvalidDoi:
    case ErrorCode::TooFewContributions:
    case ErrorCode::MalformedRecord:
    case ErrorCode::ForwardReference:
    case ErrorCode::IdCollision:
      return 400;
    case ErrorCode::Unauthorized:
      return 401;
    case ErrorCode::ReservedKey:
      return 403;
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownStatement:
    case ErrorCode::NotFound:
    case ErrorCode::NotAPaper:
    case ErrorCode::NotAContribution:
      return 404;
    case ErrorCode::DuplicateTriple:
      return 409;
    case ErrorCode::ValidationFailed:
    case ErrorCode::UnknownField:
    case ErrorCode::UnknownNodeReference:
      return 422;
    case ErrorCode::UpstreamError:
    case ErrorCode::MalformedDocument:
    case ErrorCode::MissingTitle:
      return 502;
    case ErrorCode::IndexStale:
      return 503;
    case ErrorCode::Timeout:
      return 504;
    case ErrorCode::SinkFailure:
    case ErrorCode::StorageFailure:
    case ErrorCode::CorruptLog:
    case ErrorCode::DirectoryLocked:
    case ErrorCode::PortInUse:
      return 500;
  }
  return 500;
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  // Error messages may quote client input that is not valid UTF-8.
  res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send_json(res, status, json{{"error", code}, {"message", message}});
}

NodeId parse_node_id(const std::string& s, std::string_view what) {
  auto id = graph::NodeId::parse(s);
  if (!id) throw Error(ErrorCode::BadRequest, std::string(what) + ": '" + s + "' is not a node id");
  return *id;
}

StatementId parse_statement_id(const std::string& s) {
  auto id = graph::StatementId::parse(s);
  if (!id) throw Error(ErrorCode::BadRequest, "'" + s + "' is not a statement id");
  return *id;
}

std::size_t parse_count(const std::string& s, std::string_view what, std::size_t max) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || v == 0 || v > max) {
    throw Error(ErrorCode::BadRequest, std::string(what) + " must be an integer in [1, " + std::to_string(max) + "]");
  }
  return v;
}

bool parse_flag(const std::string& s, std::string_view what) {
  const auto f = text::fold(s);
  if (f == "true" || f == "1" || f == "yes") return true;
  if (f == "false" || f == "0" || f == "no" || f.empty()) return false;
  throw Error(ErrorCode::BadRequest, std::string(what) + " must be true or false");
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key)) throw Error(ErrorCode::BadRequest, std::string("missing '") + key + "'");
  try {
    return body.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::BadRequest, std::string("'") + key + "' has the wrong type");
  }
}

}  // namespace

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      backend_(BackendOptions{config_.data_dir, config_.metadata, config_.similarity_depth, true,
                              &GraphStore::system_now}),
      http_(std::make_unique<httplib::Server>()) {
  const std::size_t threads = std::max<std::size_t>(config_.threads, 1);
  http_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  // The default options add SO_REUSEPORT, which would let a second service
  // share the port instead of failing with PortInUse.
  http_->set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  install_routes();
}

Service::~Service() { stop(); }

int Service::start() {
  int port = 0;
  if (config_.port == 0) {
    port = http_->bind_to_any_port(config_.host);
  } else if (http_->bind_to_port(config_.host, config_.port)) {
    port = config_.port;
  }
  if (port <= 0) {
    throw Error(ErrorCode::PortInUse, "cannot listen on " + config_.host + ":" + std::to_string(config_.port));
  }
  port_ = port;
  listener_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
  return port_;
}

void Service::wait() {
  if (listener_.joinable()) listener_.join();
}

void Service::stop() {
  if (http_) http_->stop();
  if (listener_.joinable()) listener_.join();
}

void Service::install_routes() {
  auto& http = *http_;
  using httplib::Request;
  using httplib::Response;

  // Runs a handler and turns exceptions into error bodies.
  auto guard = [](auto handler) {
    return [handler](const Request& req, Response& res) {
      try {
        handler(req, res);
      } catch (const contrib::ValidationFailed& e) {
        send_json(res, http_status(e.code()),
                  json{{"error", e.name()}, {"message", e.what()}, {"report", contrib::to_json(e.report())}});
      } catch (const Error& e) {
        send_error(res, http_status(e.code()), e.name(), e.what());
      } catch (const json::exception& e) {
        send_error(res, 400, code_name(ErrorCode::BadRequest), e.what());
      }
    };
  };
  auto curator = [this](const Request& req) {
    const auto token = text::trim(req.get_header_value("X-Curator"));
    if (token.empty()) throw Error(ErrorCode::Unauthorized, "X-Curator header required");
    if (config_.curator_token && token != *config_.curator_token) {
      throw Error(ErrorCode::Unauthorized, "unknown curator token");
    }
    return std::string(token);
  };

  http.set_exception_handler([](const Request&, Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    send_error(res, 500, "Internal", message);
  });
  http.set_error_handler([](const Request&, Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    if (res.status == 404) {
      send_error(res, 404, code_name(ErrorCode::NotFound), "no such endpoint");
    } else {
      send_error(res, res.status, "HttpError", httplib::status_message(res.status));
    }
    return httplib::Server::HandlerResponse::Handled;
  });
  if (!config_.cors_origin.empty()) {
    http.set_post_routing_handler([origin = config_.cors_origin](const Request&, Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    });
    http.Options(R"(/.*)", [origin = config_.cors_origin](const Request&, Response& res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type, X-Curator");
      res.set_header("Access-Control-Max-Age", "600");
    });
  }

  http.Get("/health", guard([this](const Request&, Response& res) {
    const auto h = backend_.health();
    send_json(res, 200, json{{"status", "ok"}, {"statements", h.statements}, {"nodes", h.nodes}, {"sequence", h.sequence}});
  }));

  http.Get("/api/fields", guard([this](const Request&, Response& res) {
    send_json(res, 200, backend_.taxonomy().to_json());
  }));

  http.Post("/api/nodes", guard([this, curator](const Request& req, Response& res) {
    curator(req);
    const auto body = parse_body(req);
    NodeKind kind = NodeKind::Resource;
    if (body.is_object() && body.contains("kind")) {
      auto k = graph::parse_kind(field<std::string>(body, "kind"));
      if (!k) throw Error(ErrorCode::BadRequest, "kind must be resource, predicate or literal");
      kind = *k;
    }
    std::set<std::string> classes;
    if (body.is_object() && body.contains("classes")) classes = field<std::set<std::string>>(body, "classes");
    send_json(res, 201, api::node(backend_.create_node(kind, field<std::string>(body, "label"), std::move(classes))));
  }));

  http.Get("/api/nodes", guard([this](const Request& req, Response& res) {
    std::optional<NodeKind> kind;
    if (auto k = param(req, "kind"); k && !k->empty()) {
      kind = graph::parse_kind(*k);
      if (!kind) throw Error(ErrorCode::BadRequest, "kind must be resource, predicate or literal");
    }
    const auto limit = param(req, "limit");
    const std::size_t n = limit ? parse_count(*limit, "limit", 1000) : 10;
    json out = json::array();
    for (const auto& node : backend_.find_nodes(param(req, "q").value_or(""), kind, n)) out.push_back(api::node(node));
    send_json(res, 200, out);
  }));

  http.Post("/api/statements", guard([this, curator](const Request& req, Response& res) {
    const auto who = curator(req);
    const auto body = parse_body(req);
    const auto s = backend_.add_statement(parse_node_id(field<std::string>(body, "subject"), "subject"),
                                          parse_node_id(field<std::string>(body, "predicate"), "predicate"),
                                          parse_node_id(field<std::string>(body, "object"), "object"), who);
    send_json(res, 201, api::statement(s));
  }));

  http.Get("/api/statements", guard([this](const Request& req, Response& res) {
    graph::StatementFilter filter;
    if (auto v = param(req, "subject"); v && !v->empty()) filter.subject = parse_node_id(*v, "subject");
    if (auto v = param(req, "predicate"); v && !v->empty()) filter.predicate = parse_node_id(*v, "predicate");
    if (auto v = param(req, "object"); v && !v->empty()) filter.object = parse_node_id(*v, "object");
    json out = json::array();
    for (const auto& s : backend_.query_statements(filter)) out.push_back(api::statement(s));
    send_json(res, 200, out);
  }));

  http.Delete(R"(/api/statements/([^/]+))", guard([this, curator](const Request& req, Response& res) {
    curator(req);
    backend_.delete_statement(parse_statement_id(req.matches[1]));
    res.status = 204;
  }));

  http.Put(R"(/api/statements/([^/]+)/annotations/([^/]+))",
           guard([this, curator](const Request& req, Response& res) {
             curator(req);
             const auto body = parse_body(req);
             const auto s = backend_.annotate_statement(parse_statement_id(req.matches[1]), req.matches[2],
                                                        field<std::string>(body, "value"));
             send_json(res, 200, api::statement(s));
           }));

  http.Get(R"(/api/metadata/doi/(.+))", guard([this](const Request& req, Response& res) {
    send_json(res, 200, contrib::to_json(backend_.fetch_metadata(req.matches[1])));
  }));

  http.Post("/api/papers", guard([this, curator](const Request& req, Response& res) {
    const auto who = curator(req);
    auto submission = contrib::submission_from_json(parse_body(req));
    submission.submitted_by = who;
    send_json(res, 201, contrib::to_json(backend_.ingest_paper(submission)));
  }));

  http.Get(R"(/api/papers/([^/]+))", guard([this](const Request& req, Response& res) {
    const auto id = graph::NodeId::parse(req.matches[1].str());
    if (!id) throw Error(ErrorCode::NotAPaper, std::string(req.matches[1]) + " is not a paper");
    send_json(res, 200, contrib::to_json(backend_.get_paper(*id)));
  }));

  http.Get("/api/papers", guard([this](const Request& req, Response& res) {
    auto f = param(req, "field");
    if (f && f->empty()) f.reset();
    const bool descendants = parse_flag(param(req, "descendants").value_or(""), "descendants");
    send_json(res, 200, api::papers(backend_.list_papers(f, descendants)));
  }));

  http.Get(R"(/api/contributions/([^/]+)/similar)", guard([this](const Request& req, Response& res) {
    const auto id = graph::NodeId::parse(req.matches[1].str());
    if (!id) throw Error(ErrorCode::NotAContribution, std::string(req.matches[1]) + " is not a contribution");
    const auto k = param(req, "k");
    const std::size_t n = k ? parse_count(*k, "k", 1000) : 5;
    send_json(res, 200, api::similar(backend_, *id, backend_.similar(*id, n)));
  }));

  http.Get("/api/comparison", guard([this](const Request& req, Response& res) {
    std::vector<NodeId> ids;
    std::istringstream list(param(req, "contributions").value_or(""));
    for (std::string item; std::getline(list, item, ',');) {
      const auto trimmed = std::string(text::trim(item));
      if (!trimmed.empty()) ids.push_back(parse_node_id(trimmed, "contributions"));
    }
    comparison::ComparisonOptions options;
    if (auto c = param(req, "min_coverage"); c && !c->empty()) {
      double v = 0;
      const auto [end, ec] = std::from_chars(c->data(), c->data() + c->size(), v);
      if (ec != std::errc() || end != c->data() + c->size()) throw Error(ErrorCode::BadRequest, "min_coverage must be a number");
      options.min_coverage = v;
    }
    if (auto d = param(req, "depth"); d && !d->empty()) options.depth = parse_count(*d, "depth", 8);
    const auto format = text::fold(param(req, "format").value_or("json"));
    if (format != "json" && format != "csv") throw Error(ErrorCode::BadRequest, "format must be json or csv");
    const auto table = backend_.compare(ids, options);
    if (format == "csv") {
      res.status = 200;
      res.set_content(comparison::render_csv(table), "text/csv; charset=utf-8");
    } else {
      send_json(res, 200, comparison::to_json(table));
    }
  }));

  http.Post("/api/admin/compact", guard([this, curator](const Request& req, Response& res) {
    curator(req);
    const auto stats = backend_.compact();
    send_json(res, 200, json{{"sequence", stats.sequence}, {"records", stats.records}});
  }));
}

}  // namespace orkg::service
