// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// HTTP front end. JSON in and out; errors as {"error": code, "message": text}.
//
//   GET    /health
//   POST   /api/nodes
//   GET    /api/nodes?q=&kind=&limit=
//   POST   /api/statements
//   GET    /api/statements?subject=&predicate=&object=
//   DELETE /api/statements/{id}
//   PUT    /api/statements/{id}/annotations/{key}
//   GET    /api/metadata/doi/{doi}
//   POST   /api/papers
//   GET    /api/papers/{id}
//   GET    /api/papers?field=&descendants=
//   GET    /api/contributions/{id}/similar?k=
//   GET    /api/comparison?contributions=a,b,...&format=json|csv
//   POST   /api/admin/compact
//
// Writes require "X-Curator: <token>"; the token is recorded as created_by.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "orkg/error.hpp"
#include "orkg/metadata.hpp"
#include "orkg/service/backend.hpp"

namespace httplib {
class Server;
}

namespace orkg::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path data_dir = "orkg-data";
  metadata::MetadataSource metadata;
  std::size_t similarity_depth = 2;
  std::string cors_origin;  // empty: no CORS headers
  // When set, X-Curator must carry exactly this value.
  std::optional<std::string> curator_token;
  std::size_t threads = 16;
};

// HTTP status for a module error.
int http_status(ErrorCode code);

class Service {
 public:
  // Opens the data directory (DirectoryLocked, CorruptLog, StorageFailure).
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds and starts answering in the background. Returns the bound port.
  // Throws PortInUse.
  int start();
  // Blocks until stop() is called.
  void wait();
  void stop();

  int port() const { return port_; }
  Backend& backend() { return backend_; }
  const ServiceConfig& config() const { return config_; }

 private:
  void install_routes();

  ServiceConfig config_;
  Backend backend_;
  std::unique_ptr<httplib::Server> http_;
  std::thread listener_;
  int port_ = 0;
};

}  // namespace orkg::service
