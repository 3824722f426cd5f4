// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Response bodies shared by the HTTP front end and the embedded CLI, so both
// print the same bytes for the same request.

#include <vector>

#include <nlohmann/json.hpp>

#include "orkg/service/backend.hpp"

namespace orkg::service::api {

nlohmann::json node(const graph::Node& n);
// Annotations include the provenance keys.
nlohmann::json statement(const graph::Statement& s);
nlohmann::json similar(const Backend& backend, NodeId contribution, const std::vector<similarity::Match>& matches);
nlohmann::json papers(const std::vector<PaperSummary>& papers);

}  // namespace orkg::service::api
