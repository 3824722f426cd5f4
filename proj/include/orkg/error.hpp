// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orkg {

enum class ErrorCode {
  // graph-store
  EmptyLabel,
  InvalidLabel,
  ClassesOnNonResource,
  UnknownNode,
  KindViolation,
  DuplicateTriple,
  UnknownStatement,
  ReservedKey,
  NotAResource,
  SinkFailure,
  MalformedRecord,
  IdCollision,
  ForwardReference,
  // contribution-model
  ValidationFailed,
  UnknownField,
  UnknownNodeReference,
  NotAPaper,
  // metadata-ingest
  InvalidDoi,
  MissingTitle,
  MalformedDocument,
  NotFound,
  Timeout,
  UpstreamError,
  // similarity / comparison
  NotAContribution,
  IndexStale,
  TooFewContributions,
  // service
  BadRequest,
  Unauthorized,
  StorageFailure,
  CorruptLog,
  DirectoryLocked,
  PortInUse,
};

std::string_view code_name(ErrorCode code);

// All module errors are reported through this exception; the code is the
// stable identifier that the HTTP layer maps to a status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace orkg
