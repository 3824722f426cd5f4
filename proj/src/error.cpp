// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include "orkg/error.hpp"

namespace orkg {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::ClassesOnNonResource: return "ClassesOnNonResource";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::KindViolation: return "KindViolation";
    case ErrorCode::DuplicateTriple: return "DuplicateTriple";
    case ErrorCode::UnknownStatement: return "UnknownStatement";
    case ErrorCode::ReservedKey: return "ReservedKey";
    case ErrorCode::NotAResource: return "NotAResource";
    case ErrorCode::SinkFailure: return "SinkFailure";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::IdCollision: return "IdCollision";
    case ErrorCode::ForwardReference: return "ForwardReference";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::UnknownNodeReference: return "UnknownNodeReference";
    case ErrorCode::NotAPaper: return "NotAPaper";
    case ErrorCode::InvalidDoi: return "InvalidDoi";
    case ErrorCode::MissingTitle: return "MissingTitle";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::UpstreamError: return "UpstreamError";
    case ErrorCode::NotAContribution: return "NotAContribution";
    case ErrorCode::IndexStale: return "IndexStale";
    case ErrorCode::TooFewContributions: return "TooFewContributions";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::StorageFailure: return "StorageFailure";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::DirectoryLocked: return "DirectoryLocked";
    case ErrorCode::PortInUse: return "PortInUse";
  }
  return "Unknown";
}

}  // namespace orkg
