// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

// Operator command line. Exit codes: 0 success, 1 usage error, 2 operation
// error.
//
//   serve      --data-dir DIR [--port N] [--fixture-dir DIR] ...
//   export     --data-dir DIR --out FILE
//   import     --data-dir DIR --in FILE [--merge]
//   add-paper  --file SUBMISSION.json (--data-dir DIR | --url URL)
//   compare    ID ID... (--data-dir DIR | --url URL) [--csv]
//   similar    ID (--data-dir DIR | --url URL) [--k N]
//
// Without --url the command opens the data directory itself and fails if a
// running service holds it.

#include <iosfwd>
#include <string>
#include <vector>

namespace orkg::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFailure = 2 };

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orkg::cli
