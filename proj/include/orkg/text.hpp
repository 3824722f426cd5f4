// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#pragma once

#include <string>
#include <string_view>

namespace orkg::text {

std::string_view trim(std::string_view s);

// ASCII-only case folding; non-ASCII bytes pass through unchanged.
std::string fold(std::string_view s);

bool is_valid_utf8(std::string_view s);

bool starts_with_folded(std::string_view folded_haystack, std::string_view folded_needle);

}  // namespace orkg::text
