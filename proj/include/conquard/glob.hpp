#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace conquard {

/// Matches a `/`-separated relative path against a glob pattern.
/// Dialect: `*` matches any run of characters within one path segment,
/// `**` matches across segments, `?` matches a single non-separator
/// character. No brace expansion, no character classes.
bool glob_match(std::string_view pattern, std::string_view path);

/// True if the path matches at least one pattern in the list.
bool glob_match_any(const std::vector<std::string>& patterns, std::string_view path);

}  // namespace conquard
