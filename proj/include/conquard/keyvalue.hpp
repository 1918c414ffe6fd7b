#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "conquard/config.hpp"

namespace conquard {

/// One logical line of a config-style file, with `#` comments stripped
/// (except inside double-quoted strings) and trailing whitespace removed.
struct ConfigLine {
  int number = 0;   // 1-based
  int indent = 0;   // count of leading blanks/tabs
  std::string text; // trimmed content
};

/// Splits text into non-blank logical lines. Shared by the pipeline,
/// language-profile and architecture-spec parsers.
std::vector<ConfigLine> split_config_lines(const std::string& text);

/// Parses one value literal: quoted string, integer, float, true/false,
/// `[a, b]` list, `@id.port` reference, or a bare word (returned as
/// FormalRef; callers reject it where formals are not in scope).
ParamValue parse_value_text(std::string_view text, int line);

/// Splits an indented `key = value` line. Throws SyntaxError if malformed.
std::pair<std::string, ParamValue> parse_keyvalue_line(const ConfigLine& line);

}  // namespace conquard
