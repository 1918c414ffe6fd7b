#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conquard/diagnostics.hpp"
#include "conquard/language.hpp"

namespace conquard {

enum class TokenKind { Identifier, Keyword, Literal, Operator, Punctuation };

const char* token_kind_name(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::Punctuation;
  std::string text;
  std::string normalized;  // identifiers -> "ID", literals -> "LIT", else text
  int line = 1;            // 1-based line of the first character

  /// Last 1-based line covered by this token (strings closed at EOF may
  /// span lines).
  int end_line() const {
    int extra = 0;
    for (char c : text)
      if (c == '\n') ++extra;
    return line + extra;
  }
};

/// Lexing result for one file. Tokens exclude whitespace and comments;
/// comment line coverage is kept for the size metrics.
struct TokenizedFile {
  std::vector<Token> tokens;
  std::set<int> comment_lines;  // lines intersecting at least one comment
  int line_count = 0;           // physical lines (final partial line counts)

  /// Lines covered by at least one token.
  std::set<int> token_lines() const;
};

/// Replaces invalid UTF-8 sequences with U+FFFD; records one warning per
/// file when anything was replaced.
std::string sanitize_utf8(std::string_view content, Diagnostics& diags,
                          const std::string& origin);

/// Total tokenization: never fails. Unterminated strings and block comments
/// are closed at end of file with a warning.
TokenizedFile tokenize(std::string_view content, const LanguageProfile& profile,
                       Diagnostics& diags, const std::string& origin = "");

}  // namespace conquard
