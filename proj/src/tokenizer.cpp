#include "conquard/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace conquard {

const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Identifier: return "IDENTIFIER";
    case TokenKind::Keyword: return "KEYWORD";
    case TokenKind::Literal: return "LITERAL";
    case TokenKind::Operator: return "OPERATOR";
    case TokenKind::Punctuation: return "PUNCTUATION";
  }
  return "?";
}

std::set<int> TokenizedFile::token_lines() const {
  std::set<int> lines;
  for (const auto& t : tokens)
    for (int l = t.line; l <= t.end_line(); ++l) lines.insert(l);
  return lines;
}

std::string sanitize_utf8(std::string_view content, Diagnostics& diags,
                          const std::string& origin) {
  std::string out;
  out.reserve(content.size());
  bool replaced = false;
  std::size_t i = 0;
  while (i < content.size()) {
    unsigned char c = content[i];
    std::size_t len;
    if (c < 0x80) len = 1;
    else if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    else len = 0;

    bool ok = len > 0 && i + len <= content.size();
    for (std::size_t k = 1; ok && k < len; ++k)
      ok = (static_cast<unsigned char>(content[i + k]) & 0xC0) == 0x80;

    if (ok) {
      out.append(content.substr(i, len));
      i += len;
    } else {
      out.append("\xEF\xBF\xBD");  // U+FFFD
      replaced = true;
      ++i;
    }
  }
  if (replaced)
    diags.warn("invalid UTF-8 in " + (origin.empty() ? "input" : origin) +
               "; bytes replaced");
  return out;
}

namespace {

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool is_operator_char(char c) {
  static const std::string ops = "+-*/%=<>!&|^~?:.";
  return ops.find(c) != std::string::npos;
}

// Longest-first table of multi-character operators (maximal munch).
const std::array<const char*, 28> kMultiOps = {
    "<<=", ">>=", "<=>", "...", "->*", "::",  "->", "++", "--", "<<",
    ">>",  "<=",  ">=",  "==",  "!=",  "&&",  "||", "+=", "-=", "*=",
    "/=",  "%=",  "&=",  "|=",  "^=",  "**",  "//", "??",
};

}  // namespace

TokenizedFile tokenize(std::string_view content, const LanguageProfile& profile,
                       Diagnostics& diags, const std::string& origin) {
  TokenizedFile result;

  // Strip a UTF-8 byte-order mark so it never becomes a token.
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  if (!content.empty())
    result.line_count =
        static_cast<int>(std::count(content.begin(), content.end(), '\n')) +
        (content.back() == '\n' ? 0 : 1);

  const std::string where = origin.empty() ? "input" : origin;
  std::size_t i = 0;
  int line = 1;

  auto starts_with = [&](const std::string& prefix) {
    return !prefix.empty() && content.substr(i, prefix.size()) == prefix;
  };

  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    Token t;
    t.kind = kind;
    t.text.assign(content.substr(begin, end - begin));
    t.line = line;
    switch (kind) {
      case TokenKind::Identifier: t.normalized = "ID"; break;
      case TokenKind::Literal: t.normalized = "LIT"; break;
      default: t.normalized = t.text; break;
    }
    for (char c : t.text)
      if (c == '\n') ++line;
    result.tokens.push_back(std::move(t));
  };

  while (i < content.size()) {
    char c = content[i];

    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }

    // Line comment.
    if (starts_with(profile.line_comment)) {
      result.comment_lines.insert(line);
      while (i < content.size() && content[i] != '\n') ++i;
      continue;
    }

    // Block comment.
    if (starts_with(profile.block_comment_open)) {
      result.comment_lines.insert(line);
      i += profile.block_comment_open.size();
      bool closed = false;
      while (i < content.size()) {
        if (content[i] == '\n') {
          ++line;
          ++i;
          result.comment_lines.insert(line);
          continue;
        }
        if (content.substr(i, profile.block_comment_close.size()) ==
            profile.block_comment_close) {
          i += profile.block_comment_close.size();
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed)
        diags.warn("unterminated block comment in " + where + "; closed at end of file");
      continue;
    }

    // String / character literal.
    bool is_string = false;
    for (const auto& delim : profile.string_delims) {
      if (!delim.empty() && delim[0] == c) {
        is_string = true;
        break;
      }
    }
    if (is_string) {
      std::size_t begin = i;
      ++i;
      bool closed = false;
      while (i < content.size()) {
        if (content[i] == '\\' && i + 1 < content.size()) {
          i += 2;
          continue;
        }
        if (content[i] == c) {
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed)
        diags.warn("unterminated string literal in " + where + "; closed at end of file");
      push(TokenKind::Literal, begin, i);
      continue;
    }

    // Number literal.
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < content.size() &&
         std::isdigit(static_cast<unsigned char>(content[i + 1])))) {
      std::size_t begin = i;
      ++i;
      while (i < content.size()) {
        char d = content[i];
        bool exponent_sign = (d == '+' || d == '-') && i > begin &&
                             (content[i - 1] == 'e' || content[i - 1] == 'E' ||
                              content[i - 1] == 'p' || content[i - 1] == 'P');
        if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.' ||
              exponent_sign))
          break;
        ++i;
      }
      push(TokenKind::Literal, begin, i);
      continue;
    }

    // Identifier or keyword.
    if (is_ident_start(static_cast<unsigned char>(c))) {
      std::size_t begin = i;
      while (i < content.size() && is_ident_char(static_cast<unsigned char>(content[i])))
        ++i;
      std::string word(content.substr(begin, i - begin));
      push(profile.is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin,
           i);
      continue;
    }

    // Operator with maximal munch.
    if (is_operator_char(c)) {
      std::size_t matched = 1;
      for (const char* op : kMultiOps) {
        std::string_view sv(op);
        if (sv.size() > matched && content.substr(i, sv.size()) == sv) {
          // Never treat a comment opener as an operator (handled above),
          // but `//` is in the table for profiles without line comments.
          if (sv == profile.line_comment || sv == profile.block_comment_open) continue;
          matched = sv.size();
        }
      }
      push(TokenKind::Operator, i, i + matched);
      i += matched;
      continue;
    }

    // Anything else is a single punctuation character; tokenization is total.
    push(TokenKind::Punctuation, i, i + 1);
    ++i;
  }

  return result;
}

}  // namespace conquard
