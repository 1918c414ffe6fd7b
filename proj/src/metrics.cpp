#include "conquard/metrics.hpp"

#include <algorithm>

namespace conquard {

SizeMetrics compute_size_metrics(const TokenizedFile& lexed) {
  SizeMetrics m;
  m.loc = lexed.line_count;

  std::set<int> with_tokens = lexed.token_lines();
  m.sloc = static_cast<long long>(with_tokens.size());

  for (int line : lexed.comment_lines)
    if (!with_tokens.count(line)) ++m.comment_lines;

  m.comment_ratio =
      static_cast<double>(m.comment_lines) / static_cast<double>(std::max<long long>(m.loc, 1));
  return m;
}

namespace {

// Finds `IDENTIFIER ( ... ) {` procedure heads. A small window of tokens is
// allowed between `)` and `{` for trailers like `const`, `noexcept` or
// `throws E`; `;`, `=` or a new `(` abort the candidate.
long long count_ident_parens_brace(const std::vector<Token>& tokens) {
  long long count = 0;
  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (tokens[i].kind != TokenKind::Identifier) continue;
    if (tokens[i + 1].text != "(") continue;
    int depth = 1;
    std::size_t j = i + 2;
    while (j < n && depth > 0) {
      if (tokens[j].text == "(") ++depth;
      else if (tokens[j].text == ")") --depth;
      ++j;
    }
    if (depth != 0) break;  // unbalanced to end of file
    bool found = false;
    for (std::size_t k = j; k < n && k < j + 8; ++k) {
      const std::string& t = tokens[k].text;
      if (t == "{") {
        found = true;
        break;
      }
      if (t == ";" || t == "}" || t == "(" || t == ")" || t == "=" || t == ",") break;
    }
    if (found) ++count;
  }
  return count;
}

}  // namespace

StructureMetrics compute_structure_metrics(const TokenizedFile& lexed,
                                           const LanguageProfile& profile,
                                           Diagnostics& diags) {
  StructureMetrics m;
  const auto& tokens = lexed.tokens;

  for (const auto& t : tokens)
    if (t.kind == TokenKind::Keyword && profile.is_branch_keyword(t.text))
      ++m.branch_tokens;
  m.cyclomatic = 1 + m.branch_tokens;

  long long sloc = static_cast<long long>(lexed.token_lines().size());
  m.condition_ratio = static_cast<double>(m.branch_tokens) /
                      static_cast<double>(std::max<long long>(sloc, 1));

  // Loop nesting via brace depth: a loop keyword opens a pending loop that
  // the next `{` turns into a nested level; a `;` before the `{` ends a
  // braceless loop body (counted as depth 1 while pending).
  long long depth_active = 0;  // loop braces currently open
  bool pending_loop = false;
  bool unbalanced = false;
  std::vector<char> brace_is_loop;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Keyword && profile.is_loop_keyword(t.text)) {
      pending_loop = true;
      m.max_nesting = std::max(m.max_nesting, depth_active + 1);
    } else if (t.text == "{") {
      brace_is_loop.push_back(pending_loop ? 1 : 0);
      if (pending_loop) ++depth_active;
      pending_loop = false;
    } else if (t.text == "}") {
      if (brace_is_loop.empty()) {
        unbalanced = true;  // depth clamped at zero
        continue;
      }
      if (brace_is_loop.back()) --depth_active;
      brace_is_loop.pop_back();
    } else if (t.text == ";") {
      pending_loop = false;
    }
  }
  if (unbalanced || !brace_is_loop.empty())
    diags.warn("unbalanced braces while measuring loop nesting");

  switch (profile.procedure_style) {
    case ProcedureStyle::None:
      break;
    case ProcedureStyle::Keywords:
      for (const auto& t : tokens)
        if (t.kind == TokenKind::Keyword &&
            std::find(profile.procedure_keywords.begin(), profile.procedure_keywords.end(),
                      t.text) != profile.procedure_keywords.end())
          ++m.procedure_count;
      break;
    case ProcedureStyle::IdentParensBrace:
      m.procedure_count = count_ident_parens_brace(tokens);
      break;
  }
  if (m.procedure_count > 0)
    m.average_procedure_length =
        static_cast<double>(sloc) / static_cast<double>(m.procedure_count);
  return m;
}

}  // namespace conquard
