#pragma once

#include "conquard/language.hpp"
#include "conquard/tokenizer.hpp"

namespace conquard {

/// Per-file size measures. `comment_ratio` relates comment-only lines to
/// physical lines.
struct SizeMetrics {
  long long loc = 0;            // physical lines
  long long sloc = 0;           // lines carrying at least one token
  long long comment_lines = 0;  // lines intersecting a comment, token-free
  double comment_ratio = 0;     // comment_lines / max(loc, 1)
};

SizeMetrics compute_size_metrics(const TokenizedFile& lexed);

/// Per-file structure measures derived from the token stream.
struct StructureMetrics {
  long long procedure_count = 0;
  double average_procedure_length = 0;  // sloc per procedure, 0 when none
  long long max_nesting = 0;            // deepest loop-keyword brace nesting
  double condition_ratio = 0;           // branch tokens / max(sloc, 1)
  long long cyclomatic = 1;             // 1 + branch-keyword tokens
  long long branch_tokens = 0;
};

StructureMetrics compute_structure_metrics(const TokenizedFile& lexed,
                                           const LanguageProfile& profile,
                                           Diagnostics& diags);

}  // namespace conquard
