#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "conquard/diagnostics.hpp"
#include "conquard/tokenizer.hpp"

namespace conquard {

/// One duplicated region: a half-open token range within a file, plus the
/// source-line span it covers.
struct CloneOccurrence {
  std::string path;
  int start_token = 0;  // inclusive
  int end_token = 0;    // exclusive
  int start_line = 0;
  int end_line = 0;
};

/// A set of positions sharing one normalized token sequence that cannot be
/// extended uniformly to either side.
struct CloneClass {
  int length = 0;  // in normalized tokens
  std::vector<CloneOccurrence> occurrences;  // sorted by (path, start_token)
};

struct CloneReport {
  std::vector<CloneClass> classes;  // length desc, then first occurrence
  std::map<std::string, std::set<int>> cloned_lines;  // source lines per file
  long long total_sloc = 0;
  long long total_cloned = 0;
  double ratio = 0;  // cloned source lines / total sloc
};

/// Per-file token sequences, keyed by path (map order fixes tie-breaks).
using CloneCorpus = std::map<std::string, const std::vector<Token>*>;

/// Finds every maximal repeated normalized-token sequence of at least
/// `min_length` tokens. Maximal means the whole occurrence set can be
/// extended neither left nor right without losing identity. Clone spans
/// never cross file boundaries. Throws InvalidMinLength for min_length < 2.
std::vector<CloneClass> detect_clones(const CloneCorpus& corpus, int min_length);

/// Fraction of source lines (lines carrying tokens) covered by at least one
/// clone occurrence. Overlaps count once. Empty corpus yields 0 with a
/// warning.
CloneReport cloning_ratio(std::vector<CloneClass> classes, const CloneCorpus& corpus,
                          Diagnostics& diags);

}  // namespace conquard
