#pragma once

// Independent reference implementations used to check the real modules.
// Everything here is deliberately naive and shares no logic with src/.

#include <map>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

// ---- size metrics oracle --------------------------------------------------
// Naive per-line scanner with a block-comment state machine. `line_comment`,
// `open`/`close` may be empty. String awareness is intentionally minimal:
// inputs generated for this oracle avoid comment markers inside strings.
struct OracleSize {
  long long loc = 0;
  long long sloc = 0;
  long long comment_lines = 0;
};
OracleSize oracle_size_metrics(const std::string& content, const std::string& line_comment,
                               const std::string& open, const std::string& close);

// ---- clone oracle -----------------------------------------------------------
// Brute force: enumerate position pairs, extend maximal matches, rescan all
// occurrences of each maximal string. Corpus is per-file normalized token
// sequences keyed by path.
struct OracleCloneClass {
  int length = 0;
  std::vector<std::pair<std::string, int>> occurrences;  // (path, start index)

  bool operator==(const OracleCloneClass&) const = default;
  bool operator<(const OracleCloneClass& other) const {
    if (length != other.length) return length > other.length;
    return occurrences < other.occurrences;
  }
};
std::vector<OracleCloneClass> oracle_detect_clones(
    const std::map<std::string, std::vector<std::string>>& files, int min_length);

// ---- architecture oracle ---------------------------------------------------
// Component membership by exact file lists; every edge checked against the
// allowed list one by one.
struct OracleArchInput {
  std::map<std::string, std::string> file_component;            // file -> component
  std::set<std::pair<std::string, std::string>> allowed;        // from -> to
  std::vector<std::pair<std::string, std::string>> deps;        // internal edges
};
struct OracleArchResult {
  std::set<std::string> unmapped_files;
  std::vector<std::pair<std::string, std::string>> forbidden;  // offending deps
};
OracleArchResult oracle_check_conformance(const OracleArchInput& input);

// ---- HTML well-formedness ---------------------------------------------------
// Strict XML-ish checker: balanced tags, quoted attributes, sane entities.
// Returns an empty string when OK, else a description of the first problem.
std::string check_html(const std::string& html);

}  // namespace testsupport
