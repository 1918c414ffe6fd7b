#include "conquard/clones.hpp"

#include <algorithm>
#include <numeric>

#include "conquard/errors.hpp"

namespace conquard {

namespace {

// Suffix array by prefix doubling with radix sort, O(n log n).
std::vector<int> build_suffix_array(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<int> sa(n), rank(n), tmp(n), count;
  std::iota(sa.begin(), sa.end(), 0);

  // Initial ranks: compress symbol values.
  {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i)
      rank[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), s[i]) - sorted.begin());
  }

  std::vector<int> second(n), sa2(n);
  for (int k = 1; k < n; k <<= 1) {
    // Sort by (rank[i], rank[i+k]) with two counting-sort passes.
    int classes = n + 1;
    for (int i = 0; i < n; ++i) second[i] = (i + k < n) ? rank[i + k] + 1 : 0;

    // Pass 1: by second key.
    count.assign(classes + 1, 0);
    for (int i = 0; i < n; ++i) ++count[second[i]];
    for (int i = 1; i <= classes; ++i) count[i] += count[i - 1];
    for (int i = n - 1; i >= 0; --i) sa2[--count[second[i]]] = i;

    // Pass 2: by first key, stable (exclusive prefix sums).
    count.assign(classes + 1, 0);
    for (int i = 0; i < n; ++i) ++count[rank[i] + 1];
    for (int i = 1; i <= classes; ++i) count[i] += count[i - 1];
    for (int i = 0; i < n; ++i) sa[count[rank[sa2[i]]]++] = sa2[i];

    tmp[sa[0]] = 0;
    for (int i = 1; i < n; ++i) {
      bool same = rank[sa[i]] == rank[sa[i - 1]] && second[sa[i]] == second[sa[i - 1]];
      tmp[sa[i]] = tmp[sa[i - 1]] + (same ? 0 : 1);
    }
    rank = tmp;
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

// Kasai's algorithm: lcp[i] = common prefix of suffixes sa[i-1] and sa[i].
std::vector<int> build_lcp(const std::vector<int>& s, const std::vector<int>& sa) {
  const int n = static_cast<int>(s.size());
  std::vector<int> rank(n), lcp(n, 0);
  for (int i = 0; i < n; ++i) rank[sa[i]] = i;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      k = 0;
      continue;
    }
    int j = sa[rank[i] - 1];
    if (k > 0) --k;
    while (i + k < n && j + k < n && s[i + k] == s[j + k]) ++k;
    lcp[rank[i]] = k;
  }
  return lcp;
}

struct FileSpan {
  const std::string* path;
  int begin;  // global index of first token
  int size;
};

}  // namespace

std::vector<CloneClass> detect_clones(const CloneCorpus& corpus, int min_length) {
  if (min_length < 2)
    throw Error("InvalidMinLength",
                "min_length must be at least 2, got " + std::to_string(min_length));

  // Concatenate normalized tokens, interposing a unique sentinel after each
  // file so no repeat can cross a boundary and file edges block uniform
  // extension.
  std::vector<int> seq;
  std::vector<FileSpan> spans;
  std::map<std::string, int> symbol_ids;
  int next_symbol = 0;
  int next_sentinel = -1;

  for (const auto& [path, tokens] : corpus) {
    FileSpan span{&path, static_cast<int>(seq.size()), static_cast<int>(tokens->size())};
    spans.push_back(span);
    for (const auto& t : *tokens) {
      auto [it, inserted] = symbol_ids.emplace(t.normalized, next_symbol);
      if (inserted) ++next_symbol;
      seq.push_back(it->second);
    }
    seq.push_back(next_sentinel--);
  }

  std::vector<CloneClass> classes;
  const int n = static_cast<int>(seq.size());
  if (n == 0) return classes;

  std::vector<int> sa = build_suffix_array(seq);
  std::vector<int> lcp = build_lcp(seq, sa);

  auto left_char = [&](int pos) { return pos == 0 ? -1000000000 - pos : seq[pos - 1]; };

  // Emit one class per lcp-interval (right-maximal by construction) whose
  // occurrences have at least two distinct preceding symbols (left-maximal).
  auto emit = [&](int value, int lb, int rb) {
    if (value < min_length) return;
    int first = left_char(sa[lb]);
    bool left_maximal = sa[lb] == 0;
    for (int i = lb + 1; i <= rb && !left_maximal; ++i)
      if (left_char(sa[i]) != first) left_maximal = true;
    if (!left_maximal) return;

    CloneClass cls;
    cls.length = value;
    cls.occurrences.reserve(rb - lb + 1);
    for (int i = lb; i <= rb; ++i) {
      int pos = sa[i];
      // Locate the containing file span (sentinels make crossing impossible).
      auto it = std::upper_bound(spans.begin(), spans.end(), pos,
                                 [](int p, const FileSpan& s) { return p < s.begin; });
      const FileSpan& span = *(it - 1);
      CloneOccurrence occ;
      occ.path = *span.path;
      occ.start_token = pos - span.begin;
      occ.end_token = occ.start_token + value;
      cls.occurrences.push_back(std::move(occ));
    }
    std::sort(cls.occurrences.begin(), cls.occurrences.end(),
              [](const CloneOccurrence& a, const CloneOccurrence& b) {
                return a.path != b.path ? a.path < b.path : a.start_token < b.start_token;
              });
    classes.push_back(std::move(cls));
  };

  // Stack-based lcp-interval traversal.
  struct Open {
    int value;
    int left;
  };
  std::vector<Open> stack;
  stack.push_back({0, 0});
  for (int i = 1; i <= n; ++i) {
    int h = (i < n) ? lcp[i] : 0;
    int left = i - 1;  // a fresh interval covers the previous suffix too
    while (!stack.empty() && stack.back().value > h) {
      Open top = stack.back();
      stack.pop_back();
      emit(top.value, top.left, i - 1);
      left = top.left;
    }
    if (stack.empty() || stack.back().value < h) stack.push_back({h, left});
  }

  // Fill line spans from the original tokens.
  for (auto& cls : classes) {
    for (auto& occ : cls.occurrences) {
      const std::vector<Token>& tokens = *corpus.at(occ.path);
      occ.start_line = tokens[occ.start_token].line;
      occ.end_line = tokens[occ.end_token - 1].end_line();
    }
  }

  std::sort(classes.begin(), classes.end(), [](const CloneClass& a, const CloneClass& b) {
    if (a.length != b.length) return a.length > b.length;
    const CloneOccurrence& oa = a.occurrences.front();
    const CloneOccurrence& ob = b.occurrences.front();
    if (oa.path != ob.path) return oa.path < ob.path;
    return oa.start_token < ob.start_token;
  });
  return classes;
}

CloneReport cloning_ratio(std::vector<CloneClass> classes, const CloneCorpus& corpus,
                          Diagnostics& diags) {
  CloneReport report;

  std::map<std::string, std::set<int>> source_lines;
  for (const auto& [path, tokens] : corpus) {
    auto& lines = source_lines[path];
    for (const auto& t : *tokens)
      for (int l = t.line; l <= t.end_line(); ++l) lines.insert(l);
    report.total_sloc += static_cast<long long>(lines.size());
  }

  for (const auto& cls : classes) {
    for (const auto& occ : cls.occurrences) {
      const auto& src = source_lines[occ.path];
      auto& cloned = report.cloned_lines[occ.path];
      for (auto it = src.lower_bound(occ.start_line);
           it != src.end() && *it <= occ.end_line; ++it)
        cloned.insert(*it);
    }
  }
  for (const auto& [path, lines] : report.cloned_lines)
    report.total_cloned += static_cast<long long>(lines.size());

  if (report.total_sloc == 0) {
    diags.warn("cloning ratio over an empty corpus; reported as 0");
    report.ratio = 0;
  } else {
    report.ratio =
        static_cast<double>(report.total_cloned) / static_cast<double>(report.total_sloc);
  }
  report.classes = std::move(classes);
  return report;
}

}  // namespace conquard
