#include "conquard/glob.hpp"

#include <vector>

namespace conquard {

namespace {

// Recursive matcher with memoization. `**` may consume separators and, when
// written as `**/`, may also stand for zero segments (so `**/*.x` matches a
// top-level `a.x`).
class Matcher {
public:
  Matcher(std::string_view pat, std::string_view str)
      : pat_(pat), str_(str), memo_((pat.size() + 1) * (str.size() + 1), 0) {}

  bool run() { return match(0, 0); }

private:
  bool match(std::size_t p, std::size_t s) {
    unsigned char& slot = memo_[p * (str_.size() + 1) + s];
    if (slot) return slot == 2;
    bool ok = compute(p, s);
    slot = ok ? 2 : 1;
    return ok;
  }

  bool compute(std::size_t p, std::size_t s) {
    if (p == pat_.size()) return s == str_.size();
    char c = pat_[p];
    if (c == '*') {
      if (p + 1 < pat_.size() && pat_[p + 1] == '*') {
        std::size_t q = p + 2;
        if (match(q, s)) return true;                       // ** matches empty
        if (q < pat_.size() && pat_[q] == '/' && match(q + 1, s))
          return true;                                       // **/ matches zero segments
        return s < str_.size() && match(p, s + 1);           // consume one char (incl. '/')
      }
      if (match(p + 1, s)) return true;
      return s < str_.size() && str_[s] != '/' && match(p, s + 1);
    }
    if (c == '?')
      return s < str_.size() && str_[s] != '/' && match(p + 1, s + 1);
    return s < str_.size() && str_[s] == c && match(p + 1, s + 1);
  }

  std::string_view pat_;
  std::string_view str_;
  std::vector<unsigned char> memo_;
};

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  return Matcher(pattern, path).run();
}

bool glob_match_any(const std::vector<std::string>& patterns, std::string_view path) {
  for (const auto& pat : patterns)
    if (glob_match(pat, path)) return true;
  return false;
}

}  // namespace conquard
