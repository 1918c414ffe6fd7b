#include "support/oracles.hpp"

#include <algorithm>
#include <cctype>

namespace testsupport {

OracleSize oracle_size_metrics(const std::string& content, const std::string& line_comment,
                               const std::string& open, const std::string& close) {
  OracleSize result;
  bool in_block = false;

  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    std::string line = content.substr(pos, (nl == std::string::npos ? content.size() : nl) - pos);
    pos = (nl == std::string::npos) ? content.size() : nl + 1;
    ++result.loc;

    bool has_code = false, has_comment = in_block;
    std::size_t i = 0;
    while (i < line.size()) {
      if (in_block) {
        has_comment = true;
        if (!close.empty() && line.compare(i, close.size(), close) == 0) {
          in_block = false;
          i += close.size();
        } else {
          ++i;
        }
        continue;
      }
      if (!line_comment.empty() && line.compare(i, line_comment.size(), line_comment) == 0) {
        has_comment = true;
        break;  // rest of line is comment
      }
      if (!open.empty() && line.compare(i, open.size(), open) == 0) {
        has_comment = true;
        in_block = true;
        i += open.size();
        continue;
      }
      if (!std::isspace(static_cast<unsigned char>(line[i]))) has_code = true;
      ++i;
    }

    if (has_code) ++result.sloc;
    else if (has_comment) ++result.comment_lines;
  }
  return result;
}

namespace {

struct Flat {
  std::vector<int> seq;
  std::vector<std::pair<std::string, int>> origin;  // global index -> (path, local)
};

Flat flatten(const std::map<std::string, std::vector<std::string>>& files) {
  Flat flat;
  std::map<std::string, int> ids;
  int next = 0, sentinel = -1;
  for (const auto& [path, tokens] : files) {
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      auto [it, inserted] = ids.emplace(tokens[k], next);
      if (inserted) ++next;
      flat.seq.push_back(it->second);
      flat.origin.emplace_back(path, static_cast<int>(k));
    }
    flat.seq.push_back(sentinel--);
    flat.origin.emplace_back(path, -1);
  }
  return flat;
}

}  // namespace

std::vector<OracleCloneClass> oracle_detect_clones(
    const std::map<std::string, std::vector<std::string>>& files, int min_length) {
  Flat flat = flatten(files);
  const std::vector<int>& s = flat.seq;
  const int n = static_cast<int>(s.size());

  // Maximal-pair candidates: a left-maximal equal pair, extended right as far
  // as possible. Each candidate string is a witness of one maximal repeat.
  std::set<std::vector<int>> candidates;
  for (int i = 0; i < n; ++i) {
    if (s[i] < 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (s[i] != s[j]) continue;
      if (i > 0 && s[i - 1] == s[j - 1]) continue;  // extendable left as a pair
      int len = 0;
      while (s[i + len] == s[j + len]) ++len;  // sentinels stop the scan
      if (len < min_length) continue;
      candidates.emplace(s.begin() + i, s.begin() + i + len);
    }
  }

  std::vector<OracleCloneClass> classes;
  for (const auto& word : candidates) {
    OracleCloneClass cls;
    cls.length = static_cast<int>(word.size());
    const int m = cls.length;
    for (int p = 0; p + m <= n; ++p) {
      if (!std::equal(word.begin(), word.end(), s.begin() + p)) continue;
      cls.occurrences.push_back(flat.origin[p]);
    }
    std::sort(cls.occurrences.begin(), cls.occurrences.end());
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

OracleArchResult oracle_check_conformance(const OracleArchInput& input) {
  OracleArchResult result;
  for (const auto& [from, to] : input.deps) {
    auto f = input.file_component.find(from);
    auto t = input.file_component.find(to);
    if (f == input.file_component.end()) result.unmapped_files.insert(from);
    if (t == input.file_component.end()) result.unmapped_files.insert(to);
    if (f == input.file_component.end() || t == input.file_component.end()) continue;
    if (f->second == t->second) continue;
    if (!input.allowed.count({f->second, t->second})) result.forbidden.emplace_back(from, to);
  }
  std::sort(result.forbidden.begin(), result.forbidden.end());
  return result;
}

namespace {

bool valid_entity(const std::string& html, std::size_t amp, std::size_t* length) {
  std::size_t semi = html.find(';', amp);
  if (semi == std::string::npos || semi - amp > 12) return false;
  std::string body = html.substr(amp + 1, semi - amp - 1);
  *length = semi - amp + 1;
  if (body.empty()) return false;
  if (body[0] == '#') {
    if (body.size() < 2) return false;
    for (std::size_t i = 1; i < body.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(body[i]))) return false;
    return true;
  }
  static const std::set<std::string> known = {"amp", "lt", "gt", "quot", "apos", "nbsp"};
  return known.count(body) > 0;
}

}  // namespace

std::string check_html(const std::string& html) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = html.size();

  auto fail = [&](const std::string& what, std::size_t where) {
    return what + " near byte " + std::to_string(where) + ": '" +
           html.substr(where, std::min<std::size_t>(40, n - where)) + "'";
  };

  // Optional doctype.
  if (html.rfind("<!DOCTYPE", 0) == 0 || html.rfind("<!doctype", 0) == 0) {
    i = html.find('>');
    if (i == std::string::npos) return "unterminated doctype";
    ++i;
  }

  while (i < n) {
    char c = html[i];
    if (c == '>') return fail("stray '>'", i);
    if (c == '&') {
      std::size_t len = 0;
      if (!valid_entity(html, i, &len)) return fail("bad entity", i);
      i += len;
      continue;
    }
    if (c != '<') {
      ++i;
      continue;
    }

    // A tag begins.
    if (i + 1 >= n) return fail("dangling '<'", i);
    bool closing = html[i + 1] == '/';
    std::size_t p = i + (closing ? 2 : 1);
    std::size_t name_start = p;
    while (p < n && (std::isalnum(static_cast<unsigned char>(html[p])) || html[p] == '-'))
      ++p;
    std::string name = html.substr(name_start, p - name_start);
    if (name.empty()) return fail("missing tag name", i);

    if (closing) {
      while (p < n && std::isspace(static_cast<unsigned char>(html[p]))) ++p;
      if (p >= n || html[p] != '>') return fail("malformed closing tag", i);
      if (stack.empty() || stack.back() != name)
        return fail("mismatched </" + name + ">", i);
      stack.pop_back();
      i = p + 1;
      continue;
    }

    // Attributes.
    bool self_closed = false;
    while (p < n) {
      while (p < n && std::isspace(static_cast<unsigned char>(html[p]))) ++p;
      if (p >= n) return fail("unterminated tag", i);
      if (html[p] == '>') {
        ++p;
        break;
      }
      if (html[p] == '/' && p + 1 < n && html[p + 1] == '>') {
        self_closed = true;
        p += 2;
        break;
      }
      std::size_t attr_start = p;
      while (p < n && (std::isalnum(static_cast<unsigned char>(html[p])) || html[p] == '-' ||
                       html[p] == ':'))
        ++p;
      if (p == attr_start) return fail("bad attribute", p);
      if (p < n && html[p] == '=') {
        ++p;
        if (p >= n || html[p] != '"') return fail("unquoted attribute value", p);
        ++p;
        while (p < n && html[p] != '"') {
          if (html[p] == '<') return fail("'<' in attribute", p);
          if (html[p] == '&') {
            std::size_t len = 0;
            if (!valid_entity(html, p, &len)) return fail("bad entity in attribute", p);
            p += len;
            continue;
          }
          ++p;
        }
        if (p >= n) return fail("unterminated attribute value", attr_start);
        ++p;
      }
    }
    if (!self_closed) stack.push_back(name);
    i = p;

    // <style> may contain arbitrary text up to its closing tag.
    if (!self_closed && (name == "style" || name == "script")) {
      std::size_t end = html.find("</" + name + ">", i);
      if (end == std::string::npos) return fail("unterminated <" + name + ">", i);
      i = end;
    }
  }

  if (!stack.empty()) return "unclosed <" + stack.back() + ">";
  return "";
}

}  // namespace testsupport
