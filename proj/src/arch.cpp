#include "conquard/arch.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "conquard/errors.hpp"
#include "conquard/glob.hpp"
#include "conquard/keyvalue.hpp"

namespace conquard {

bool ArchitectureSpec::edge_allowed(const std::string& from, const std::string& to) const {
  if (from == to) return true;
  for (const auto& [f, t] : allowed)
    if (f == from && t == to) return true;
  return false;
}

ArchitectureSpec parse_architecture(const std::string& text) {
  ArchitectureSpec spec;
  ArchComponent* current = nullptr;

  for (const auto& line : split_config_lines(text)) {
    if (line.indent > 0) {
      if (!current)
        throw Error("SpecError", "key outside a component section", line.number);
      auto [key, value] = parse_keyvalue_line(line);
      if (key != "match")
        throw Error("SpecError", "unknown component key '" + key + "'", line.number);
      if (auto* l = std::get_if<std::vector<std::string>>(&value)) current->match = *l;
      else throw Error("SpecError", "match must be a list of globs", line.number);
      continue;
    }

    auto space = line.text.find(' ');
    std::string keyword = line.text.substr(0, space);
    if (keyword == "component") {
      std::string name =
          space == std::string::npos ? "" : line.text.substr(space + 1);
      while (!name.empty() && name.front() == ' ') name.erase(name.begin());
      if (name.empty())
        throw Error("SpecError", "component name missing", line.number);
      for (const auto& c : spec.components)
        if (c.name == name)
          throw Error("SpecError", "component '" + name + "' declared twice",
                      line.number);
      spec.components.push_back({name, {}});
      current = &spec.components.back();
    } else if (keyword == "allow") {
      static const std::regex pattern(R"(^allow\s+(\S+)\s*->\s*(\S+)\s*$)");
      std::smatch m;
      if (!std::regex_match(line.text, m, pattern))
        throw Error("SpecError", "expected 'allow <from> -> <to>'", line.number);
      spec.allowed.emplace_back(m[1], m[2]);
      current = nullptr;
    } else {
      throw Error("SpecError", "unknown directive '" + keyword + "'", line.number);
    }
  }

  std::set<std::string> names;
  for (const auto& c : spec.components) names.insert(c.name);
  for (const auto& [from, to] : spec.allowed) {
    if (!names.count(from))
      throw Error("SpecError", "allow edge references unknown component '" + from + "'");
    if (!names.count(to))
      throw Error("SpecError", "allow edge references unknown component '" + to + "'");
  }
  return spec;
}

namespace {

std::string strip_extension(const std::string& path) {
  auto dot = path.rfind('.');
  auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

// Resolves an import capture to a corpus file: exact path, path suffix, or
// the dotted module form with '.' mapped to '/'. Deterministic: the
// lexicographically smallest match wins.
std::string resolve_target(const std::string& capture,
                           const std::set<std::string>& paths,
                           const std::map<std::string, std::vector<std::string>>& by_stem) {
  if (paths.count(capture)) return capture;

  std::vector<std::string> candidates;
  auto try_stem = [&](const std::string& stem) {
    auto it = by_stem.find(stem);
    if (it == by_stem.end()) return;
    for (const auto& p : it->second) candidates.push_back(p);
  };

  // Path-like captures (`a/b.h`) match by suffix; dotted module captures
  // (`a.b`) map dots to slashes and match extension-stripped stems.
  std::string slashed = capture;
  std::replace(slashed.begin(), slashed.end(), '.', '/');

  for (const auto& p : paths) {
    if (p.size() > capture.size() &&
        p.compare(p.size() - capture.size(), capture.size(), capture) == 0 &&
        p[p.size() - capture.size() - 1] == '/')
      candidates.push_back(p);
  }
  try_stem(slashed);

  if (candidates.empty()) return "";
  return *std::min_element(candidates.begin(), candidates.end());
}

}  // namespace

std::vector<Dependency> extract_dependencies(const TokenCorpus& corpus,
                                             Diagnostics& diags) {
  std::set<std::string> paths;
  std::map<std::string, std::vector<std::string>> by_stem;
  for (const auto& file : corpus.files) {
    paths.insert(file.path);
    // Index by every stem suffix: "a/b/c" -> "a/b/c", "b/c", "c".
    std::string stem = strip_extension(file.path);
    std::size_t pos = 0;
    while (true) {
      by_stem[stem.substr(pos)].push_back(file.path);
      pos = stem.find('/', pos);
      if (pos == std::string::npos) break;
      ++pos;
    }
  }
  for (auto& [stem, files] : by_stem) std::sort(files.begin(), files.end());

  std::vector<Dependency> deps;
  for (const auto& file : corpus.files) {
    std::vector<std::regex> patterns;
    for (const auto& p : file.profile->import_patterns) {
      try {
        patterns.emplace_back(p);
      } catch (const std::regex_error& e) {
        diags.warn("bad import pattern in profile '" + file.profile->name +
                   "': " + e.what());
      }
    }
    if (patterns.empty()) continue;

    int line_no = 0;
    std::size_t pos = 0;
    const std::string& content = file.content;
    while (pos <= content.size()) {
      std::size_t nl = content.find('\n', pos);
      std::string line = content.substr(
          pos, (nl == std::string::npos ? content.size() : nl) - pos);
      ++line_no;
      pos = (nl == std::string::npos) ? content.size() + 1 : nl + 1;
      if (line.empty()) continue;

      for (const auto& pattern : patterns) {
        std::smatch m;
        if (!std::regex_search(line, m, pattern) || m.size() < 2) continue;
        std::string capture = m[1];
        if (capture.empty()) continue;
        std::string target = resolve_target(capture, paths, by_stem);
        Dependency dep;
        dep.from = file.path;
        dep.line = line_no;
        if (target.empty()) {
          dep.to = capture;
          dep.internal = false;
        } else {
          dep.to = target;
          dep.internal = true;
        }
        if (dep.internal && dep.to == dep.from) break;  // self-import dropped
        deps.push_back(std::move(dep));
        break;  // first matching pattern wins for a line
      }
    }
  }
  return deps;
}

ConformanceResult check_conformance(const std::vector<Dependency>& deps,
                                    const ArchitectureSpec& spec) {
  ConformanceResult result;

  // Component lookup with the multi-match spec error.
  std::map<std::string, std::string> component_of;
  auto map_file = [&](const std::string& path) -> const std::string& {
    auto it = component_of.find(path);
    if (it != component_of.end()) return it->second;
    std::string found;
    for (const auto& comp : spec.components) {
      if (glob_match_any(comp.match, path)) {
        if (!found.empty())
          throw Error("SpecError", "file '" + path + "' matches both component '" +
                                       found + "' and '" + comp.name + "'");
        found = comp.name;
      }
    }
    return component_of.emplace(path, std::move(found)).first->second;
  };

  std::set<std::string> unmapped_reported;
  std::map<std::pair<std::string, std::string>, long long> edge_counts;

  std::vector<Dependency> sorted = deps;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Dependency& a, const Dependency& b) {
                     if (a.from != b.from) return a.from < b.from;
                     if (a.line != b.line) return a.line < b.line;
                     return a.to < b.to;
                   });

  std::vector<Violation> forbidden;
  for (const auto& dep : sorted) {
    if (!dep.internal) {
      ++result.external_dependencies;
      continue;
    }
    ++result.internal_dependencies;
    const std::string& from_comp = map_file(dep.from);
    const std::string& to_comp = map_file(dep.to);

    for (const auto& [path, comp] :
         {std::pair(dep.from, from_comp), std::pair(dep.to, to_comp)}) {
      if (comp.empty() && unmapped_reported.insert(path).second) {
        Violation v;
        v.dependency.from = path;
        v.reason = ViolationReason::UnmappedFile;
        result.violations.push_back(std::move(v));
      }
    }
    if (from_comp.empty() || to_comp.empty()) continue;

    ++edge_counts[{from_comp, to_comp}];
    if (!spec.edge_allowed(from_comp, to_comp)) {
      Violation v;
      v.dependency = dep;
      v.from_component = from_comp;
      v.to_component = to_comp;
      v.reason = ViolationReason::ForbiddenEdge;
      forbidden.push_back(std::move(v));
    }
  }

  // Unmapped-file violations sort by path ahead of the edge violations,
  // which are already in (path, line) order.
  std::sort(result.violations.begin(), result.violations.end(),
            [](const Violation& a, const Violation& b) {
              return a.dependency.from < b.dependency.from;
            });
  result.violations.insert(result.violations.end(),
                           std::make_move_iterator(forbidden.begin()),
                           std::make_move_iterator(forbidden.end()));

  for (const auto& [edge, count] : edge_counts)
    result.edge_summary.push_back(
        {edge.first, edge.second, count, spec.edge_allowed(edge.first, edge.second)});
  return result;
}

}  // namespace conquard
