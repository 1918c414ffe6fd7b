#include "conquard/language.hpp"

#include <algorithm>

#include "conquard/errors.hpp"
#include "conquard/keyvalue.hpp"

namespace conquard {

namespace {

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

bool LanguageProfile::is_branch_keyword(const std::string& word) const {
  return contains(branch_keywords, word);
}

bool LanguageProfile::is_loop_keyword(const std::string& word) const {
  return contains(loop_keywords, word);
}

bool LanguageProfile::is_keyword(const std::string& word) const {
  return is_branch_keyword(word) || is_loop_keyword(word) ||
         contains(procedure_keywords, word);
}

void ProfileSet::add(LanguageProfile profile) {
  for (const auto& ext : profile.extensions) {
    auto it = extension_to_profile_.find(ext);
    if (it != extension_to_profile_.end() && it->second != profile.name)
      throw Error("ProfileError", "extension '" + ext + "' claimed by both '" +
                                      it->second + "' and '" + profile.name + "'");
  }
  // Replacing a profile releases its previous extensions first.
  auto old = profiles_.find(profile.name);
  if (old != profiles_.end()) {
    for (const auto& ext : old->second.extensions) extension_to_profile_.erase(ext);
    profiles_.erase(old);
  }
  for (const auto& ext : profile.extensions) extension_to_profile_[ext] = profile.name;
  profiles_.emplace(profile.name, std::move(profile));
}

const LanguageProfile* ProfileSet::by_extension(const std::string& extension) const {
  auto it = extension_to_profile_.find(extension);
  if (it == extension_to_profile_.end()) return nullptr;
  return &profiles_.at(it->second);
}

const LanguageProfile* ProfileSet::by_name(const std::string& name) const {
  auto it = profiles_.find(name);
  return it == profiles_.end() ? nullptr : &it->second;
}

ProfileSet builtin_profiles() {
  ProfileSet set;

  LanguageProfile clike;
  clike.name = "c-like";
  clike.extensions = {".c", ".h", ".cpp", ".hpp", ".cc", ".hh", ".cxx", ".hxx",
                      ".java", ".cs"};
  clike.line_comment = "//";
  clike.block_comment_open = "/*";
  clike.block_comment_close = "*/";
  clike.string_delims = {"\"", "'"};
  clike.branch_keywords = {"if", "while", "for", "case", "catch", "foreach"};
  clike.loop_keywords = {"while", "for", "do", "foreach"};
  clike.procedure_style = ProcedureStyle::IdentParensBrace;
  clike.import_patterns = {
      R"(^\s*#\s*include\s*[<"]([^>"]+)[>"])",
      R"(^\s*import\s+(?:static\s+)?([A-Za-z_][A-Za-z0-9_.]*)\s*;)",
      R"(^\s*using\s+([A-Za-z_][A-Za-z0-9_.]*)\s*;)",
  };
  set.add(std::move(clike));

  LanguageProfile script;
  script.name = "script-like";
  script.extensions = {".py", ".sh", ".rb", ".pl"};
  script.line_comment = "#";
  script.string_delims = {"\"", "'"};
  script.branch_keywords = {"if", "elif", "while", "for", "case", "except", "rescue"};
  script.loop_keywords = {"while", "for", "until"};
  script.procedure_keywords = {"def", "function", "sub"};
  script.procedure_style = ProcedureStyle::Keywords;
  script.import_patterns = {
      R"(^\s*import\s+([A-Za-z_][A-Za-z0-9_.]*))",
      R"(^\s*from\s+([A-Za-z_][A-Za-z0-9_.]*)\s+import\b)",
      R"(^\s*require\s+['"]([^'"]+)['"])",
  };
  set.add(std::move(script));

  return set;
}

namespace {

std::vector<std::string> want_list(const ParamValue& v, const std::string& key, int line) {
  if (const auto* l = std::get_if<std::vector<std::string>>(&v)) return *l;
  throw Error("ProfileError", "profile key '" + key + "' must be a list", line);
}

std::string want_string(const ParamValue& v, const std::string& key, int line) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* f = std::get_if<FormalRef>(&v)) return f->name;  // bare word ok here
  throw Error("ProfileError", "profile key '" + key + "' must be a string", line);
}

}  // namespace

ProfileSet load_profiles(const std::string& text, const ProfileSet& base,
                         Diagnostics& diags) {
  ProfileSet merged = base;
  LanguageProfile current;
  bool open = false;

  auto flush = [&] {
    if (!open) return;
    if (current.extensions.empty())
      diags.warn("profile '" + current.name + "' lists no file extensions");
    merged.add(current);
    current = LanguageProfile{};
    open = false;
  };

  for (const auto& line : split_config_lines(text)) {
    if (line.indent == 0) {
      // `profile <name>`
      auto space = line.text.find(' ');
      std::string keyword = line.text.substr(0, space);
      if (keyword != "profile" || space == std::string::npos)
        throw Error("ProfileError", "expected 'profile <name>'", line.number);
      flush();
      current.name = line.text.substr(space + 1);
      while (!current.name.empty() && current.name.front() == ' ')
        current.name.erase(current.name.begin());
      if (current.name.empty())
        throw Error("ProfileError", "profile name missing", line.number);
      open = true;
      continue;
    }
    if (!open)
      throw Error("ProfileError", "key outside a profile section", line.number);
    auto [key, value] = parse_keyvalue_line(line);
    if (key == "extensions") current.extensions = want_list(value, key, line.number);
    else if (key == "line_comment") current.line_comment = want_string(value, key, line.number);
    else if (key == "block_comment_open")
      current.block_comment_open = want_string(value, key, line.number);
    else if (key == "block_comment_close")
      current.block_comment_close = want_string(value, key, line.number);
    else if (key == "strings") current.string_delims = want_list(value, key, line.number);
    else if (key == "branch_keywords")
      current.branch_keywords = want_list(value, key, line.number);
    else if (key == "loop_keywords")
      current.loop_keywords = want_list(value, key, line.number);
    else if (key == "procedure_keywords") {
      current.procedure_keywords = want_list(value, key, line.number);
      current.procedure_style = ProcedureStyle::Keywords;
    } else if (key == "procedure_pattern") {
      std::string pat = want_string(value, key, line.number);
      if (pat == "ident-parens-brace") current.procedure_style = ProcedureStyle::IdentParensBrace;
      else if (pat == "none") current.procedure_style = ProcedureStyle::None;
      else
        throw Error("ProfileError",
                    "procedure_pattern must be 'ident-parens-brace' or 'none'", line.number);
    } else if (key == "imports") {
      current.import_patterns = want_list(value, key, line.number);
    } else {
      throw Error("ProfileError", "unknown profile key '" + key + "'", line.number);
    }
  }
  flush();
  return merged;
}

}  // namespace conquard
