#pragma once

#include <map>
#include <string>
#include <vector>

#include "conquard/diagnostics.hpp"

namespace conquard {

/// How procedures are recognized in a token stream.
enum class ProcedureStyle {
  None,             // no procedure detection
  Keywords,         // a keyword from procedure_keywords introduces one
  IdentParensBrace  // IDENTIFIER ( ... ) { pattern
};

/// Lexical description of one language family. Drives tokenization, the
/// structure metrics and import extraction.
struct LanguageProfile {
  std::string name;
  std::vector<std::string> extensions;     // with leading dot, e.g. ".cpp"
  std::string line_comment;                // "" = none
  std::string block_comment_open;          // "" = none
  std::string block_comment_close;
  std::vector<std::string> string_delims;  // single-char delimiters
  std::vector<std::string> branch_keywords;
  std::vector<std::string> loop_keywords;
  std::vector<std::string> procedure_keywords;
  ProcedureStyle procedure_style = ProcedureStyle::None;
  std::vector<std::string> import_patterns;  // regexes with one capture group

  bool is_keyword(const std::string& word) const;
  bool is_branch_keyword(const std::string& word) const;
  bool is_loop_keyword(const std::string& word) const;
};

/// The active profiles for one run. Extension sets must stay disjoint.
class ProfileSet {
public:
  /// Throws ProfileError when an extension is claimed twice.
  void add(LanguageProfile profile);

  const LanguageProfile* by_extension(const std::string& extension) const;
  const LanguageProfile* by_name(const std::string& name) const;
  const std::map<std::string, LanguageProfile>& profiles() const { return profiles_; }

private:
  std::map<std::string, LanguageProfile> profiles_;
  std::map<std::string, std::string> extension_to_profile_;
};

/// C-like surface syntax (Java, C#, C, C++) and a `#`-commented script
/// profile (Python, shell, Ruby, Perl).
ProfileSet builtin_profiles();

/// Parses a profile file (`profile <name>` sections in the shared key-value
/// format) and merges it over `base`; same-name sections replace built-ins.
ProfileSet load_profiles(const std::string& text, const ProfileSet& base,
                         Diagnostics& diags);

}  // namespace conquard
