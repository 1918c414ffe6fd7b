#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "conquard/diagnostics.hpp"
#include "conquard/language.hpp"
#include "conquard/resource.hpp"
#include "conquard/tokenizer.hpp"

namespace conquard {

/// Builds the resource tree of `root`. A file is kept when it matches at
/// least one include glob and no exclude glob (exclude wins; default include
/// is `**/*`). Binary files (NUL byte within the first 4096 bytes) and
/// unreadable entries are skipped with a warning. Empty directories are
/// pruned; children come out sorted by name.
std::shared_ptr<ResourceNode> scan(const std::filesystem::path& root,
                                   std::vector<std::string> include,
                                   const std::vector<std::string>& exclude,
                                   Diagnostics& diags);

/// One analyzed file: its resource node, content, lexical profile and token
/// stream. Files without a matching language profile are not part of the
/// corpus (they stay in the tree, unmeasured).
struct CorpusFile {
  ResourceNode* node = nullptr;
  std::string path;
  const LanguageProfile* profile = nullptr;
  std::string content;
  TokenizedFile lexed;
};

struct TokenCorpus {
  std::shared_ptr<ResourceNode> root;
  ProfileSet profiles;
  std::vector<CorpusFile> files;  // sorted by path
};

/// Reads and tokenizes every file of the tree that has a profile for its
/// extension. `fs_root` is the directory `tree` was scanned from.
std::shared_ptr<TokenCorpus> tokenize_tree(const std::shared_ptr<ResourceNode>& tree,
                                           const std::filesystem::path& fs_root,
                                           const ProfileSet& profiles,
                                           Diagnostics& diags);

}  // namespace conquard
