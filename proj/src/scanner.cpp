#include "conquard/scanner.hpp"

#include <algorithm>
#include <fstream>

#include "conquard/errors.hpp"
#include "conquard/glob.hpp"

namespace fs = std::filesystem;

namespace conquard {

namespace {

bool looks_binary(const fs::path& file, Diagnostics& diags, const std::string& rel) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    diags.warn("cannot open '" + rel + "'; skipped");
    return true;
  }
  char buf[4096];
  in.read(buf, sizeof buf);
  std::streamsize got = in.gcount();
  for (std::streamsize i = 0; i < got; ++i) {
    if (buf[i] == '\0') {
      diags.warn("'" + rel + "' looks binary (NUL byte); skipped");
      return true;
    }
  }
  return false;
}

// Returns a node for `dir` or null if nothing under it survived filtering.
std::unique_ptr<ResourceNode> scan_dir(const fs::path& dir, const std::string& rel,
                                       const std::vector<std::string>& include,
                                       const std::vector<std::string>& exclude,
                                       Diagnostics& diags) {
  std::vector<fs::directory_entry> entries;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; it != end; it.increment(ec)) {
    if (ec) break;
    entries.push_back(*it);
  }
  if (ec) diags.warn("cannot read directory '" + (rel.empty() ? "." : rel) + "': " +
                     ec.message());

  std::sort(entries.begin(), entries.end(),
            [](const fs::directory_entry& a, const fs::directory_entry& b) {
              return a.path().filename().string() < b.path().filename().string();
            });

  auto node = std::make_unique<ResourceNode>();
  node->path = rel;
  node->kind = ResourceKind::Directory;

  for (const auto& entry : entries) {
    std::string name = entry.path().filename().string();
    std::string child_rel = rel.empty() ? name : rel + "/" + name;
    std::error_code type_ec;
    if (entry.is_symlink(type_ec)) continue;  // no cycles via links
    if (entry.is_directory(type_ec)) {
      // A directory is only pruned eagerly when its own path is excluded;
      // patterns like `gen/*` must still be tested file by file.
      if (glob_match_any(exclude, child_rel)) continue;
      auto child = scan_dir(entry.path(), child_rel, include, exclude, diags);
      if (child) node->children.push_back(std::move(child));
    } else if (entry.is_regular_file(type_ec)) {
      if (!glob_match_any(include, child_rel)) continue;
      if (glob_match_any(exclude, child_rel)) continue;  // exclude wins
      if (looks_binary(entry.path(), diags, child_rel)) continue;
      auto child = std::make_unique<ResourceNode>();
      child->path = child_rel;
      child->kind = ResourceKind::File;
      node->children.push_back(std::move(child));
    }
    if (type_ec) diags.warn("cannot stat '" + child_rel + "': " + type_ec.message());
  }

  if (!rel.empty() && node->children.empty()) return nullptr;  // prune empty dirs
  return node;
}

}  // namespace

std::shared_ptr<ResourceNode> scan(const fs::path& root, std::vector<std::string> include,
                                   const std::vector<std::string>& exclude,
                                   Diagnostics& diags) {
  std::error_code ec;
  if (!fs::is_directory(root, ec) || ec)
    throw Error("RootNotFound", "'" + root.string() + "' is not a readable directory");
  if (include.empty()) include.push_back("**/*");
  auto node = scan_dir(root, "", include, exclude, diags);
  node->scan_root = root.string();
  return std::shared_ptr<ResourceNode>(node.release());
}

std::shared_ptr<TokenCorpus> tokenize_tree(const std::shared_ptr<ResourceNode>& tree,
                                           const fs::path& fs_root,
                                           const ProfileSet& profiles,
                                           Diagnostics& diags) {
  auto corpus = std::make_shared<TokenCorpus>();
  corpus->root = tree;
  corpus->profiles = profiles;

  tree->visit([&](ResourceNode& node) {
    if (!node.is_file()) return;
    std::string ext;
    auto dot = node.path.rfind('.');
    auto slash = node.path.rfind('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
      ext = node.path.substr(dot);
    const LanguageProfile* profile = corpus->profiles.by_extension(ext);
    if (!profile) return;

    std::ifstream in(fs_root / fs::path(node.path), std::ios::binary);
    if (!in) {
      diags.warn("cannot read '" + node.path + "'; left unmeasured");
      return;
    }
    std::string raw((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

    CorpusFile file;
    file.node = &node;
    file.path = node.path;
    file.profile = profile;
    file.content = sanitize_utf8(raw, diags, node.path);
    file.lexed = tokenize(file.content, *profile, diags, node.path);
    node.language = profile->name;
    corpus->files.push_back(std::move(file));
  });

  std::sort(corpus->files.begin(), corpus->files.end(),
            [](const CorpusFile& a, const CorpusFile& b) { return a.path < b.path; });
  return corpus;
}

}  // namespace conquard
