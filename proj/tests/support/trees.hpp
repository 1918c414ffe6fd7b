#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>

#include "conquard/resource.hpp"

namespace testsupport {

/// Random resource tree; every file leaf gets `metric` with a random value
/// in [0, 100]. Some leaves stay MISSING when `with_gaps` is set.
inline std::unique_ptr<conquard::ResourceNode> random_tree(std::mt19937& rng,
                                                           const std::string& metric,
                                                           int max_leaves,
                                                           bool with_gaps = false) {
  using conquard::ResourceKind;
  using conquard::ResourceNode;

  auto root = std::make_unique<ResourceNode>();
  root->kind = ResourceKind::Directory;
  int leaves = std::uniform_int_distribution<int>(1, max_leaves)(rng);
  int made = 0;
  conquard::Diagnostics diags;

  std::function<void(ResourceNode&, int)> fill = [&](ResourceNode& node, int depth) {
    int children = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int c = 0; c < children && made < leaves; ++c) {
      auto child = std::make_unique<ResourceNode>();
      std::string name = (depth > 0 ? "n" : "top") + std::to_string(made) + "d" +
                         std::to_string(depth) + "c" + std::to_string(c);
      child->path = node.path.empty() ? name : node.path + "/" + name;
      bool leaf = depth >= 4 || std::uniform_int_distribution<int>(0, 2)(rng) > 0;
      if (leaf) {
        child->kind = ResourceKind::File;
        ++made;
        if (!with_gaps || std::uniform_int_distribution<int>(0, 3)(rng) > 0) {
          double v = std::uniform_real_distribution<double>(0, 100)(rng);
          child->attach_value(metric, v, diags);
        }
      } else {
        child->kind = ResourceKind::Directory;
        fill(*child, depth + 1);
        if (child->children.empty()) {
          child->kind = ResourceKind::File;
          ++made;
          child->attach_value(metric, 1.0, diags);
        }
      }
      node.children.push_back(std::move(child));
    }
  };
  while (made < leaves) fill(*root, 0);
  return root;
}

}  // namespace testsupport
