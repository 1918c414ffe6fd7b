#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conquard/assess.hpp"
#include "conquard/diagnostics.hpp"

namespace conquard {

/// A value attached to a resource node: either a plain number or a
/// traffic-light assessment. Missing metrics are simply absent keys.
using MetricValue = std::variant<double, Assessment>;

enum class ResourceKind { Directory, File };

/// One node of the hierarchical model of the analyzed system. Paths are
/// relative to the scanned root, `/`-separated; the root has path "".
struct ResourceNode {
  std::string path;
  ResourceKind kind = ResourceKind::Directory;
  std::string language;  // profile name, set during tokenization
  std::string scan_root; // filesystem origin; set on the root node by scan()
  std::map<std::string, MetricValue> values;
  std::vector<std::unique_ptr<ResourceNode>> children;  // sorted by name

  bool is_file() const { return kind == ResourceKind::File; }
  std::string name() const {
    auto slash = path.rfind('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
  }

  /// Stores a value under the metric id. Overwriting an existing value is
  /// allowed but recorded as a warning.
  void attach_value(const std::string& metric, MetricValue value, Diagnostics& diags);

  /// Reads a previously attached value; nullopt is the MISSING marker.
  std::optional<MetricValue> value(const std::string& metric) const;
  std::optional<double> number(const std::string& metric) const;
  const Assessment* assessment(const std::string& metric) const;

  ResourceNode* find(const std::string& node_path);
  const ResourceNode* find(const std::string& node_path) const;

  /// Depth-first traversal in sorted child order, parent before children.
  template <typename Fn>
  void visit(Fn&& fn) {
    fn(*this);
    for (auto& child : children) child->visit(fn);
  }
  template <typename Fn>
  void visit(Fn&& fn) const {
    fn(*this);
    for (const auto& child : children) child->visit(fn);
  }
};

/// Stable one-line-per-node text form used by tests and --verbose dumps to
/// compare trees byte for byte.
std::string serialize_tree(const ResourceNode& root);

}  // namespace conquard
