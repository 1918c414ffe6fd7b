#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conquard/resource.hpp"

namespace conquard {

struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
  double area() const { return w * h; }
};

struct TreeMapCell {
  std::string path;
  Rect rect;
  double weight = 0;
  int depth = 0;       // 0 = root
  bool leaf = false;   // no laid-out children
  std::optional<Assessment> assessment;  // coloring, when present
};

struct TreeMapLayout {
  std::string weight_metric;
  std::string color_key;  // node value key consulted for cell colors
  double width = 0, height = 0;
  std::vector<TreeMapCell> cells;  // depth-first, parents before children
};

/// Squarified tree map over the subtree weights of `weight_metric`. A leaf's
/// weight is its metric value (0 when missing); an inner node weighs the sum
/// of its children. Zero-weight nodes are omitted; children are processed by
/// descending weight, ties by name. Cell colors come from the assessment
/// stored under `color_key` (empty = uncolored). Throws ZeroTotalWeight when
/// the root weighs nothing.
TreeMapLayout layout_treemap(const ResourceNode& tree, const std::string& weight_metric,
                             const std::string& color_key, Rect bounds);

}  // namespace conquard
