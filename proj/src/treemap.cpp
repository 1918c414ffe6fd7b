#include "conquard/treemap.hpp"

#include <algorithm>
#include <cmath>

#include "conquard/errors.hpp"

namespace conquard {

namespace {

struct Weighted {
  const ResourceNode* node;
  double weight;
};

double subtree_weight(const ResourceNode& node, const std::string& metric) {
  if (node.children.empty()) return std::max(0.0, node.number(metric).value_or(0.0));
  double sum = 0;
  for (const auto& child : node.children) sum += subtree_weight(*child, metric);
  return sum;
}

// Worst aspect ratio of a row of areas laid along a side of length `side`.
double worst_ratio(const std::vector<double>& row, double side) {
  double total = 0, min_area = row.front(), max_area = row.front();
  for (double a : row) {
    total += a;
    min_area = std::min(min_area, a);
    max_area = std::max(max_area, a);
  }
  double s2 = total * total, w2 = side * side;
  return std::max(w2 * max_area / s2, s2 / (w2 * min_area));
}

class Builder {
public:
  Builder(TreeMapLayout& layout, const std::string& metric, const std::string& color_key)
      : layout_(layout), metric_(metric), color_key_(color_key) {}

  void place(const ResourceNode& node, double weight, Rect rect, int depth) {
    TreeMapCell cell;
    cell.path = node.path;
    cell.rect = rect;
    cell.weight = weight;
    cell.depth = depth;
    if (!color_key_.empty())
      if (const Assessment* a = node.assessment(color_key_)) cell.assessment = *a;

    std::vector<Weighted> children;
    for (const auto& child : node.children) {
      double w = subtree_weight(*child, metric_);
      if (w > 0) children.push_back({child.get(), w});
    }
    cell.leaf = children.empty();
    layout_.cells.push_back(cell);
    if (children.empty()) return;

    std::sort(children.begin(), children.end(), [](const Weighted& a, const Weighted& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.node->path < b.node->path;
    });

    // Scale child weights to the rectangle's area.
    double total = 0;
    for (const auto& c : children) total += c.weight;
    double scale = rect.area() / total;

    squarify(children, scale, rect, depth + 1);
  }

private:
  void squarify(const std::vector<Weighted>& children, double scale, Rect remaining,
                int depth) {
    std::size_t i = 0;
    while (i < children.size()) {
      // Grow the row while the worst aspect ratio does not degrade.
      double side = std::min(remaining.w, remaining.h);
      std::vector<double> row{children[i].weight * scale};
      std::size_t j = i + 1;
      while (j < children.size()) {
        std::vector<double> next = row;
        next.push_back(children[j].weight * scale);
        if (side > 0 && worst_ratio(next, side) <= worst_ratio(row, side)) {
          row = std::move(next);
          ++j;
        } else {
          break;
        }
      }

      double row_area = 0;
      for (double a : row) row_area += a;
      bool last_row = j == children.size();
      bool horizontal = remaining.w >= remaining.h;  // strip against the shorter side

      if (horizontal) {
        // Vertical strip at the left, children stacked top to bottom.
        double strip_w = last_row ? remaining.w
                                  : (remaining.h > 0 ? row_area / remaining.h : remaining.w);
        double y = remaining.y;
        for (std::size_t k = i; k < j; ++k) {
          bool last_in_row = k + 1 == j;
          double h = last_in_row ? remaining.y + remaining.h - y
                                 : (strip_w > 0 ? (children[k].weight * scale) / strip_w : 0);
          place(*children[k].node, children[k].weight,
                Rect{remaining.x, y, strip_w, h}, depth);
          y += h;
        }
        remaining.x += strip_w;
        remaining.w -= strip_w;
      } else {
        // Horizontal strip at the top, children laid left to right.
        double strip_h = last_row ? remaining.h
                                  : (remaining.w > 0 ? row_area / remaining.w : remaining.h);
        double x = remaining.x;
        for (std::size_t k = i; k < j; ++k) {
          bool last_in_row = k + 1 == j;
          double w = last_in_row ? remaining.x + remaining.w - x
                                 : (strip_h > 0 ? (children[k].weight * scale) / strip_h : 0);
          place(*children[k].node, children[k].weight,
                Rect{x, remaining.y, w, strip_h}, depth);
          x += w;
        }
        remaining.y += strip_h;
        remaining.h -= strip_h;
      }
      i = j;
    }
  }

  TreeMapLayout& layout_;
  const std::string& metric_;
  const std::string& color_key_;
};

}  // namespace

TreeMapLayout layout_treemap(const ResourceNode& tree, const std::string& weight_metric,
                             const std::string& color_key, Rect bounds) {
  double root_weight = subtree_weight(tree, weight_metric);
  if (!(root_weight > 0))
    throw Error("ZeroTotalWeight",
                "tree carries no positive '" + weight_metric + "' weight");

  TreeMapLayout layout;
  layout.weight_metric = weight_metric;
  layout.color_key = color_key;
  layout.width = bounds.w;
  layout.height = bounds.h;

  Builder builder(layout, weight_metric, color_key);
  builder.place(tree, root_weight, bounds, 0);
  return layout;
}

}  // namespace conquard
