#include "conquard/assess.hpp"

#include <algorithm>
#include <vector>

#include "conquard/errors.hpp"
#include "conquard/resource.hpp"

namespace conquard {

const char* color_name(Color c) {
  switch (c) {
    case Color::Green: return "GREEN";
    case Color::Yellow: return "YELLOW";
    case Color::Red: return "RED";
  }
  return "?";
}

void validate_rule(const ThresholdRule& rule) {
  if (rule.direction == Direction::HigherIsWorse) {
    if (rule.yellow > rule.red)
      throw Error("SpecError", "threshold rule for '" + rule.metric +
                                   "': yellow bound must not exceed red bound");
  } else {
    if (rule.yellow < rule.red)
      throw Error("SpecError", "threshold rule for '" + rule.metric +
                                   "': yellow bound must not be below red bound");
  }
}

Assessment assess(double value, const ThresholdRule& rule) {
  Assessment a;
  if (rule.direction == Direction::HigherIsWorse) {
    if (value >= rule.red) a.color = Color::Red;
    else if (value >= rule.yellow) a.color = Color::Yellow;
    else a.color = Color::Green;
  } else {
    if (value <= rule.red) a.color = Color::Red;
    else if (value <= rule.yellow) a.color = Color::Yellow;
    else a.color = Color::Green;
  }
  a.counts[static_cast<int>(a.color)] = 1;
  return a;
}

AggregationOp parse_aggregation_op(const std::string& name) {
  if (name == "sum") return AggregationOp::Sum;
  if (name == "max") return AggregationOp::Max;
  if (name == "min") return AggregationOp::Min;
  if (name == "avg") return AggregationOp::Avg;
  if (name == "median") return AggregationOp::Median;
  if (name == "avg_leaves") return AggregationOp::AvgLeaves;
  throw Error("SpecError", "unknown aggregation op '" + name +
                               "' (expected sum|max|min|avg|median|avg_leaves)");
}

const char* aggregation_op_name(AggregationOp op) {
  switch (op) {
    case AggregationOp::Sum: return "sum";
    case AggregationOp::Max: return "max";
    case AggregationOp::Min: return "min";
    case AggregationOp::Avg: return "avg";
    case AggregationOp::Median: return "median";
    case AggregationOp::AvgLeaves: return "avg_leaves";
  }
  return "?";
}

namespace {

double combine(AggregationOp op, const std::vector<double>& xs) {
  switch (op) {
    case AggregationOp::Sum: {
      double s = 0;
      for (double x : xs) s += x;
      return s;
    }
    case AggregationOp::Max: return *std::max_element(xs.begin(), xs.end());
    case AggregationOp::Min: return *std::min_element(xs.begin(), xs.end());
    case AggregationOp::Avg: {
      double s = 0;
      for (double x : xs) s += x;
      return s / static_cast<double>(xs.size());
    }
    case AggregationOp::Median: {
      std::vector<double> sorted = xs;
      std::sort(sorted.begin(), sorted.end());
      return sorted[(sorted.size() - 1) / 2];  // lower median
    }
    case AggregationOp::AvgLeaves: return 0;  // handled separately
  }
  return 0;
}

// Returns (sum over carrying leaves, leaf count) for AVG_LEAVES.
std::pair<double, long long> leaf_sum(ResourceNode& node, const std::string& metric,
                                      Diagnostics& diags) {
  if (node.children.empty()) {
    if (auto v = node.number(metric)) return {*v, 1};
    return {0, 0};
  }
  double sum = 0;
  long long count = 0;
  for (auto& child : node.children) {
    auto [s, c] = leaf_sum(*child, metric, diags);
    sum += s;
    count += c;
  }
  if (count > 0)
    node.attach_value(metric, sum / static_cast<double>(count), diags);
  return {sum, count};
}

void aggregate_recursive(ResourceNode& node, const std::string& metric,
                         AggregationOp op, Diagnostics& diags) {
  if (node.children.empty()) return;
  for (auto& child : node.children) aggregate_recursive(*child, metric, op, diags);
  std::vector<double> child_values;
  for (auto& child : node.children)
    if (auto v = child->number(metric)) child_values.push_back(*v);
  // A node with no carrying children keeps whatever it already has (the
  // MISSING marker, usually); zero is never assumed.
  if (child_values.empty()) return;
  node.attach_value(metric, combine(op, child_values), diags);
}

}  // namespace

void aggregate_values(ResourceNode& tree, const std::string& metric, AggregationOp op,
                      Diagnostics& diags) {
  if (op == AggregationOp::AvgLeaves) {
    leaf_sum(tree, metric, diags);
    return;
  }
  aggregate_recursive(tree, metric, op, diags);
}

namespace {

// Returns the aggregated assessment of this subtree under `key`, or nullptr
// if no node in it carries one.
const Assessment* aggregate_colors(ResourceNode& node, const std::string& key,
                                   Diagnostics& diags) {
  if (node.children.empty()) return node.assessment(key);

  Assessment combined;
  bool any = false;
  for (auto& child : node.children) {
    const Assessment* a = aggregate_colors(*child, key, diags);
    if (!a) continue;
    any = true;
    combined.color = std::max(combined.color, a->color);
    for (int i = 0; i < 3; ++i) combined.counts[i] += a->counts[i];
  }
  if (!any) return node.assessment(key);

  combined.message = std::to_string(combined.counts[0]) + " GREEN, " +
                     std::to_string(combined.counts[1]) + " YELLOW, " +
                     std::to_string(combined.counts[2]) + " RED";
  node.attach_value(key, combined, diags);
  return node.assessment(key);
}

}  // namespace

void aggregate_assessments(ResourceNode& tree, const std::string& key,
                           Diagnostics& diags) {
  aggregate_colors(tree, key, diags);
}

}  // namespace conquard
