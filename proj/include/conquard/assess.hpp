#pragma once

#include <array>
#include <string>

namespace conquard {

/// Traffic-light classification, ordered GREEN < YELLOW < RED so that the
/// worst color wins during aggregation.
enum class Color { Green, Yellow, Red };

const char* color_name(Color c);

struct Assessment {
  Color color = Color::Green;
  std::string message;
  /// Histogram of the originally assessed descendants (files, typically);
  /// filled by aggregate_assessments for inner nodes. Index by Color.
  std::array<long long, 3> counts{0, 0, 0};
};

enum class Direction { HigherIsWorse, LowerIsWorse };

struct ThresholdRule {
  std::string metric;
  Direction direction = Direction::HigherIsWorse;
  double yellow = 0;
  double red = 0;
};

/// Classifies a value. Boundary values fall into the worse class: for
/// HIGHER_IS_WORSE, value == yellow is YELLOW and value == red is RED.
Assessment assess(double value, const ThresholdRule& rule);

/// Validates bound consistency (yellow not more severe than red).
/// Throws Error("SpecError") otherwise.
void validate_rule(const ThresholdRule& rule);

enum class AggregationOp { Sum, Max, Min, Avg, Median, AvgLeaves };

AggregationOp parse_aggregation_op(const std::string& name);
const char* aggregation_op_name(AggregationOp op);

struct ResourceNode;
class Diagnostics;

/// Bottom-up value aggregation: every directory whose children carry the
/// metric receives op over those child values. MISSING children are
/// skipped. MEDIAN is the lower median; AVG is unweighted over direct
/// children; AVG_LEAVES weights by leaf count.
void aggregate_values(ResourceNode& tree, const std::string& metric, AggregationOp op,
                      Diagnostics& diags);

/// Worst-wins assessment aggregation over the assessments stored under
/// `key`. Inner nodes receive the max color of their children plus
/// GREEN/YELLOW/RED counts of the originally assessed descendants.
void aggregate_assessments(ResourceNode& tree, const std::string& key,
                           Diagnostics& diags);

}  // namespace conquard
