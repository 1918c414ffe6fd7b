#include "conquard/assess.hpp"

#include <random>

#include "conquard/errors.hpp"
#include "doctest.h"
#include "support/trees.hpp"

using namespace conquard;

namespace {

Color classify(double value, double yellow, double red,
               Direction dir = Direction::HigherIsWorse) {
  ThresholdRule rule{"m", dir, yellow, red};
  return assess(value, rule).color;
}

void flat_leaves(const ResourceNode& node, const std::string& metric,
                 std::vector<double>& out) {
  if (node.children.empty()) {
    if (auto v = node.number(metric)) out.push_back(*v);
    return;
  }
  for (const auto& child : node.children) flat_leaves(*child, metric, out);
}

}  // namespace

TEST_CASE("a system-wide cyclomatic average of 15 rates YELLOW at bounds 10/20") {
  CHECK(classify(15, 10, 20) == Color::Yellow);
}

TEST_CASE("boundary values belong to the worse class") {
  CHECK(classify(10, 10, 20) == Color::Yellow);
  CHECK(classify(20, 10, 20) == Color::Red);
  CHECK(classify(9.999, 10, 20) == Color::Green);
  // mirrored for lower-is-worse (e.g. comment ratio)
  CHECK(classify(0.2, 0.2, 0.1, Direction::LowerIsWorse) == Color::Yellow);
  CHECK(classify(0.1, 0.2, 0.1, Direction::LowerIsWorse) == Color::Red);
  CHECK(classify(0.21, 0.2, 0.1, Direction::LowerIsWorse) == Color::Green);
}

TEST_CASE("degenerate yellow == red leaves only GREEN or RED") {
  for (double v : {0.0, 9.9, 10.0, 10.1, 50.0}) {
    Color c = classify(v, 10, 10);
    CHECK(c != Color::Yellow);
  }
  CHECK(classify(9.9, 10, 10) == Color::Green);
  CHECK(classify(10.0, 10, 10) == Color::Red);
}

TEST_CASE("inconsistent bounds are rejected") {
  CHECK_THROWS_WITH_AS(validate_rule({"m", Direction::HigherIsWorse, 20, 10}),
                       doctest::Contains("SpecError"), Error);
  CHECK_THROWS_WITH_AS(validate_rule({"m", Direction::LowerIsWorse, 0.1, 0.2}),
                       doctest::Contains("SpecError"), Error);
}

TEST_CASE("assess is monotone in the value") {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    double yellow = std::uniform_real_distribution<double>(0, 50)(rng);
    double red = yellow + std::uniform_real_distribution<double>(0, 50)(rng);
    double v1 = std::uniform_real_distribution<double>(-10, 110)(rng);
    double v2 = std::uniform_real_distribution<double>(-10, 110)(rng);
    if (v1 > v2) std::swap(v1, v2);
    CHECK(classify(v1, yellow, red) <= classify(v2, yellow, red));
  }
}

TEST_CASE("children aggregate per operator") {
  Diagnostics diags;
  ResourceNode root;
  root.kind = ResourceKind::Directory;
  auto add_child = [&](const std::string& name, double v) {
    auto child = std::make_unique<ResourceNode>();
    child->path = name;
    child->kind = ResourceKind::File;
    child->attach_value("m", v, diags);
    root.children.push_back(std::move(child));
  };
  add_child("a", 1);
  add_child("b", 2);
  add_child("c", 3);

  aggregate_values(root, "m", AggregationOp::Sum, diags);
  CHECK(*root.number("m") == 6.0);

  ResourceNode median_tree;
  median_tree.kind = ResourceKind::Directory;
  auto add_med = [&](const std::string& name, double v) {
    auto child = std::make_unique<ResourceNode>();
    child->path = name;
    child->kind = ResourceKind::File;
    child->attach_value("m", v, diags);
    median_tree.children.push_back(std::move(child));
  };
  add_med("a", 1);
  add_med("b", 2);
  add_med("c", 9);
  aggregate_values(median_tree, "m", AggregationOp::Median, diags);
  CHECK(*median_tree.number("m") == 2.0);  // lower median
}

TEST_CASE("nodes without carrying descendants stay MISSING") {
  Diagnostics diags;
  ResourceNode root;
  root.kind = ResourceKind::Directory;
  auto dir = std::make_unique<ResourceNode>();
  dir->path = "empty";
  dir->kind = ResourceKind::Directory;
  auto leaf = std::make_unique<ResourceNode>();
  leaf->path = "empty/file";
  leaf->kind = ResourceKind::File;  // no value attached
  dir->children.push_back(std::move(leaf));
  root.children.push_back(std::move(dir));

  aggregate_values(root, "m", AggregationOp::Sum, diags);
  CHECK_FALSE(root.number("m").has_value());
  CHECK_FALSE(root.children[0]->number("m").has_value());
}

TEST_CASE("tree aggregation of SUM/MAX/MIN equals the flat leaf computation") {
  std::mt19937 rng(20240812);
  for (int round = 0; round < 100; ++round) {
    for (AggregationOp op : {AggregationOp::Sum, AggregationOp::Max, AggregationOp::Min}) {
      auto tree = testsupport::random_tree(rng, "m", 60, /*with_gaps=*/true);
      std::vector<double> leaves;
      flat_leaves(*tree, "m", leaves);
      Diagnostics diags;
      aggregate_values(*tree, "m", op, diags);
      if (leaves.empty()) {
        CHECK_FALSE(tree->number("m").has_value());
        continue;
      }
      double expected = leaves[0];
      for (double v : leaves) {
        if (op == AggregationOp::Sum && v != leaves[0]) expected += v;
        if (op == AggregationOp::Max) expected = std::max(expected, v);
        if (op == AggregationOp::Min) expected = std::min(expected, v);
      }
      if (op == AggregationOp::Sum) {
        double sum = 0;
        for (double v : leaves) sum += v;
        expected = sum;
      }
      REQUIRE(tree->number("m").has_value());
      CHECK(*tree->number("m") == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("avg_leaves weights by leaf count, avg by direct children") {
  Diagnostics diags;
  // root -> dir(a=1, b=2, c=3), single(d=10)
  ResourceNode root;
  root.kind = ResourceKind::Directory;
  auto dir = std::make_unique<ResourceNode>();
  dir->path = "dir";
  dir->kind = ResourceKind::Directory;
  for (int i = 0; i < 3; ++i) {
    auto f = std::make_unique<ResourceNode>();
    f->path = "dir/f" + std::to_string(i);
    f->kind = ResourceKind::File;
    f->attach_value("m", i + 1.0, diags);
    dir->children.push_back(std::move(f));
  }
  auto single = std::make_unique<ResourceNode>();
  single->path = "single";
  single->kind = ResourceKind::File;
  single->attach_value("m", 10.0, diags);
  root.children.push_back(std::move(dir));
  root.children.push_back(std::move(single));

  ResourceNode* dirp = root.children[0].get();
  Diagnostics d2;
  aggregate_values(root, "m", AggregationOp::Avg, d2);
  CHECK(*dirp->number("m") == doctest::Approx(2.0));              // (1+2+3)/3
  CHECK(*root.number("m") == doctest::Approx((2.0 + 10.0) / 2));  // structural

  // Leaf-weighted variant on an identically shaped tree.
  Diagnostics d3;
  ResourceNode root2;
  root2.kind = ResourceKind::Directory;
  auto dir2 = std::make_unique<ResourceNode>();
  dir2->path = "dir";
  dir2->kind = ResourceKind::Directory;
  for (int i = 0; i < 3; ++i) {
    auto f = std::make_unique<ResourceNode>();
    f->path = "dir/f" + std::to_string(i);
    f->kind = ResourceKind::File;
    f->attach_value("m", i + 1.0, d3);
    dir2->children.push_back(std::move(f));
  }
  auto single2 = std::make_unique<ResourceNode>();
  single2->path = "single";
  single2->kind = ResourceKind::File;
  single2->attach_value("m", 10.0, d3);
  root2.children.push_back(std::move(dir2));
  root2.children.push_back(std::move(single2));
  aggregate_values(root2, "m", AggregationOp::AvgLeaves, d3);
  CHECK(*root2.number("m") == doctest::Approx((1 + 2 + 3 + 10.0) / 4));
}

TEST_CASE("worst-wins assessment aggregation with leaf histograms") {
  Diagnostics diags;
  ResourceNode root;
  root.kind = ResourceKind::Directory;
  auto add = [&](const std::string& name, Color color) {
    auto child = std::make_unique<ResourceNode>();
    child->path = name;
    child->kind = ResourceKind::File;
    Assessment a;
    a.color = color;
    a.counts[static_cast<int>(color)] = 1;
    child->attach_value("m.assessment", a, diags);
    root.children.push_back(std::move(child));
  };
  add("a", Color::Green);
  add("b", Color::Green);

  aggregate_assessments(root, "m.assessment", diags);
  REQUIRE(root.assessment("m.assessment") != nullptr);
  CHECK(root.assessment("m.assessment")->color == Color::Green);

  add("c", Color::Red);
  add("d", Color::Yellow);
  Diagnostics diags2;
  aggregate_assessments(root, "m.assessment", diags2);
  CHECK(root.assessment("m.assessment")->color == Color::Red);
  CHECK(root.assessment("m.assessment")->counts[0] == 2);
  CHECK(root.assessment("m.assessment")->counts[1] == 1);
  CHECK(root.assessment("m.assessment")->counts[2] == 1);
}

TEST_CASE("root is RED exactly when some leaf is RED; counts match leaf histogram") {
  std::mt19937 rng(5551212);
  for (int round = 0; round < 100; ++round) {
    auto tree = testsupport::random_tree(rng, "m", 50, /*with_gaps=*/true);
    ThresholdRule rule{"m", Direction::HigherIsWorse, 40, 80};
    Diagnostics diags;

    std::array<long long, 3> histogram{0, 0, 0};
    bool any = false;
    tree->visit([&](ResourceNode& node) {
      if (!node.children.empty()) return;
      auto v = node.number("m");
      if (!v) return;
      Assessment a = assess(*v, rule);
      ++histogram[static_cast<int>(a.color)];
      any = true;
      node.attach_value("m.assessment", a, diags);
    });
    aggregate_assessments(*tree, "m.assessment", diags);

    const Assessment* root = tree->assessment("m.assessment");
    if (!any) {
      CHECK(root == nullptr);
      continue;
    }
    REQUIRE(root != nullptr);
    CHECK((root->color == Color::Red) == (histogram[2] > 0));
    if (histogram[2] == 0)
      CHECK((root->color == Color::Yellow) == (histogram[1] > 0));
    CHECK(root->counts == histogram);
  }
}
