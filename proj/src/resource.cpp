#include "conquard/resource.hpp"

#include <charconv>

namespace conquard {

void ResourceNode::attach_value(const std::string& metric, MetricValue value,
                                Diagnostics& diags) {
  auto it = values.find(metric);
  if (it != values.end()) {
    diags.warn("metric '" + metric + "' re-attached to '" +
               (path.empty() ? std::string("<root>") : path) + "'; previous value replaced");
    it->second = std::move(value);
    return;
  }
  values.emplace(metric, std::move(value));
}

std::optional<MetricValue> ResourceNode::value(const std::string& metric) const {
  auto it = values.find(metric);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ResourceNode::number(const std::string& metric) const {
  auto it = values.find(metric);
  if (it == values.end()) return std::nullopt;
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  return std::nullopt;
}

const Assessment* ResourceNode::assessment(const std::string& metric) const {
  auto it = values.find(metric);
  if (it == values.end()) return nullptr;
  return std::get_if<Assessment>(&it->second);
}

ResourceNode* ResourceNode::find(const std::string& node_path) {
  if (node_path == path) return this;
  for (auto& child : children) {
    // Children paths extend the parent path; prune mismatching branches.
    const std::string& cp = child->path;
    if (node_path.size() >= cp.size() && node_path.compare(0, cp.size(), cp) == 0 &&
        (node_path.size() == cp.size() || node_path[cp.size()] == '/')) {
      if (ResourceNode* hit = child->find(node_path)) return hit;
    }
  }
  return nullptr;
}

const ResourceNode* ResourceNode::find(const std::string& node_path) const {
  return const_cast<ResourceNode*>(this)->find(node_path);
}

namespace {

std::string format_number(double d) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string serialize_tree(const ResourceNode& root) {
  std::string out;
  root.visit([&](const ResourceNode& node) {
    out += node.kind == ResourceKind::Directory ? "dir  " : "file ";
    out += node.path.empty() ? "<root>" : node.path;
    if (!node.language.empty()) out += " [" + node.language + "]";
    for (const auto& [metric, value] : node.values) {
      out += ' ' + metric + '=';
      if (const auto* d = std::get_if<double>(&value)) out += format_number(*d);
      else out += color_name(std::get<Assessment>(value).color);
    }
    out += '\n';
  });
  return out;
}

}  // namespace conquard
