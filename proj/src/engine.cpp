#include "conquard/engine.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "conquard/errors.hpp"

namespace conquard {

namespace {

// Int literals are accepted where floats are expected; everything else must
// match the declared type exactly.
bool literal_matches(ValueType expected, const ParamValue& value) {
  switch (expected) {
    case ValueType::String: return std::holds_alternative<std::string>(value);
    case ValueType::Integer: return std::holds_alternative<long long>(value);
    case ValueType::Float:
      return std::holds_alternative<double>(value) ||
             std::holds_alternative<long long>(value);
    case ValueType::Boolean: return std::holds_alternative<bool>(value);
    case ValueType::StringList:
      return std::holds_alternative<std::vector<std::string>>(value);
    case ValueType::Ref: return std::holds_alternative<Reference>(value);
  }
  return false;
}

std::string literal_kind_name(const ParamValue& value) {
  struct Visitor {
    std::string operator()(const std::string&) const { return "string"; }
    std::string operator()(long long) const { return "int"; }
    std::string operator()(double) const { return "float"; }
    std::string operator()(bool) const { return "bool"; }
    std::string operator()(const std::vector<std::string>&) const { return "string-list"; }
    std::string operator()(const Reference&) const { return "ref"; }
    std::string operator()(const FormalRef&) const { return "bare word"; }
  };
  return std::visit(Visitor{}, value);
}

// Walks the residual graph (nodes still carrying in-degree) to print one
// concrete cycle, e.g. "a -> b -> a".
std::string find_cycle_path(const ExecutionGraph& graph,
                            const std::vector<bool>& remaining,
                            const std::vector<std::vector<std::size_t>>& succ) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    if (remaining[i]) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return graph.nodes[a].decl.id < graph.nodes[b].decl.id;
  });

  std::vector<int> color(graph.nodes.size(), 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> stack;

  std::function<std::string(std::size_t)> dfs = [&](std::size_t u) -> std::string {
    color[u] = 1;
    stack.push_back(u);
    auto sorted = succ[u];
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
      return graph.nodes[a].decl.id < graph.nodes[b].decl.id;
    });
    for (std::size_t v : sorted) {
      if (!remaining[v]) continue;
      if (color[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        std::string path;
        for (; it != stack.end(); ++it) path += graph.nodes[*it].decl.id + " -> ";
        return path + graph.nodes[v].decl.id;
      }
      if (color[v] == 0) {
        std::string found = dfs(v);
        if (!found.empty()) return found;
      }
    }
    stack.pop_back();
    color[u] = 2;
    return "";
  };

  for (std::size_t u : order) {
    if (color[u] != 0) continue;
    std::string found = dfs(u);
    if (!found.empty()) return found;
  }
  return "(cycle)";
}

}  // namespace

ExecutionGraph build_graph(const PipelineConfig& config, const Registry& registry) {
  if (!config.flat())
    throw Error("InternalError", "build_graph requires an expanded config");

  ExecutionGraph graph;
  graph.nodes.reserve(config.processors.size());

  for (const auto& decl : config.processors) {
    ExecutionNode node;
    node.decl = decl;
    node.descriptor = registry.find(decl.kind);
    if (!node.descriptor)
      throw Error("UnknownProcessorKind",
                  "processor '" + decl.id + "' uses unknown kind '" + decl.kind + "'",
                  decl.line);

    for (const auto& param : decl.params) {
      const ParamSpec* spec = node.descriptor->find_param(param.name);
      if (!spec)
        throw Error("ParamTypeMismatch",
                    "kind '" + decl.kind + "' has no parameter '" + param.name + "'",
                    param.line);
      if (std::holds_alternative<FormalRef>(param.value))
        throw Error("SyntaxError",
                    "unresolved bare word in parameter '" + param.name + "'", param.line);
      if (!literal_matches(spec->type, param.value))
        throw Error("ParamTypeMismatch",
                    "parameter '" + param.name + "' of '" + decl.id + "' expects " +
                        value_type_name(spec->type) + ", got " +
                        literal_kind_name(param.value),
                    param.line);
      if (spec->type == ValueType::Ref)
        node.ref_params.emplace(param.name, std::get<Reference>(param.value));
      else
        node.literals.emplace(param.name, param.value);
    }

    for (const auto& spec : node.descriptor->params) {
      if (node.literals.count(spec.name) || node.ref_params.count(spec.name)) continue;
      if (spec.default_value) {
        node.literals.emplace(spec.name, *spec.default_value);
      } else if (spec.required) {
        throw Error("MissingRequiredParam",
                    "processor '" + decl.id + "' is missing required parameter '" +
                        spec.name + "'",
                    decl.line);
      }
    }

    graph.index.emplace(decl.id, graph.nodes.size());
    graph.nodes.push_back(std::move(node));
  }

  // Resolve references into edges and type-check them against port schemas.
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& node = graph.nodes[i];
    for (const auto& [param, ref] : node.ref_params) {
      auto it = graph.index.find(ref.producer);
      if (it == graph.index.end())
        throw Error("DanglingReference",
                    "parameter '" + param + "' of '" + node.decl.id +
                        "' references undeclared processor '" + ref.producer + "'",
                    node.decl.line);
      const auto& producer = graph.nodes[it->second];
      const PortSpec* port = producer.descriptor->find_port(ref.port);
      if (!port)
        throw Error("DanglingReference",
                    "processor '" + ref.producer + "' has no output port '" + ref.port +
                        "' (referenced by '" + node.decl.id + "')",
                    node.decl.line);
      const ParamSpec* spec = node.descriptor->find_param(param);
      if (spec && !spec->ref_type.empty() && spec->ref_type != port->type)
        throw Error("ParamTypeMismatch",
                    "parameter '" + param + "' of '" + node.decl.id + "' expects a " +
                        spec->ref_type + " input, but @" + ref.producer + "." + ref.port +
                        " produces " + port->type,
                    node.decl.line);
      graph.edges.emplace_back(it->second, i);
    }
  }

  // Outputs must name declared processors.
  for (const auto& id : config.outputs) {
    if (!graph.index.count(id))
      throw Error("DanglingReference", "'output " + id + "' names an unknown processor");
    graph.outputs.push_back(id);
  }

  // Kahn's algorithm; the ready set is a min-heap over node ids so that the
  // order is reproducible regardless of declaration order.
  std::vector<std::size_t> indegree(graph.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> succ(graph.nodes.size());
  std::set<std::pair<std::size_t, std::size_t>> seen_edges;
  for (const auto& [u, v] : graph.edges) {
    if (!seen_edges.insert({u, v}).second) continue;  // parallel edges count once
    ++indegree[v];
    succ[u].push_back(v);
  }

  auto cmp = [&](std::size_t a, std::size_t b) {
    return graph.nodes[a].decl.id > graph.nodes[b].decl.id;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    if (indegree[i] == 0) ready.push(i);

  while (!ready.empty()) {
    std::size_t u = ready.top();
    ready.pop();
    graph.topo_order.push_back(u);
    for (std::size_t v : succ[u])
      if (--indegree[v] == 0) ready.push(v);
  }

  if (graph.topo_order.size() != graph.nodes.size()) {
    std::vector<bool> remaining(graph.nodes.size(), false);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
      if (indegree[i] > 0) remaining[i] = true;
    throw Error("CycleDetected",
                "configuration contains a dependency cycle: " +
                    find_cycle_path(graph, remaining, succ));
  }
  return graph;
}

std::map<std::string, NodeResult> execute(const ExecutionGraph& graph, RunContext& ctx) {
  std::map<std::string, NodeResult> results;

  for (std::size_t idx : graph.topo_order) {
    const ExecutionNode& node = graph.nodes[idx];
    NodeResult result;

    // A node with any non-Ok producer is skipped, not run.
    std::string blocked_by;
    for (const auto& [param, ref] : node.ref_params) {
      auto it = results.find(ref.producer);
      if (it == results.end() || it->second.status != NodeStatus::Ok) {
        blocked_by = ref.producer;
        break;
      }
    }
    if (!blocked_by.empty()) {
      result.status = NodeStatus::FailedUpstream;
      result.error = "skipped: upstream processor '" + blocked_by + "' failed";
      results.emplace(node.decl.id, std::move(result));
      continue;
    }

    ProcessorArgs args;
    args.node = &node;
    args.literals = node.literals;
    args.ctx = &ctx;
    for (const auto& [param, ref] : node.ref_params) {
      const auto& producer = results.at(ref.producer);
      auto port_it = producer.outputs.find(ref.port);
      if (port_it == producer.outputs.end()) {
        result.status = NodeStatus::Failed;
        result.error = "producer '" + ref.producer + "' did not emit port '" + ref.port + "'";
        break;
      }
      args.inputs.emplace(param, port_it->second);
    }

    if (result.status == NodeStatus::Ok) {
      try {
        result.outputs = node.descriptor->fn(args);
        for (const auto& port : node.descriptor->ports)
          if (!result.outputs.count(port.name))
            throw Error("ProcessorError",
                        "processor did not emit declared port '" + port.name + "'");
      } catch (const std::exception& e) {
        result.status = NodeStatus::Failed;
        result.error = e.what();
        result.outputs.clear();
      }
    }

    if (result.status == NodeStatus::Failed && ctx.diags)
      ctx.diags->warn("processor '" + node.decl.id + "' failed: " + result.error);
    results.emplace(node.decl.id, std::move(result));
  }
  return results;
}

}  // namespace conquard
