#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "conquard/config.hpp"
#include "conquard/diagnostics.hpp"
#include "conquard/registry.hpp"

namespace conquard {

class HistoryStore;

/// A quality verdict that should gate the run's exit status (RED result of a
/// rule configured with `blocking = true`).
struct BlockingVerdict {
  std::string source;   // processor id
  std::string message;
};

/// Shared state visible to executing processors. Processors own no other
/// side channels; everything they publish flows through their output ports,
/// diagnostics, or the blocking-verdict list.
struct RunContext {
  std::filesystem::path project_root = ".";
  std::filesystem::path out_dir;
  Diagnostics* diags = nullptr;
  std::string run_id;
  std::string timestamp;          // ISO-8601 UTC, fixed for the whole run
  HistoryStore* history = nullptr;  // null when no history file configured
  std::vector<BlockingVerdict> blocking;

  std::filesystem::path resolve(const std::string& relative) const {
    std::filesystem::path p(relative);
    return p.is_absolute() ? p : project_root / p;
  }
};

/// One flattened processor with its resolved parameter bindings.
struct ExecutionNode {
  ProcessorDecl decl;
  const ProcessorDescriptor* descriptor = nullptr;
  std::map<std::string, ParamValue> literals;   // defaults applied
  std::map<std::string, Reference> ref_params;  // param name -> producer.port
};

struct ExecutionGraph {
  std::vector<ExecutionNode> nodes;
  std::map<std::string, std::size_t> index;                // id -> node position
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // producer -> consumer
  std::vector<std::size_t> topo_order;                     // deterministic
  std::vector<std::string> outputs;                        // validated `output` ids

  const ExecutionNode& node(const std::string& id) const { return nodes[index.at(id)]; }
};

/// Validates a fully expanded config against the registry and computes the
/// deterministic execution order (topological, ties broken by node id).
/// Throws UnknownProcessorKind, DanglingReference, CycleDetected,
/// ParamTypeMismatch, MissingRequiredParam.
ExecutionGraph build_graph(const PipelineConfig& config, const Registry& registry);

enum class NodeStatus { Ok, Failed, FailedUpstream };

struct NodeResult {
  NodeStatus status = NodeStatus::Ok;
  std::map<std::string, PortValue> outputs;
  std::string error;  // set for Failed / FailedUpstream
};

/// Runs every node exactly once in dependency order. A node failure marks
/// its dependents FailedUpstream; independent branches still run. Never
/// throws for node failures; they are recorded in the result map.
std::map<std::string, NodeResult> execute(const ExecutionGraph& graph, RunContext& ctx);

}  // namespace conquard
