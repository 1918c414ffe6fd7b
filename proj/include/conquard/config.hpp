#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace conquard {

/// A `@producer.port` reference to another processor's output.
struct Reference {
  std::string producer;
  std::string port;

  bool operator==(const Reference&) const = default;
};

/// Placeholder for a block formal parameter, only valid inside block bodies.
struct FormalRef {
  std::string name;

  bool operator==(const FormalRef&) const = default;
};

/// Closed set of parameter value kinds: string, integer, float, boolean,
/// string list, reference. FormalRef only survives until block expansion.
using ParamValue = std::variant<std::string, long long, double, bool,
                                std::vector<std::string>, Reference, FormalRef>;

std::string param_value_to_string(const ParamValue& v);

struct Param {
  std::string name;
  ParamValue value;
  int line = 0;
};

struct ProcessorDecl {
  std::string id;
  std::string kind;
  std::vector<Param> params;
  int line = 0;

  const Param* find_param(const std::string& name) const;
};

/// `use <id> : <block>(args...)` prior to expansion.
struct BlockInstance {
  std::string id;
  std::string block;
  std::vector<ParamValue> args;
  int line = 0;
};

struct ExportDecl {
  std::string name;
  Reference target;
  int line = 0;
};

struct BlockDef {
  std::string name;
  std::vector<std::string> formals;
  std::vector<ProcessorDecl> processors;
  std::vector<BlockInstance> instances;
  std::vector<ExportDecl> exports;
  int line = 0;
};

/// Report view declaration (`view <id>` section).
enum class ViewDetail { Overview, Full };

struct ViewSpec {
  std::string id;
  std::string audience;
  std::string scope = "**";
  ViewDetail detail = ViewDetail::Full;
  std::vector<std::string> metrics;  // empty = all metrics present
  int line = 0;
};

struct PipelineConfig {
  std::vector<ProcessorDecl> processors;
  std::vector<BlockInstance> instances;
  std::map<std::string, BlockDef> blocks;
  std::vector<std::string> outputs;           // processors feeding the report
  std::vector<ViewSpec> views;
  std::vector<std::string> history_entities;  // extra persisted entity globs

  bool flat() const { return instances.empty(); }
};

/// Parses the line-oriented pipeline format. Block instantiations are kept
/// unexpanded. Throws Error with codes SyntaxError, DuplicateId, UnknownBlock.
PipelineConfig parse_config(const std::string& text);

/// Replaces every block instantiation by the block body, prefixing inner ids
/// with `<instance-id>.` and substituting formal parameters by the supplied
/// arguments. Idempotent on flat configs. Throws UnknownBlock, RecursiveBlock.
PipelineConfig expand_blocks(const PipelineConfig& config);

}  // namespace conquard
