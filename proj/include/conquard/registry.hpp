#pragma once

#include <any>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conquard/config.hpp"

namespace conquard {

enum class ValueType { String, Integer, Float, Boolean, StringList, Ref };

std::string value_type_name(ValueType t);

/// Schema of one processor parameter. For Ref parameters, `ref_type` names
/// the output-port type the reference must produce ("" accepts any).
struct ParamSpec {
  std::string name;
  ValueType type = ValueType::String;
  bool required = false;
  std::optional<ParamValue> default_value;
  std::string ref_type;
};

struct PortSpec {
  std::string name;
  std::string type;  // e.g. "resource-tree", "token-corpus", "number"
};

/// A typed value travelling across a pipeline edge.
struct PortValue {
  std::string type;
  std::any value;
};

struct RunContext;
struct ExecutionNode;

/// Resolved invocation of one processor: literal parameters (defaults
/// applied) plus the producer outputs wired to its reference parameters.
struct ProcessorArgs {
  const ExecutionNode* node = nullptr;
  std::map<std::string, ParamValue> literals;
  std::map<std::string, PortValue> inputs;
  RunContext* ctx = nullptr;

  bool has(const std::string& name) const { return literals.count(name) > 0; }
  const std::string& str(const std::string& name) const;
  long long integer(const std::string& name) const;
  double number(const std::string& name) const;
  bool boolean(const std::string& name) const;
  const std::vector<std::string>& list(const std::string& name) const;
  bool has_input(const std::string& name) const { return inputs.count(name) > 0; }
  const PortValue& input(const std::string& name) const;
};

using ExecFn = std::function<std::map<std::string, PortValue>(ProcessorArgs&)>;

struct ProcessorDescriptor {
  std::string kind;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<PortSpec> ports;
  ExecFn fn;

  const ParamSpec* find_param(const std::string& name) const;
  const PortSpec* find_port(const std::string& name) const;
};

/// Catalog of processor kinds available to build_graph. Kind names unique.
class Registry {
public:
  /// Throws DuplicateKind if the kind name is already taken.
  void register_processor(ProcessorDescriptor descriptor);

  const ProcessorDescriptor* find(const std::string& kind) const;
  const std::map<std::string, ProcessorDescriptor>& kinds() const { return kinds_; }

private:
  std::map<std::string, ProcessorDescriptor> kinds_;
};

}  // namespace conquard
