#include "conquard/registry.hpp"

#include "conquard/errors.hpp"

namespace conquard {

std::string value_type_name(ValueType t) {
  switch (t) {
    case ValueType::String: return "string";
    case ValueType::Integer: return "int";
    case ValueType::Float: return "float";
    case ValueType::Boolean: return "bool";
    case ValueType::StringList: return "string-list";
    case ValueType::Ref: return "ref";
  }
  return "?";
}

namespace {

[[noreturn]] void missing(const std::string& name) {
  throw Error("InternalError", "parameter '" + name + "' not bound");
}

}  // namespace

const std::string& ProcessorArgs::str(const std::string& name) const {
  auto it = literals.find(name);
  if (it == literals.end()) missing(name);
  return std::get<std::string>(it->second);
}

long long ProcessorArgs::integer(const std::string& name) const {
  auto it = literals.find(name);
  if (it == literals.end()) missing(name);
  return std::get<long long>(it->second);
}

double ProcessorArgs::number(const std::string& name) const {
  auto it = literals.find(name);
  if (it == literals.end()) missing(name);
  if (auto* i = std::get_if<long long>(&it->second)) return static_cast<double>(*i);
  return std::get<double>(it->second);
}

bool ProcessorArgs::boolean(const std::string& name) const {
  auto it = literals.find(name);
  if (it == literals.end()) missing(name);
  return std::get<bool>(it->second);
}

const std::vector<std::string>& ProcessorArgs::list(const std::string& name) const {
  auto it = literals.find(name);
  if (it == literals.end()) missing(name);
  return std::get<std::vector<std::string>>(it->second);
}

const PortValue& ProcessorArgs::input(const std::string& name) const {
  auto it = inputs.find(name);
  if (it == inputs.end()) missing(name);
  return it->second;
}

const ParamSpec* ProcessorDescriptor::find_param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

const PortSpec* ProcessorDescriptor::find_port(const std::string& name) const {
  for (const auto& p : ports)
    if (p.name == name) return &p;
  return nullptr;
}

void Registry::register_processor(ProcessorDescriptor descriptor) {
  auto [it, inserted] = kinds_.emplace(descriptor.kind, std::move(descriptor));
  if (!inserted)
    throw Error("DuplicateKind",
                "processor kind '" + it->first + "' is already registered");
}

const ProcessorDescriptor* Registry::find(const std::string& kind) const {
  auto it = kinds_.find(kind);
  return it == kinds_.end() ? nullptr : &it->second;
}

}  // namespace conquard
