#pragma once

#include <map>
#include <string>
#include <vector>

#include "conquard/diagnostics.hpp"
#include "conquard/scanner.hpp"

namespace conquard {

/// Declared component architecture: named file groups plus the explicitly
/// allowed inter-component edges (everything else is denied).
struct ArchComponent {
  std::string name;
  std::vector<std::string> match;  // glob patterns over file paths
};

struct ArchitectureSpec {
  std::vector<ArchComponent> components;
  std::vector<std::pair<std::string, std::string>> allowed;  // from -> to

  bool edge_allowed(const std::string& from, const std::string& to) const;
};

/// Parses the architecture file (`component <name>` sections with a `match`
/// list, plus `allow <from> -> <to>` lines). Throws SpecError on duplicate
/// components or edges naming unknown components.
ArchitectureSpec parse_architecture(const std::string& text);

/// One import edge extracted from a source file. External targets (not
/// resolvable to a corpus file) keep the raw import name.
struct Dependency {
  std::string from;
  std::string to;
  int line = 0;
  bool internal = false;
};

/// Matches every corpus file's lines against its profile's import patterns
/// and resolves targets to corpus files where possible. Self-imports are
/// dropped.
std::vector<Dependency> extract_dependencies(const TokenCorpus& corpus,
                                             Diagnostics& diags);

enum class ViolationReason { ForbiddenEdge, UnmappedFile };

struct Violation {
  Dependency dependency;  // for UnmappedFile only `from` is meaningful
  std::string from_component;
  std::string to_component;
  ViolationReason reason = ViolationReason::ForbiddenEdge;
};

struct ComponentEdge {
  std::string from;
  std::string to;
  long long count = 0;
  bool allowed = false;
};

struct ConformanceResult {
  std::vector<Violation> violations;      // deterministic path/line order
  std::vector<ComponentEdge> edge_summary;  // sorted by (from, to)
  long long internal_dependencies = 0;
  long long external_dependencies = 0;
};

/// Checks internal dependencies against the spec: intra-component edges are
/// always allowed, inter-component edges only when listed, files matching no
/// component yield one UNMAPPED_FILE violation each. A file matching two
/// components is a SpecError.
ConformanceResult check_conformance(const std::vector<Dependency>& deps,
                                    const ArchitectureSpec& spec);

}  // namespace conquard
