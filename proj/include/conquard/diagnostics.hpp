#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conquard {

enum class Severity { Info, Warning };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string message;
};

/// Collects warnings and informational notes emitted while a run progresses.
/// Never used for hard errors; those are thrown as conquard::Error.
class Diagnostics {
public:
  void warn(std::string message) {
    entries_.push_back({Severity::Warning, std::move(message)});
  }
  void info(std::string message) {
    entries_.push_back({Severity::Info, std::move(message)});
  }

  const std::vector<Diagnostic>& entries() const { return entries_; }

  std::size_t warning_count() const {
    std::size_t n = 0;
    for (const auto& e : entries_)
      if (e.severity == Severity::Warning) ++n;
    return n;
  }

  void print(std::ostream& out) const {
    for (const auto& e : entries_)
      out << (e.severity == Severity::Warning ? "warning: " : "info: ")
          << e.message << '\n';
  }

private:
  std::vector<Diagnostic> entries_;
};

}  // namespace conquard
