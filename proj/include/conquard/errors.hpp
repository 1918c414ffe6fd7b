#pragma once

#include <stdexcept>
#include <string>

namespace conquard {

/// All hard failures carry a stable machine-readable code (e.g. "DuplicateId",
/// "CycleDetected") plus an optional source location in the offending file.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(format(code, message, line, column)),
        code_(std::move(code)),
        line_(line),
        column_(column) {}

  const std::string& code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string& code, const std::string& message,
                            int line, int column) {
    std::string s = code;
    if (line > 0) {
      s += " at line " + std::to_string(line);
      if (column > 0) s += ", column " + std::to_string(column);
    }
    s += ": " + message;
    return s;
  }

  std::string code_;
  int line_;
  int column_;
};

}  // namespace conquard
