#include "conquard/keyvalue.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "conquard/errors.hpp"

namespace conquard {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string unescape_string(std::string_view body, int line) {
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i == body.size())
      throw Error("SyntaxError", "dangling escape in string literal", line);
    switch (body[i]) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      default:
        throw Error("SyntaxError",
                    std::string("unknown escape \\") + body[i] + " in string literal", line);
    }
  }
  return out;
}

// Finds the closing quote of a string starting at `open` (which is a '"').
std::size_t find_string_end(std::string_view text, std::size_t open, int line) {
  for (std::size_t i = open + 1; i < text.size(); ++i) {
    if (text[i] == '\\') {
      ++i;
      continue;
    }
    if (text[i] == '"') return i;
  }
  throw Error("SyntaxError", "unterminated string literal", line);
}

bool parse_number(std::string_view s, ParamValue& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  bool digits = false, dot = false, exp = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '.' && !dot && !exp) {
      dot = true;
    } else if ((c == 'e' || c == 'E') && digits && !exp) {
      exp = true;
      if (i + 1 < s.size() && (s[i + 1] == '+' || s[i + 1] == '-')) ++i;
    } else {
      return false;
    }
  }
  if (!digits) return false;
  if (!dot && !exp) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + (s[0] == '+' ? 1 : 0), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return false;
    out = v;
    return true;
  }
  std::string zero_terminated(s);
  char* end = nullptr;
  double v = std::strtod(zero_terminated.c_str(), &end);
  if (end != zero_terminated.c_str() + zero_terminated.size()) return false;
  out = v;
  return true;
}

}  // namespace

std::vector<ConfigLine> split_config_lines(const std::string& text) {
  std::vector<ConfigLine> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw(text.data() + pos,
                         (nl == std::string::npos ? text.size() : nl) - pos);
    if (nl == std::string::npos && raw.empty() && pos == text.size()) break;
    ++number;
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;

    // Strip comment, honoring double-quoted strings.
    bool in_string = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      char c = raw[i];
      if (in_string) {
        if (c == '\\') ++i;
        else if (c == '"') in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '#') {
        cut = i;
        break;
      }
    }
    raw = raw.substr(0, cut);

    int indent = 0;
    while (indent < static_cast<int>(raw.size()) &&
           (raw[indent] == ' ' || raw[indent] == '\t'))
      ++indent;
    std::string_view body = trim(raw);
    if (body.empty()) continue;
    lines.push_back({number, indent, std::string(body)});
  }
  return lines;
}

ParamValue parse_value_text(std::string_view text, int line) {
  text = trim(text);
  if (text.empty()) throw Error("SyntaxError", "expected a value", line);

  if (text.front() == '"') {
    std::size_t end = find_string_end(text, 0, line);
    if (end != text.size() - 1)
      throw Error("SyntaxError", "unexpected trailing text after string literal", line);
    return unescape_string(text.substr(1, end - 1), line);
  }

  if (text.front() == '[') {
    if (text.back() != ']')
      throw Error("SyntaxError", "unterminated list, expected ']'", line);
    std::vector<std::string> items;
    std::string_view inner = text.substr(1, text.size() - 2);
    std::size_t i = 0;
    while (i < inner.size()) {
      while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
      if (i >= inner.size()) break;
      std::size_t start = i;
      std::string item;
      if (inner[i] == '"') {
        std::size_t end = find_string_end(inner, i, line);
        item = unescape_string(inner.substr(i + 1, end - i - 1), line);
        i = end + 1;
      } else {
        while (i < inner.size() && inner[i] != ',' &&
               !std::isspace(static_cast<unsigned char>(inner[i])))
          ++i;
        item = std::string(inner.substr(start, i - start));
      }
      while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
      if (i < inner.size()) {
        if (inner[i] != ',')
          throw Error("SyntaxError", "expected ',' between list items", line);
        ++i;
      }
      if (item.empty())
        throw Error("SyntaxError", "empty list item", line);
      items.push_back(std::move(item));
    }
    return items;
  }

  if (text.front() == '@') {
    std::string_view body = text.substr(1);
    std::size_t dot = body.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot == body.size() - 1)
      throw Error("SyntaxError",
                  "reference must have the form @<producer>.<port>", line);
    Reference ref{std::string(body.substr(0, dot)), std::string(body.substr(dot + 1))};
    if (!is_ident_start(ref.producer.front()))
      throw Error("SyntaxError", "invalid reference producer id", line);
    for (char c : ref.port)
      if (!is_ident_char(c))
        throw Error("SyntaxError", "invalid reference port name", line);
    return ref;
  }

  if (text == "true") return true;
  if (text == "false") return false;

  ParamValue number;
  if (parse_number(text, number)) return number;

  // Bare word: a formal-parameter reference inside block bodies.
  if (is_ident_start(text.front())) {
    for (char c : text)
      if (!is_ident_char(c))
        throw Error("SyntaxError",
                    "unexpected value '" + std::string(text) + "'", line);
    return FormalRef{std::string(text)};
  }
  throw Error("SyntaxError", "unexpected value '" + std::string(text) + "'", line);
}

std::pair<std::string, ParamValue> parse_keyvalue_line(const ConfigLine& line) {
  // Split on the first '=' outside quotes.
  std::size_t eq = std::string::npos;
  bool in_string = false;
  for (std::size_t i = 0; i < line.text.size(); ++i) {
    char c = line.text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '=') {
      eq = i;
      break;
    }
  }
  if (eq == std::string::npos)
    throw Error("SyntaxError", "expected '<name> = <value>'", line.number);
  std::string name(trim(std::string_view(line.text).substr(0, eq)));
  if (name.empty() || !is_ident_start(name.front()))
    throw Error("SyntaxError", "invalid parameter name", line.number);
  for (char c : name)
    if (!is_ident_char(c) && c != '.')
      throw Error("SyntaxError", "invalid parameter name '" + name + "'", line.number);
  ParamValue value =
      parse_value_text(std::string_view(line.text).substr(eq + 1), line.number);
  return {std::move(name), std::move(value)};
}

}  // namespace conquard
