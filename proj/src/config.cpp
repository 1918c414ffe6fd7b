#include "conquard/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "conquard/errors.hpp"
#include "conquard/keyvalue.hpp"

namespace conquard {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

// Cursor over one directive line (`processor p : kind`, `use b : B(...)`, ...).
class LineCursor {
public:
  LineCursor(const std::string& text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::string ident(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) {
      ++pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    }
    if (start == pos_)
      throw Error("SyntaxError", std::string("expected ") + what, line_,
                  static_cast<int>(pos_) + 1);
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw Error("SyntaxError", std::string("expected '") + c + "'", line_,
                  static_cast<int>(pos_) + 1);
    ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Consumes one value token, balancing quotes/brackets, up to ',' or ')'.
  std::string value_token() {
    skip_ws();
    std::size_t start = pos_;
    bool in_string = false;
    int bracket = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (in_string) {
        if (c == '\\') ++pos_;
        else if (c == '"') in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '[') {
        ++bracket;
      } else if (c == ']') {
        --bracket;
      } else if (bracket == 0 && (c == ',' || c == ')')) {
        break;
      }
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void expect_end() {
    if (!at_end())
      throw Error("SyntaxError", "unexpected trailing text '" + text_.substr(pos_) + "'",
                  line_, static_cast<int>(pos_) + 1);
  }

  int column() const { return static_cast<int>(pos_) + 1; }

private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
};

std::string first_word(const std::string& text) {
  std::size_t end = 0;
  while (end < text.size() && is_ident_char(text[end])) ++end;
  return text.substr(0, end);
}

void check_duplicate(std::map<std::string, int>& seen, const std::string& id, int line,
                     const char* scope) {
  auto [it, inserted] = seen.emplace(id, line);
  if (!inserted)
    throw Error("DuplicateId",
                "id '" + id + "' declared at line " + std::to_string(it->second) +
                    " and again at line " + std::to_string(line) +
                    (scope[0] ? std::string(" (") + scope + ")" : ""),
                line);
}

}  // namespace

const Param* ProcessorDecl::find_param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

std::string param_value_to_string(const ParamValue& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return "\"" + s + "\""; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      char buf[64];
      auto r = std::to_chars(buf, buf + sizeof buf, d);
      return std::string(buf, r.ptr);
    }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<std::string>& items) const {
      std::string s = "[";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += items[i];
      }
      return s + "]";
    }
    std::string operator()(const Reference& r) const {
      return "@" + r.producer + "." + r.port;
    }
    std::string operator()(const FormalRef& f) const { return f.name; }
  };
  return std::visit(Visitor{}, v);
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig config;
  auto lines = split_config_lines(text);

  BlockDef* current_block = nullptr;
  ProcessorDecl* current_decl = nullptr;
  ViewSpec* current_view = nullptr;
  bool in_history = false;
  std::map<std::string, int> top_ids;
  std::map<std::string, int> block_ids;
  std::map<std::string, int> view_ids;

  auto close_section = [&] {
    current_decl = nullptr;
    current_view = nullptr;
    in_history = false;
  };

  // A line is a directive when it opens with a structural keyword that is
  // not immediately followed by '=' (so `use = 1` still parses as a param).
  auto is_directive = [](const std::string& text) {
    std::string word = first_word(text);
    static const std::set<std::string> keywords = {
        "processor", "use", "block", "end", "export", "output", "view", "history"};
    if (!keywords.count(word)) return false;
    std::size_t p = word.size();
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    return p >= text.size() || text[p] != '=';
  };

  for (const auto& line : lines) {
    if (line.indent > 0 && !is_directive(line.text)) {
      // Indented: a key = value line belonging to the current section.
      if (current_view) {
        auto [key, value] = parse_keyvalue_line(line);
        if (key == "audience") {
          if (auto* s = std::get_if<std::string>(&value)) current_view->audience = *s;
          else throw Error("SyntaxError", "audience must be a string", line.number);
        } else if (key == "scope") {
          if (auto* s = std::get_if<std::string>(&value)) current_view->scope = *s;
          else throw Error("SyntaxError", "scope must be a string", line.number);
        } else if (key == "detail") {
          const auto* s = std::get_if<std::string>(&value);
          if (s && *s == "overview") current_view->detail = ViewDetail::Overview;
          else if (s && *s == "full") current_view->detail = ViewDetail::Full;
          else
            throw Error("SyntaxError", "detail must be \"overview\" or \"full\"",
                        line.number);
        } else if (key == "metrics") {
          if (auto* l = std::get_if<std::vector<std::string>>(&value))
            current_view->metrics = *l;
          else throw Error("SyntaxError", "metrics must be a list", line.number);
        } else {
          throw Error("SyntaxError", "unknown view key '" + key + "'", line.number);
        }
        continue;
      }
      if (in_history) {
        auto [key, value] = parse_keyvalue_line(line);
        if (key == "entities") {
          if (auto* l = std::get_if<std::vector<std::string>>(&value))
            config.history_entities = *l;
          else throw Error("SyntaxError", "entities must be a list", line.number);
        } else {
          throw Error("SyntaxError", "unknown history key '" + key + "'", line.number);
        }
        continue;
      }
      if (!current_decl)
        throw Error("SyntaxError", "parameter line outside a processor declaration",
                    line.number);
      auto [key, value] = parse_keyvalue_line(line);
      if (!current_block && std::holds_alternative<FormalRef>(value))
        throw Error("SyntaxError",
                    "bare word '" + std::get<FormalRef>(value).name +
                        "' is only valid inside a block body",
                    line.number);
      for (const auto& existing : current_decl->params)
        if (existing.name == key)
          throw Error("SyntaxError", "parameter '" + key + "' given twice", line.number);
      current_decl->params.push_back({key, std::move(value), line.number});
      continue;
    }

    std::string keyword = first_word(line.text);
    LineCursor cur(line.text, line.number);

    if (keyword == "processor") {
      cur.ident("keyword");
      ProcessorDecl decl;
      decl.id = cur.ident("processor id");
      cur.expect(':');
      decl.kind = cur.ident("processor kind");
      cur.expect_end();
      decl.line = line.number;
      close_section();
      if (current_block) {
        check_duplicate(block_ids, decl.id, line.number,
                        ("in block " + current_block->name).c_str());
        current_block->processors.push_back(std::move(decl));
        current_decl = &current_block->processors.back();
      } else {
        check_duplicate(top_ids, decl.id, line.number, "");
        config.processors.push_back(std::move(decl));
        current_decl = &config.processors.back();
      }
    } else if (keyword == "use") {
      cur.ident("keyword");
      BlockInstance inst;
      inst.id = cur.ident("instance id");
      cur.expect(':');
      inst.block = cur.ident("block name");
      cur.expect('(');
      if (!cur.consume(')')) {
        while (true) {
          std::string tok = cur.value_token();
          inst.args.push_back(parse_value_text(tok, line.number));
          if (cur.consume(')')) break;
          cur.expect(',');
        }
      }
      cur.expect_end();
      inst.line = line.number;
      close_section();
      if (current_block) {
        // Outside a block body, bare words are not valid argument values.
        check_duplicate(block_ids, inst.id, line.number,
                        ("in block " + current_block->name).c_str());
        current_block->instances.push_back(std::move(inst));
      } else {
        for (const auto& arg : inst.args)
          if (auto* f = std::get_if<FormalRef>(&arg))
            throw Error("SyntaxError",
                        "bare word '" + f->name + "' is only valid inside a block body",
                        line.number);
        check_duplicate(top_ids, inst.id, line.number, "");
        config.instances.push_back(std::move(inst));
      }
    } else if (keyword == "block") {
      if (current_block)
        throw Error("SyntaxError", "nested block definitions are not allowed",
                    line.number);
      cur.ident("keyword");
      BlockDef def;
      def.name = cur.ident("block name");
      def.line = line.number;
      cur.expect('(');
      if (!cur.consume(')')) {
        while (true) {
          def.formals.push_back(cur.ident("formal parameter"));
          if (cur.consume(')')) break;
          cur.expect(',');
        }
      }
      cur.expect_end();
      if (config.blocks.count(def.name))
        throw Error("DuplicateId", "block '" + def.name + "' defined twice", line.number);
      close_section();
      auto [it, ok] = config.blocks.emplace(def.name, std::move(def));
      (void)ok;
      current_block = &it->second;
      block_ids.clear();
    } else if (keyword == "export") {
      if (!current_block)
        throw Error("SyntaxError", "'export' outside a block definition", line.number);
      cur.ident("keyword");
      ExportDecl exp;
      exp.name = cur.ident("export name");
      cur.expect('=');
      ParamValue v = parse_value_text(cur.value_token(), line.number);
      cur.expect_end();
      if (auto* r = std::get_if<Reference>(&v)) exp.target = *r;
      else
        throw Error("SyntaxError", "export target must be a @<id>.<port> reference",
                    line.number);
      exp.line = line.number;
      close_section();
      for (const auto& e : current_block->exports)
        if (e.name == exp.name)
          throw Error("DuplicateId",
                      "export '" + exp.name + "' declared twice in block " +
                          current_block->name,
                      line.number);
      current_block->exports.push_back(std::move(exp));
    } else if (keyword == "end") {
      LineCursor c2(line.text, line.number);
      c2.ident("keyword");
      c2.expect_end();
      if (!current_block)
        throw Error("SyntaxError", "'end' without an open block", line.number);
      current_block = nullptr;
      close_section();
    } else if (keyword == "output") {
      if (current_block)
        throw Error("SyntaxError", "'output' is not allowed inside a block", line.number);
      cur.ident("keyword");
      std::string id = cur.ident("processor id");
      cur.expect_end();
      close_section();
      if (std::find(config.outputs.begin(), config.outputs.end(), id) ==
          config.outputs.end())
        config.outputs.push_back(id);
    } else if (keyword == "view") {
      if (current_block)
        throw Error("SyntaxError", "'view' is not allowed inside a block", line.number);
      cur.ident("keyword");
      ViewSpec view;
      view.id = cur.ident("view id");
      cur.expect_end();
      view.line = line.number;
      check_duplicate(view_ids, view.id, line.number, "view");
      close_section();
      config.views.push_back(std::move(view));
      current_view = &config.views.back();
    } else if (keyword == "history") {
      if (current_block)
        throw Error("SyntaxError", "'history' is not allowed inside a block", line.number);
      cur.ident("keyword");
      cur.expect_end();
      close_section();
      in_history = true;
    } else {
      throw Error("SyntaxError",
                  "unknown directive '" + (keyword.empty() ? line.text : keyword) + "'",
                  line.number, 1);
    }
  }

  if (current_block)
    throw Error("SyntaxError",
                "block '" + current_block->name + "' is missing its 'end'",
                current_block->line);

  // Instantiations may precede the definition textually, so resolve block
  // names only once the whole file is read.
  auto check_known = [&](const BlockInstance& inst) {
    if (!config.blocks.count(inst.block))
      throw Error("UnknownBlock", "no block named '" + inst.block + "'", inst.line);
  };
  for (const auto& inst : config.instances) check_known(inst);
  for (const auto& [name, def] : config.blocks)
    for (const auto& inst : def.instances) check_known(inst);
  return config;
}

namespace {

class BlockExpander {
public:
  explicit BlockExpander(const PipelineConfig& config) : config_(config) {}

  PipelineConfig run() {
    PipelineConfig out;
    out.blocks = config_.blocks;
    out.outputs = config_.outputs;
    out.views = config_.views;
    out.history_entities = config_.history_entities;
    out.processors = config_.processors;
    for (const auto& inst : config_.instances) expand(inst, "", {}, {});
    for (auto& decl : expanded_) out.processors.push_back(std::move(decl));
    for (auto& decl : out.processors)
      for (auto& param : decl.params) resolve_exports(param.value, decl.line);
    return out;
  }

private:
  void expand(const BlockInstance& inst, const std::string& prefix,
              const std::map<std::string, ParamValue>& outer_formals,
              std::vector<std::string> stack) {
    auto it = config_.blocks.find(inst.block);
    if (it == config_.blocks.end())
      throw Error("UnknownBlock", "no block named '" + inst.block + "'", inst.line);
    const BlockDef& def = it->second;

    if (std::find(stack.begin(), stack.end(), def.name) != stack.end()) {
      std::string chain;
      for (const auto& s : stack) chain += s + " -> ";
      throw Error("RecursiveBlock",
                  "block expansion does not terminate: " + chain + def.name, inst.line);
    }
    stack.push_back(def.name);

    if (inst.args.size() != def.formals.size())
      throw Error("SyntaxError",
                  "block '" + def.name + "' expects " +
                      std::to_string(def.formals.size()) + " argument(s), got " +
                      std::to_string(inst.args.size()),
                  inst.line);

    std::string full_id = prefix + inst.id;
    std::map<std::string, ParamValue> formals;
    for (std::size_t i = 0; i < def.formals.size(); ++i) {
      ParamValue arg = inst.args[i];
      substitute(arg, outer_formals, /*inner_ids=*/{}, prefix, inst.line);
      formals.emplace(def.formals[i], std::move(arg));
    }

    std::set<std::string> inner_ids;
    for (const auto& p : def.processors) inner_ids.insert(p.id);
    for (const auto& u : def.instances) inner_ids.insert(u.id);

    std::string inner_prefix = full_id + ".";
    for (const auto& p : def.processors) {
      ProcessorDecl decl = p;
      decl.id = inner_prefix + p.id;
      for (auto& param : decl.params)
        substitute(param.value, formals, inner_ids, inner_prefix, param.line);
      expanded_.push_back(std::move(decl));
    }
    for (const auto& u : def.instances) {
      BlockInstance nested = u;
      nested.id = u.id;  // prefix applied via inner_prefix argument
      for (auto& arg : nested.args)
        substitute(arg, formals, inner_ids, inner_prefix, u.line);
      // Arguments are already fully substituted; pass empty formal scope.
      expand(nested, inner_prefix, {}, stack);
    }
    for (const auto& e : def.exports) {
      Reference target = e.target;
      if (inner_ids.count(target.producer)) target.producer = inner_prefix + target.producer;
      export_map_[{full_id, e.name}] = target;
    }
  }

  void substitute(ParamValue& value, const std::map<std::string, ParamValue>& formals,
                  const std::set<std::string>& inner_ids, const std::string& prefix,
                  int line) {
    if (auto* f = std::get_if<FormalRef>(&value)) {
      auto it = formals.find(f->name);
      if (it == formals.end())
        throw Error("SyntaxError",
                    "'" + f->name + "' is not a formal parameter of this block", line);
      value = it->second;
      return;
    }
    if (auto* r = std::get_if<Reference>(&value)) {
      if (inner_ids.count(r->producer)) r->producer = prefix + r->producer;
    }
  }

  void resolve_exports(ParamValue& value, int line) {
    auto* r = std::get_if<Reference>(&value);
    if (!r) return;
    for (int depth = 0; depth < 64; ++depth) {
      auto it = export_map_.find({r->producer, r->port});
      if (it == export_map_.end()) return;
      *r = it->second;
    }
    throw Error("DanglingReference",
                "export chain for @" + r->producer + "." + r->port + " does not resolve",
                line);
  }

  const PipelineConfig& config_;
  std::vector<ProcessorDecl> expanded_;
  std::map<std::pair<std::string, std::string>, Reference> export_map_;
};

}  // namespace

PipelineConfig expand_blocks(const PipelineConfig& config) {
  PipelineConfig out = BlockExpander(config).run();
  // Prefixing keeps instance id sets disjoint, but a stale duplicate between
  // top-level processors can only come from the caller; re-check to be safe.
  std::map<std::string, int> seen;
  for (const auto& decl : out.processors) {
    auto [it, inserted] = seen.emplace(decl.id, decl.line);
    if (!inserted)
      throw Error("DuplicateId", "id '" + decl.id + "' appears twice after expansion",
                  decl.line);
  }
  return out;
}

}  // namespace conquard
