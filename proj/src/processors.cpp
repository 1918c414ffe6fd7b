#include "conquard/processors.hpp"

#include <algorithm>
#include <fstream>

#include "conquard/arch.hpp"
#include "conquard/assess.hpp"
#include "conquard/clones.hpp"
#include "conquard/engine.hpp"
#include "conquard/errors.hpp"
#include "conquard/glob.hpp"
#include "conquard/history.hpp"
#include "conquard/metrics.hpp"
#include "conquard/ports.hpp"
#include "conquard/scanner.hpp"
#include "conquard/treemap.hpp"

namespace conquard {

namespace {

using Tree = std::shared_ptr<ResourceNode>;
using Corpus = std::shared_ptr<TokenCorpus>;

Tree tree_input(const ProcessorArgs& args, const std::string& name) {
  return std::any_cast<Tree>(args.input(name).value);
}

Corpus corpus_input(const ProcessorArgs& args, const std::string& name) {
  return std::any_cast<Corpus>(args.input(name).value);
}

PortValue make_port(const char* type, std::any value) {
  return PortValue{type, std::move(value)};
}

ParamSpec req(std::string name, ValueType type) { return {std::move(name), type, true, {}, {}}; }

ParamSpec opt(std::string name, ValueType type, ParamValue def) {
  return {std::move(name), type, false, std::move(def), {}};
}

ParamSpec ref(std::string name, const char* port_type) {
  return {std::move(name), ValueType::Ref, true, {}, port_type};
}

std::string read_text_file(const std::filesystem::path& file, const char* what) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw Error("ProcessorError",
                std::string(what) + " file '" + file.string() + "' is not readable");
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::unique_ptr<ResourceNode> clone_subtree(const ResourceNode& node,
                                            const std::vector<std::string>& include,
                                            const std::vector<std::string>& exclude) {
  if (node.is_file()) {
    if (!glob_match_any(include, node.path) || glob_match_any(exclude, node.path))
      return nullptr;
    auto copy = std::make_unique<ResourceNode>();
    copy->path = node.path;
    copy->kind = node.kind;
    copy->language = node.language;
    copy->values = node.values;
    return copy;
  }
  auto copy = std::make_unique<ResourceNode>();
  copy->path = node.path;
  copy->kind = node.kind;
  copy->scan_root = node.scan_root;
  copy->values = node.values;
  for (const auto& child : node.children) {
    auto kept = clone_subtree(*child, include, exclude);
    if (kept) copy->children.push_back(std::move(kept));
  }
  if (!node.path.empty() && copy->children.empty()) return nullptr;
  return copy;
}

// ---- sources ----------------------------------------------------------

void register_source_scanner(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "source-scanner";
  d.summary = "scan a directory into a resource tree (include/exclude globs)";
  d.params = {opt("root", ValueType::String, std::string(".")),
              opt("include", ValueType::StringList, std::vector<std::string>{}),
              opt("exclude", ValueType::StringList, std::vector<std::string>{})};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = scan(args.ctx->resolve(args.str("root")), args.list("include"),
                     args.list("exclude"), *args.ctx->diags);
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, tree)}};
  };
  registry.register_processor(std::move(d));
}

void register_tokenizer(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "tokenizer";
  d.summary = "load and tokenize tree files via language profiles";
  d.params = {ref("tree", ports::kResourceTree),
              opt("profiles", ValueType::String, std::string())};
  d.ports = {{"corpus", ports::kTokenCorpus}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    ProfileSet profiles = builtin_profiles();
    std::string profile_file = args.str("profiles");
    if (!profile_file.empty())
      profiles = load_profiles(read_text_file(args.ctx->resolve(profile_file), "profile"),
                               profiles, *args.ctx->diags);
    Corpus corpus = tokenize_tree(tree, tree->scan_root, profiles, *args.ctx->diags);
    return std::map<std::string, PortValue>{
        {"corpus", make_port(ports::kTokenCorpus, corpus)}};
  };
  registry.register_processor(std::move(d));
}

// ---- sensors ----------------------------------------------------------

void register_loc_analyzer(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "loc-analyzer";
  d.summary = "size metrics per file: loc, sloc, comment.ratio";
  d.params = {ref("corpus", ports::kTokenCorpus)};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Corpus corpus = corpus_input(args, "corpus");
    Diagnostics& diags = *args.ctx->diags;
    for (auto& file : corpus->files) {
      SizeMetrics m = compute_size_metrics(file.lexed);
      file.node->attach_value("loc", static_cast<double>(m.loc), diags);
      file.node->attach_value("sloc", static_cast<double>(m.sloc), diags);
      file.node->attach_value("comment.ratio", m.comment_ratio, diags);
    }
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, corpus->root)}};
  };
  registry.register_processor(std::move(d));
}

void register_structure_analyzer(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "structure-analyzer";
  d.summary =
      "structure metrics per file: proc.count, proc.avg_length, nesting.max, "
      "condition.ratio, cyclomatic";
  d.params = {ref("corpus", ports::kTokenCorpus)};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Corpus corpus = corpus_input(args, "corpus");
    Diagnostics& diags = *args.ctx->diags;
    for (auto& file : corpus->files) {
      StructureMetrics m = compute_structure_metrics(file.lexed, *file.profile, diags);
      file.node->attach_value("proc.count", static_cast<double>(m.procedure_count), diags);
      file.node->attach_value("proc.avg_length", m.average_procedure_length, diags);
      file.node->attach_value("nesting.max", static_cast<double>(m.max_nesting), diags);
      file.node->attach_value("condition.ratio", m.condition_ratio, diags);
      file.node->attach_value("cyclomatic", static_cast<double>(m.cyclomatic), diags);
    }
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, corpus->root)}};
  };
  registry.register_processor(std::move(d));
}

void register_clone_detector(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "clone-detector";
  d.summary = "token-based clone classes and the cloning ratio (clone.ratio)";
  d.params = {ref("corpus", ports::kTokenCorpus),
              opt("min_length", ValueType::Integer, static_cast<long long>(25))};
  d.ports = {{"report", ports::kCloneReport}, {"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Corpus corpus = corpus_input(args, "corpus");
    Diagnostics& diags = *args.ctx->diags;

    CloneCorpus files;
    for (const auto& file : corpus->files) files[file.path] = &file.lexed.tokens;

    auto classes = detect_clones(files, static_cast<int>(args.integer("min_length")));
    auto report = std::make_shared<CloneReport>(
        cloning_ratio(std::move(classes), files, diags));

    for (auto& file : corpus->files) {
      auto src_lines = file.lexed.token_lines();
      if (src_lines.empty()) continue;
      auto it = report->cloned_lines.find(file.path);
      double cloned = it == report->cloned_lines.end()
                          ? 0.0
                          : static_cast<double>(it->second.size());
      file.node->attach_value("clone.ratio",
                              cloned / static_cast<double>(src_lines.size()), diags);
    }
    corpus->root->attach_value("clone.ratio", report->ratio, diags);

    return std::map<std::string, PortValue>{
        {"report", make_port(ports::kCloneReport, report)},
        {"tree", make_port(ports::kResourceTree, corpus->root)}};
  };
  registry.register_processor(std::move(d));
}

void register_arch_checker(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "arch-checker";
  d.summary = "check import dependencies against a component architecture";
  d.params = {ref("corpus", ports::kTokenCorpus), req("spec", ValueType::String)};
  d.ports = {{"report", ports::kArchReport}, {"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Corpus corpus = corpus_input(args, "corpus");
    Diagnostics& diags = *args.ctx->diags;
    ArchitectureSpec spec = parse_architecture(
        read_text_file(args.ctx->resolve(args.str("spec")), "architecture spec"));

    auto deps = extract_dependencies(*corpus, diags);
    auto result = std::make_shared<ConformanceResult>(check_conformance(deps, spec));

    std::map<std::string, double> per_file;
    for (const auto& v : result->violations) ++per_file[v.dependency.from];
    for (const auto& [path, count] : per_file) {
      if (ResourceNode* node = corpus->root->find(path))
        node->attach_value("arch.violations", count, diags);
    }
    corpus->root->attach_value("arch.violations",
                               static_cast<double>(result->violations.size()), diags);

    return std::map<std::string, PortValue>{
        {"report", make_port(ports::kArchReport, result)},
        {"tree", make_port(ports::kResourceTree, corpus->root)}};
  };
  registry.register_processor(std::move(d));
}

// ---- assessment and aggregation ----------------------------------------

Direction parse_direction(const std::string& text) {
  if (text == "higher-is-worse") return Direction::HigherIsWorse;
  if (text == "lower-is-worse") return Direction::LowerIsWorse;
  throw Error("ProcessorError",
              "direction must be 'higher-is-worse' or 'lower-is-worse', got '" + text + "'");
}

// Nodes carrying the metric with no carrying descendant are the measurement
// leaves; they get assessed, everything above aggregates worst-wins.
bool assess_leaves(ResourceNode& node, const ThresholdRule& rule, const std::string& key,
                   Diagnostics& diags) {
  bool below = false;
  for (auto& child : node.children)
    below |= assess_leaves(*child, rule, key, diags);
  if (below) return true;
  auto value = node.number(rule.metric);
  if (!value) return false;
  node.attach_value(key, assess(*value, rule), diags);
  return true;
}

void register_threshold_assessor(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "threshold-assessor";
  d.summary =
      "classify a metric GREEN/YELLOW/RED by thresholds and aggregate worst-wins";
  d.params = {ref("tree", ports::kResourceTree),
              req("metric", ValueType::String),
              opt("direction", ValueType::String, std::string("higher-is-worse")),
              req("yellow", ValueType::Float),
              req("red", ValueType::Float),
              opt("op", ValueType::String, std::string()),
              opt("blocking", ValueType::Boolean, false)};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    Diagnostics& diags = *args.ctx->diags;

    ThresholdRule rule;
    rule.metric = args.str("metric");
    rule.direction = parse_direction(args.str("direction"));
    rule.yellow = args.number("yellow");
    rule.red = args.number("red");
    validate_rule(rule);

    std::string op_name = args.str("op");
    if (!op_name.empty())
      aggregate_values(*tree, rule.metric, parse_aggregation_op(op_name), diags);

    std::string key = rule.metric + ".assessment";
    assess_leaves(*tree, rule, key, diags);
    aggregate_assessments(*tree, key, diags);

    if (args.boolean("blocking")) {
      if (const Assessment* root = tree->assessment(key); root && root->color == Color::Red)
        args.ctx->blocking.push_back(
            {args.node->decl.id, "RED " + rule.metric + " (" + root->message + ")"});
    }
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, tree)}};
  };
  registry.register_processor(std::move(d));
}

void register_value_aggregator(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "value-aggregator";
  d.summary = "aggregate a file metric up the tree (sum|max|min|avg|median|avg_leaves)";
  d.params = {ref("tree", ports::kResourceTree), req("metric", ValueType::String),
              req("op", ValueType::String)};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    aggregate_values(*tree, args.str("metric"), parse_aggregation_op(args.str("op")),
                     *args.ctx->diags);
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, tree)}};
  };
  registry.register_processor(std::move(d));
}

void register_trend_assessor(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "trend-assessor";
  d.summary = "compare a metric against its history (must-not-increase/decrease)";
  d.params = {ref("tree", ports::kResourceTree),
              req("metric", ValueType::String),
              opt("entity", ValueType::String, std::string()),
              opt("kind", ValueType::String, std::string("must-not-increase")),
              opt("tolerance", ValueType::Float, 0.0),
              opt("blocking", ValueType::Boolean, false)};
  d.ports = {{"result", ports::kTrendResult}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    Diagnostics& diags = *args.ctx->diags;

    auto result = std::make_shared<TrendResult>();
    result->rule.metric = args.str("metric");
    result->rule.tolerance = args.number("tolerance");
    std::string kind = args.str("kind");
    if (kind == "must-not-increase") result->rule.kind = TrendKind::MustNotIncrease;
    else if (kind == "must-not-decrease") result->rule.kind = TrendKind::MustNotDecrease;
    else
      throw Error("ProcessorError",
                  "kind must be 'must-not-increase' or 'must-not-decrease', got '" +
                      kind + "'");
    result->blocking = args.boolean("blocking");

    std::string entity = args.str("entity");
    const ResourceNode* node = tree->find(entity);
    if (!node)
      throw Error("ProcessorError", "entity '" + entity + "' is not in the tree");
    auto current = node->number(result->rule.metric);
    if (!current)
      throw Error("ProcessorError", "entity '" + (entity.empty() ? "<root>" : entity) +
                                        "' carries no value for metric '" +
                                        result->rule.metric + "'");

    if (args.ctx->history) {
      result->series = args.ctx->history->load_series(result->rule.metric, entity, diags);
    } else {
      result->series.metric = result->rule.metric;
      result->series.entity = entity;
      diags.warn("trend check for '" + result->rule.metric +
                 "' runs without a history file; only the current value is known");
    }
    result->series.points.push_back({args.ctx->timestamp, args.ctx->run_id, *current});
    result->verdict = assess_trend(result->series, result->rule);

    if (result->blocking && result->verdict.assessment.color == Color::Red)
      args.ctx->blocking.push_back(
          {args.node->decl.id,
           "RED trend for " + result->rule.metric + " (" +
               result->verdict.assessment.message + ")"});

    return std::map<std::string, PortValue>{
        {"result", make_port(ports::kTrendResult, result)}};
  };
  registry.register_processor(std::move(d));
}

// ---- rendering and plumbing ---------------------------------------------

void register_treemap_renderer(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "treemap-renderer";
  d.summary = "squarified tree-map layout weighted by a metric";
  d.params = {ref("tree", ports::kResourceTree),
              opt("weight", ValueType::String, std::string("loc")),
              opt("color", ValueType::String, std::string()),
              opt("width", ValueType::Float, 800.0),
              opt("height", ValueType::Float, 500.0)};
  d.ports = {{"layout", ports::kTreemapLayout}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    std::string color = args.str("color");
    std::string color_key = color.empty() ? std::string() : color + ".assessment";
    auto layout = std::make_shared<TreeMapLayout>(
        layout_treemap(*tree, args.str("weight"), color_key,
                       Rect{0, 0, args.number("width"), args.number("height")}));
    return std::map<std::string, PortValue>{
        {"layout", make_port(ports::kTreemapLayout, layout)}};
  };
  registry.register_processor(std::move(d));
}

void register_tree_filter(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "tree-filter";
  d.summary = "copy a tree keeping only files matching include/exclude globs";
  d.params = {ref("tree", ports::kResourceTree),
              opt("include", ValueType::StringList, std::vector<std::string>{}),
              opt("exclude", ValueType::StringList, std::vector<std::string>{})};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    std::vector<std::string> include = args.list("include");
    if (include.empty()) include.push_back("**/*");
    auto filtered = clone_subtree(*tree, include, args.list("exclude"));
    if (!filtered) {
      filtered = std::make_unique<ResourceNode>();
      filtered->path = tree->path;
      filtered->scan_root = tree->scan_root;
    }
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, Tree(filtered.release()))}};
  };
  registry.register_processor(std::move(d));
}

void register_attach_value(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "attach-value";
  d.summary = "attach a constant metric value to one tree entity";
  d.params = {ref("tree", ports::kResourceTree), req("metric", ValueType::String),
              req("value", ValueType::Float),
              opt("entity", ValueType::String, std::string())};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    ResourceNode* node = tree->find(args.str("entity"));
    if (!node)
      throw Error("ProcessorError", "entity '" + args.str("entity") + "' is not in the tree");
    node->attach_value(args.str("metric"), args.number("value"), *args.ctx->diags);
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, tree)}};
  };
  registry.register_processor(std::move(d));
}

void register_metric_writer(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "metric-writer";
  d.summary = "dump tree metrics as tab-separated entity/metric/value lines";
  d.params = {ref("tree", ports::kResourceTree), req("file", ValueType::String)};
  d.ports = {{"tree", ports::kResourceTree}};
  d.fn = [](ProcessorArgs& args) {
    Tree tree = tree_input(args, "tree");
    std::filesystem::path file(args.str("file"));
    if (!file.is_absolute()) file = args.ctx->out_dir / file;
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("ProcessorError", "cannot write '" + file.string() + "'");
    tree->visit([&](const ResourceNode& node) {
      for (const auto& [metric, value] : node.values) {
        if (const double* num = std::get_if<double>(&value))
          out << node.path << '\t' << metric << '\t' << format_double(*num) << '\n';
      }
    });
    return std::map<std::string, PortValue>{
        {"tree", make_port(ports::kResourceTree, tree)}};
  };
  registry.register_processor(std::move(d));
}

void register_limit_gate(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "limit-gate";
  d.summary = "flag a number exceeding a limit; optionally gate the run";
  d.params = {ref("value", ports::kNumber), req("max", ValueType::Float),
              opt("blocking", ValueType::Boolean, false)};
  d.ports = {{"value", ports::kNumber}};
  d.fn = [](ProcessorArgs& args) {
    double v = std::any_cast<double>(args.input("value").value);
    double max = args.number("max");
    if (v > max) {
      std::string message = format_double(v) + " exceeds limit " + format_double(max);
      args.ctx->diags->warn("limit-gate '" + args.node->decl.id + "': " + message);
      if (args.boolean("blocking"))
        args.ctx->blocking.push_back({args.node->decl.id, message});
    }
    return std::map<std::string, PortValue>{{"value", make_port(ports::kNumber, v)}};
  };
  registry.register_processor(std::move(d));
}

void register_constant_value(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "constant-value";
  d.summary = "emit a constant number";
  d.params = {req("value", ValueType::Float)};
  d.ports = {{"value", ports::kNumber}};
  d.fn = [](ProcessorArgs& args) {
    return std::map<std::string, PortValue>{
        {"value", make_port(ports::kNumber, args.number("value"))}};
  };
  registry.register_processor(std::move(d));
}

void register_add_values(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "add-values";
  d.summary = "sum of two number inputs";
  d.params = {ref("a", ports::kNumber), ref("b", ports::kNumber)};
  d.ports = {{"value", ports::kNumber}};
  d.fn = [](ProcessorArgs& args) {
    double a = std::any_cast<double>(args.input("a").value);
    double b = std::any_cast<double>(args.input("b").value);
    return std::map<std::string, PortValue>{
        {"value", make_port(ports::kNumber, a + b)}};
  };
  registry.register_processor(std::move(d));
}

void register_scale_value(Registry& registry) {
  ProcessorDescriptor d;
  d.kind = "scale-value";
  d.summary = "multiply a number input by a constant factor";
  d.params = {ref("value", ports::kNumber), opt("factor", ValueType::Float, 1.0)};
  d.ports = {{"value", ports::kNumber}};
  d.fn = [](ProcessorArgs& args) {
    double v = std::any_cast<double>(args.input("value").value);
    return std::map<std::string, PortValue>{
        {"value", make_port(ports::kNumber, v * args.number("factor"))}};
  };
  registry.register_processor(std::move(d));
}

}  // namespace

Registry default_registry() {
  Registry registry;
  register_source_scanner(registry);
  register_tokenizer(registry);
  register_loc_analyzer(registry);
  register_structure_analyzer(registry);
  register_clone_detector(registry);
  register_arch_checker(registry);
  register_threshold_assessor(registry);
  register_value_aggregator(registry);
  register_trend_assessor(registry);
  register_treemap_renderer(registry);
  register_tree_filter(registry);
  register_attach_value(registry);
  register_metric_writer(registry);
  register_limit_gate(registry);
  register_constant_value(registry);
  register_add_values(registry);
  register_scale_value(registry);
  return registry;
}

}  // namespace conquard
