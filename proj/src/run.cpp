#include "conquard/run.hpp"

#include <fstream>
#include <memory>
#include <ostream>
#include <set>

#include "conquard/engine.hpp"
#include "conquard/errors.hpp"
#include "conquard/glob.hpp"
#include "conquard/history.hpp"
#include "conquard/ports.hpp"
#include "conquard/report.hpp"
#include "conquard/resource.hpp"

namespace fs = std::filesystem;

namespace conquard {

namespace {

std::string read_config_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw Error("ConfigNotFound", "cannot read config '" + file.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

struct ValidatedConfig {
  PipelineConfig config;
  ExecutionGraph graph;
};

ValidatedConfig load_and_validate(const RunOptions& options, const Registry& registry) {
  ValidatedConfig v;
  v.config = expand_blocks(parse_config(read_config_file(options.config)));
  v.graph = build_graph(v.config, registry);
  return v;
}

// Snapshot records for the root entity of every output tree, plus entities
// matched by the config's `history` section globs. First value wins on
// duplicates across trees.
std::vector<SnapshotRecord> collect_snapshot(
    const std::vector<ReportArtifact>& artifacts,
    const std::vector<std::string>& entity_globs, Diagnostics& diags) {
  std::vector<SnapshotRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  std::set<const void*> seen_trees;

  for (const auto& artifact : artifacts) {
    if (artifact.value.type != ports::kResourceTree) continue;
    std::shared_ptr<ResourceNode> tree;
    try {
      tree = std::any_cast<std::shared_ptr<ResourceNode>>(artifact.value.value);
    } catch (const std::bad_any_cast&) {
      continue;
    }
    if (!tree || !seen_trees.insert(tree.get()).second) continue;

    tree->visit([&](const ResourceNode& node) {
      bool wanted = node.path.empty() || glob_match_any(entity_globs, node.path);
      if (!wanted) return;
      for (const auto& [metric, value] : node.values) {
        const double* num = std::get_if<double>(&value);
        if (!num) continue;
        if (!seen.insert({node.path, metric}).second) {
          diags.warn("snapshot entity '" + node.path + "' metric '" + metric +
                     "' produced by more than one output tree; first value kept");
          continue;
        }
        records.push_back({"", "", node.path, metric, *num});
      }
    });
  }
  return records;
}

}  // namespace

std::string list_processors_text(const Registry& registry) {
  std::string out;
  for (const auto& [kind, descriptor] : registry.kinds()) {
    out += kind;
    for (const auto& p : descriptor.params) {
      out += ' ' + p.name + ':';
      if (p.type == ValueType::Ref)
        out += "ref(" + (p.ref_type.empty() ? "any" : p.ref_type) + ")";
      else
        out += value_type_name(p.type);
      if (p.default_value) out += '=' + param_value_to_string(*p.default_value);
      else if (p.required) out += '*';
    }
    out += " ->";
    for (const auto& port : descriptor.ports) out += ' ' + port.name + ':' + port.type;
    out += '\n';
  }
  return out;
}

int cmd_validate(const RunOptions& options, const Registry& registry, std::ostream& out,
                 std::ostream& err) {
  try {
    ValidatedConfig v = load_and_validate(options, registry);
    out << "OK (" << v.graph.nodes.size() << " processors, " << v.graph.edges.size()
        << " edges, " << v.config.views.size() << " views)\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

int cmd_run(const RunOptions& options, const Registry& registry, std::ostream& err) {
  if (options.dry_run) {
    // --dry-run equals validate.
    return cmd_validate(options, registry, err, err);
  }

  ValidatedConfig v;
  try {
    v = load_and_validate(options, registry);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  Diagnostics diags;
  RunContext ctx;
  ctx.project_root = options.project;
  ctx.out_dir = options.out;
  ctx.diags = &diags;
  ctx.timestamp = options.timestamp.empty() ? utc_timestamp_now() : options.timestamp;
  ctx.run_id = options.run_id.empty() ? ctx.timestamp : options.run_id;

  std::unique_ptr<HistoryStore> store;
  std::unique_ptr<StoreLock> lock;
  if (options.history_file) {
    try {
      lock = std::make_unique<StoreLock>(*options.history_file);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitExecutionFailure;
    }
    store = std::make_unique<HistoryStore>(*options.history_file);
    ctx.history = store.get();
  }

  auto results = execute(v.graph, ctx);

  long long failed = 0, skipped = 0;
  for (const auto& [id, result] : results) {
    if (result.status == NodeStatus::Failed) {
      ++failed;
      err << "error: processor '" << id << "' failed: " << result.error << '\n';
    } else if (result.status == NodeStatus::FailedUpstream) {
      ++skipped;
    }
  }

  // Assemble report inputs from output-marked processors, sorted by id so
  // declaration order cannot leak into the report bytes.
  std::vector<std::string> output_ids = v.graph.outputs;
  std::sort(output_ids.begin(), output_ids.end());
  std::vector<ReportArtifact> artifacts;
  for (const auto& id : output_ids) {
    auto it = results.find(id);
    if (it == results.end() || it->second.status != NodeStatus::Ok) {
      diags.warn("output '" + id + "' has no result; left out of the report");
      continue;
    }
    for (const auto& [port, value] : it->second.outputs)
      artifacts.push_back({id, port, value});
  }

  int exit_code = kExitOk;

  if (store) {
    auto records = collect_snapshot(artifacts, v.config.history_entities, diags);
    if (records.empty()) {
      diags.warn("no output tree carries numeric metrics; nothing appended to history");
    } else {
      try {
        store->append_snapshot(ctx.run_id, ctx.timestamp, records, diags);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        exit_code = kExitExecutionFailure;
      }
    }
  }

  try {
    ReportOptions report;
    report.out_dir = options.out;
    report.run_id = ctx.run_id;
    report.timestamp = ctx.timestamp;
    report.views = v.config.views;
    auto written = render_report(std::move(artifacts), report, diags);
    if (options.verbosity > 0)
      for (const auto& file : written) err << "wrote " << file.string() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    exit_code = kExitExecutionFailure;
  }

  diags.print(err);

  if (failed > 0) {
    err << "run finished with " << failed << " failed and " << skipped
        << " skipped processor(s)\n";
    return kExitExecutionFailure;
  }
  if (exit_code != kExitOk) return exit_code;

  if (!ctx.blocking.empty()) {
    for (const auto& verdict : ctx.blocking)
      err << "blocking: " << verdict.source << ": " << verdict.message << '\n';
    return kExitBlockingRed;
  }
  return kExitOk;
}

}  // namespace conquard
