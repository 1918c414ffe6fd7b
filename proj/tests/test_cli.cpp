#include "conquard/run.hpp"

#include <sstream>

#include "conquard/history.hpp"
#include "conquard/processors.hpp"
#include "doctest.h"
#include "support/temp_dir.hpp"

using namespace conquard;
using testsupport::TempDir;
using testsupport::read_file;

namespace {

const char* kMinimalConfig =
    "processor src : source-scanner\n"
    "  include = [**/*.c]\n"
    "processor tok : tokenizer\n"
    "  tree = @src.tree\n"
    "processor size : loc-analyzer\n"
    "  corpus = @tok.corpus\n"
    "output size\n"
    "view all\n"
    "  audience = \"Everyone\"\n";

RunOptions options_for(const TempDir& dir, const std::string& config_text) {
  RunOptions options;
  options.config = dir.write("pipeline.conq", config_text);
  options.project = dir.path();
  options.out = dir.path() / "out";
  options.run_id = "r1";
  options.timestamp = "2026-08-11T00:00:00Z";
  return options;
}

}  // namespace

TEST_CASE("a valid minimal config runs to exit 0 and emits a report") {
  TempDir dir;
  dir.write("hello.c", "int main() { return 0; }\n");
  RunOptions options = options_for(dir, kMinimalConfig);
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitOk);
  CHECK(std::filesystem::exists(options.out / "index.html"));
  CHECK(std::filesystem::exists(options.out / "view-all.html"));
  std::string page = read_file(options.out / "view-all.html");
  CHECK(page.find("hello.c") != std::string::npos);
  CHECK(page.find("loc") != std::string::npos);
}

TEST_CASE("a config with a cycle exits 1 and names the cycle") {
  TempDir dir;
  RunOptions options = options_for(dir,
                                   "processor a : scale-value\n"
                                   "  value = @b.value\n"
                                   "processor b : scale-value\n"
                                   "  value = @a.value\n");
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitConfigError);
  CHECK(err.str().find("CycleDetected") != std::string::npos);
  CHECK(err.str().find("->") != std::string::npos);
}

TEST_CASE("validate reports OK with node and edge counts") {
  TempDir dir;
  RunOptions options = options_for(dir, kMinimalConfig);
  std::ostringstream out, err;
  CHECK(cmd_validate(options, default_registry(), out, err) == kExitOk);
  CHECK(out.str().find("OK (3 processors, 2 edges") != std::string::npos);
}

TEST_CASE("validate is static: result identical with or without project files") {
  TempDir with_files;
  with_files.write("a.c", "int x;\n");
  TempDir without_files;
  std::ostringstream out1, out2, err;
  RunOptions opt1 = options_for(with_files, kMinimalConfig);
  RunOptions opt2 = options_for(without_files, kMinimalConfig);
  CHECK(cmd_validate(opt1, default_registry(), out1, err) ==
        cmd_validate(opt2, default_registry(), out2, err));
  CHECK(out1.str() == out2.str());
}

TEST_CASE("unknown processor kinds fail validation naming the kind") {
  TempDir dir;
  RunOptions options = options_for(dir, "processor a : fantasy-kind\n");
  std::ostringstream out, err;
  CHECK(cmd_validate(options, default_registry(), out, err) == kExitConfigError);
  CHECK(err.str().find("fantasy-kind") != std::string::npos);
}

TEST_CASE("dry-run equals validate, including the exit code") {
  TempDir dir;
  dir.write("a.c", "int x;\n");
  RunOptions options = options_for(dir, kMinimalConfig);
  options.dry_run = true;
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitOk);
  CHECK_FALSE(std::filesystem::exists(options.out / "index.html"));  // nothing executed

  RunOptions bad = options_for(dir, "processor a : fantasy-kind\n");
  bad.dry_run = true;
  std::ostringstream err2;
  CHECK(cmd_run(bad, default_registry(), err2) == kExitConfigError);
}

TEST_CASE("a failing processor yields exit 2 but the report still renders") {
  TempDir dir;
  dir.write("a.c", "int x;\n");
  std::string config = std::string(kMinimalConfig) +
                       "processor broken : arch-checker\n"
                       "  corpus = @tok.corpus\n"
                       "  spec = \"no-such-file.arch\"\n";
  RunOptions options = options_for(dir, config);
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitExecutionFailure);
  CHECK(err.str().find("broken") != std::string::npos);
  CHECK(std::filesystem::exists(options.out / "index.html"));  // fail-soft
}

TEST_CASE("blocking RED threshold produces exit 3") {
  TempDir dir;
  dir.write("deep.c",
            "void f() { if (a) { if (b) { if (c) { if (d) { } } } } }\n");
  std::string config = std::string(kMinimalConfig) +
                       "processor structure : structure-analyzer\n"
                       "  corpus = @tok.corpus\n"
                       "processor gate : threshold-assessor\n"
                       "  tree = @structure.tree\n"
                       "  metric = \"cyclomatic\"\n"
                       "  yellow = 2\n"
                       "  red = 3\n"
                       "  blocking = true\n"
                       "output gate\n";
  RunOptions options = options_for(dir, config);
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitBlockingRed);
  CHECK(err.str().find("blocking") != std::string::npos);

  // The same run without `blocking` reports but does not gate.
  std::string soft = config;
  auto pos = soft.find("  blocking = true\n");
  soft.erase(pos, std::string("  blocking = true\n").size());
  TempDir dir2;
  dir2.write("deep.c", "void f() { if (a) { if (b) { if (c) { if (d) { } } } } }\n");
  RunOptions options2 = options_for(dir2, soft);
  std::ostringstream err2;
  CHECK(cmd_run(options2, default_registry(), err2) == kExitOk);
}

TEST_CASE("a missing config file exits 1") {
  RunOptions options;
  options.config = "/no/such/pipeline.conq";
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitConfigError);
  CHECK(err.str().find("pipeline.conq") != std::string::npos);
}

TEST_CASE("concurrent history access is rejected with exit 2") {
  TempDir dir;
  dir.write("a.c", "int x;\n");
  RunOptions options = options_for(dir, kMinimalConfig);
  options.history_file = dir.path() / "h.tsv";
  StoreLock held(*options.history_file);  // another run holds the store
  std::ostringstream err;
  CHECK(cmd_run(options, default_registry(), err) == kExitExecutionFailure);
  CHECK(err.str().find("StoreLocked") != std::string::npos);
}

TEST_CASE("list-processors covers the shipped catalog, sorted, one line each") {
  std::string catalog = list_processors_text(default_registry());
  for (const char* kind : {"loc-analyzer", "clone-detector", "arch-checker",
                           "threshold-assessor", "treemap-renderer", "source-scanner",
                           "tokenizer", "structure-analyzer", "value-aggregator",
                           "trend-assessor"})
    CHECK(catalog.find(kind) != std::string::npos);

  std::vector<std::string> lines;
  std::istringstream in(catalog);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line.substr(0, line.find(' ')));
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(lines.size() == default_registry().kinds().size());
}

TEST_CASE("a registered custom kind appears in the catalog") {
  Registry registry = default_registry();
  std::size_t before = registry.kinds().size();
  ProcessorDescriptor d;
  d.kind = "zz-custom";
  d.fn = [](ProcessorArgs&) { return std::map<std::string, PortValue>{}; };
  registry.register_processor(std::move(d));
  std::string catalog = list_processors_text(registry);
  CHECK(catalog.find("zz-custom") != std::string::npos);
  CHECK(static_cast<std::size_t>(std::count(catalog.begin(), catalog.end(), '\n')) ==
        before + 1);
}

TEST_CASE("exit 3 for a blocking rising trend across three runs") {
  // Run the full CLI path three times against one history store with the
  // cloning ratio anchored at 16 percent, then rising.
  auto config_with_ratio = [](double fake_ratio) {
    return
        "processor src : source-scanner\n"
        "  include = [**/*.c]\n"
        "processor tok : tokenizer\n"
        "  tree = @src.tree\n"
        "processor size : loc-analyzer\n"
        "  corpus = @tok.corpus\n"
        "processor fake : attach-value\n"
        "  tree = @size.tree\n"
        "  metric = \"clone.ratio\"\n"
        "  value = " + std::to_string(fake_ratio) + "\n"
        "processor trend : trend-assessor\n"
        "  tree = @fake.tree\n"
        "  metric = \"clone.ratio\"\n"
        "  blocking = true\n"
        "output fake\n"
        "output trend\n";
  };

  TempDir dir;
  dir.write("a.c", "int x;\n");
  auto history = dir.path() / "history.tsv";

  auto run_once = [&](int n, double ratio) {
    RunOptions options;
    options.config = dir.write("p" + std::to_string(n) + ".conq", config_with_ratio(ratio));
    options.project = dir.path();
    options.out = dir.path() / ("out" + std::to_string(n));
    options.history_file = history;
    options.run_id = "run" + std::to_string(n);
    options.timestamp = "2026-08-1" + std::to_string(n) + "T00:00:00Z";
    std::ostringstream err;
    int code = cmd_run(options, default_registry(), err);
    INFO(err.str());
    return code;
  };

  CHECK(run_once(1, 0.16) == kExitOk);  // insufficient history: GREEN
  CHECK(run_once(2, 0.16) == kExitOk);  // steady: GREEN
  CHECK(run_once(3, 0.18) == kExitBlockingRed);
}
