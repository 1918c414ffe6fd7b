#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "conquard/config.hpp"
#include "conquard/diagnostics.hpp"
#include "conquard/history.hpp"
#include "conquard/registry.hpp"
#include "conquard/treemap.hpp"

namespace conquard {

/// One output-marked processor result handed to the renderer. The payload
/// (PortValue.value) holds the shared_ptr matching its port type name.
struct ReportArtifact {
  std::string source;  // processor id
  std::string port;
  PortValue value;
};

struct ReportOptions {
  std::filesystem::path out_dir;
  std::string run_id;
  std::string timestamp;       // pinned for byte-deterministic output
  std::vector<ViewSpec> views; // empty: a single full "dashboard" view
};

/// Renders the static HTML dashboard: `index.html` plus one self-contained
/// `view-<id>.html` per view, and `clones.txt` when a clone report is among
/// the artifacts. A view page only shows entities matching its scope filter;
/// artifacts mentioning out-of-scope entities are left off that page.
/// Returns the emitted files. Throws OutputDirUnwritable.
std::vector<std::filesystem::path> render_report(std::vector<ReportArtifact> artifacts,
                                                 const ReportOptions& options,
                                                 Diagnostics& diags);

/// Inline SVG line chart for a trend series; the final segment is flagged
/// when the verdict is RED. Throws EmptySeries for zero points.
std::string render_trend_chart(const TrendSeries& series, const TrendVerdict& verdict);

/// Inline SVG rendering of a tree-map layout.
std::string render_treemap_svg(const TreeMapLayout& layout);

/// Escapes &, <, > (and quotes in attribute context).
std::string html_escape(std::string_view text);

}  // namespace conquard
