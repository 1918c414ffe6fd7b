#include "conquard/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>

#include "conquard/arch.hpp"
#include "conquard/clones.hpp"
#include "conquard/errors.hpp"
#include "conquard/glob.hpp"
#include "conquard/ports.hpp"
#include "conquard/resource.hpp"

namespace fs = std::filesystem;

namespace conquard {

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Integers print without decimals, everything else in shortest form.
std::string format_metric(double v) {
  if (std::floor(v) == v && std::fabs(v) < 1e15)
    return std::to_string(static_cast<long long>(v));
  return format_double(v);
}

const char* color_class(Color c) {
  switch (c) {
    case Color::Green: return "ok";
    case Color::Yellow: return "warn";
    case Color::Red: return "bad";
  }
  return "na";
}

const char* kStyle = R"(body{font-family:sans-serif;margin:24px;color:#212121}
h1{font-size:1.4em}h2{font-size:1.1em;margin-top:1.6em}
table{border-collapse:collapse;margin:8px 0}
td,th{border:1px solid #bdbdbd;padding:3px 8px;font-size:0.85em;text-align:left}
th{background:#eeeeee}
td.num{text-align:right}
.ok{background:#c8e6c9}.warn{background:#fff9c4}.bad{background:#ffcdd2}.na{color:#9e9e9e}
.meta{color:#616161;font-size:0.85em}
svg{margin:8px 0}
rect.ok{fill:#66bb6a}rect.warn{fill:#fdd835}rect.bad{fill:#e53935}rect.tmna{fill:#bdbdbd}
rect.tm{stroke:#fafafa;stroke-width:0.5}
rect.tmdir{fill:none;stroke:#424242;stroke-width:1}
text.tmlabel{font-size:11px;fill:#212121}
line.axis{stroke:#757575;stroke-width:1}
line.seg{stroke:#1976d2;stroke-width:2}
line.seg.bad{stroke:#e53935}
circle.pt{fill:#1976d2}
text.lbl{font-size:11px;fill:#424242}
)";

struct Artifacts {
  std::vector<std::pair<std::string, std::shared_ptr<ResourceNode>>> trees;
  std::vector<std::pair<std::string, std::shared_ptr<CloneReport>>> clones;
  std::vector<std::pair<std::string, std::shared_ptr<ConformanceResult>>> arch;
  std::vector<std::pair<std::string, std::shared_ptr<TrendResult>>> trends;
  std::vector<std::pair<std::string, std::shared_ptr<TreeMapLayout>>> layouts;
  std::vector<std::pair<std::string, double>> numbers;
};

Artifacts sort_artifacts(std::vector<ReportArtifact>& raw, Diagnostics& diags) {
  std::sort(raw.begin(), raw.end(), [](const ReportArtifact& a, const ReportArtifact& b) {
    if (a.source != b.source) return a.source < b.source;
    return a.port < b.port;
  });

  Artifacts out;
  std::set<const void*> seen_trees;
  for (const auto& artifact : raw) {
    const std::string& type = artifact.value.type;
    try {
      if (type == ports::kResourceTree) {
        auto tree = std::any_cast<std::shared_ptr<ResourceNode>>(artifact.value.value);
        // Several processors typically hand the same annotated tree around;
        // it is rendered once, attributed to the first source.
        if (tree && seen_trees.insert(tree.get()).second)
          out.trees.emplace_back(artifact.source, tree);
      } else if (type == ports::kCloneReport) {
        out.clones.emplace_back(
            artifact.source, std::any_cast<std::shared_ptr<CloneReport>>(artifact.value.value));
      } else if (type == ports::kArchReport) {
        out.arch.emplace_back(artifact.source,
                              std::any_cast<std::shared_ptr<ConformanceResult>>(artifact.value.value));
      } else if (type == ports::kTrendResult) {
        out.trends.emplace_back(artifact.source,
                                std::any_cast<std::shared_ptr<TrendResult>>(artifact.value.value));
      } else if (type == ports::kTreemapLayout) {
        out.layouts.emplace_back(artifact.source,
                                 std::any_cast<std::shared_ptr<TreeMapLayout>>(artifact.value.value));
      } else if (type == ports::kNumber) {
        out.numbers.emplace_back(artifact.source, std::any_cast<double>(artifact.value.value));
      } else {
        diags.warn("output '" + artifact.source + "' has unrenderable type '" + type +
                   "'; skipped in report");
      }
    } catch (const std::bad_any_cast&) {
      diags.warn("output '" + artifact.source + "' carries a malformed '" + type +
                 "' payload; skipped in report");
    }
  }
  return out;
}

bool in_scope(const ViewSpec& view, const std::string& path) {
  return glob_match(view.scope, path);
}

bool wants_metric(const ViewSpec& view, const std::string& metric) {
  return view.metrics.empty() ||
         std::find(view.metrics.begin(), view.metrics.end(), metric) != view.metrics.end();
}

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("OutputDirUnwritable", "cannot write '" + file.string() + "'");
  out << content;
  out.flush();
  if (!out)
    throw Error("OutputDirUnwritable", "write to '" + file.string() + "' failed");
}

std::string page_head(const std::string& title) {
  std::string html = "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"/><title>";
  html += html_escape(title);
  html += "</title><style>";
  html += kStyle;
  html += "</style></head>\n<body>\n";
  return html;
}

void metric_table(std::string& html, const ViewSpec& view, const std::string& source,
                  const ResourceNode& tree) {
  // Entities: scope filter always; OVERVIEW keeps root and top level only.
  std::vector<const ResourceNode*> rows;
  tree.visit([&](const ResourceNode& node) {
    if (view.detail == ViewDetail::Overview &&
        !(node.path.empty() || node.path.find('/') == std::string::npos))
      return;
    if (!in_scope(view, node.path)) return;
    rows.push_back(&node);
  });
  if (rows.empty()) return;

  std::vector<std::string> columns = view.metrics;
  if (columns.empty()) {
    std::set<std::string> keys;
    for (const auto* node : rows)
      for (const auto& [key, value] : node->values) {
        if (key.size() > 11 && key.rfind(".assessment") == key.size() - 11) continue;
        keys.insert(key);
      }
    columns.assign(keys.begin(), keys.end());
  }

  html += "<h2>Metrics &#8212; " + html_escape(source) + "</h2>\n<table>\n<tr><th>Entity</th>";
  for (const auto& col : columns) html += "<th>" + html_escape(col) + "</th>";
  html += "</tr>\n";
  for (const auto* node : rows) {
    html += "<tr><td>";
    html += node->path.empty() ? "&lt;root&gt;" : html_escape(node->path);
    html += node->is_file() ? "" : "/";
    html += "</td>";
    for (const auto& col : columns) {
      auto value = node->value(col);
      if (!value) {
        html += "<td class=\"na\">-</td>";
        continue;
      }
      if (const auto* num = std::get_if<double>(&*value)) {
        std::string cls = "num";
        std::string title;
        if (const Assessment* a = node->assessment(col + ".assessment")) {
          cls += std::string(" ") + color_class(a->color);
          if (!a->message.empty()) title = a->message;
        }
        html += "<td class=\"" + cls + "\"";
        if (!title.empty()) html += " title=\"" + html_escape(title) + "\"";
        html += ">" + format_metric(*num) + "</td>";
      } else {
        const Assessment& a = std::get<Assessment>(*value);
        html += std::string("<td class=\"") + color_class(a.color) + "\"";
        if (!a.message.empty()) html += " title=\"" + html_escape(a.message) + "\"";
        html += std::string(">") + color_name(a.color) + "</td>";
      }
    }
    html += "</tr>\n";
  }
  html += "</table>\n";
}

void clone_section(std::string& html, const std::string& source, const CloneReport& report) {
  html += "<h2>Clones &#8212; " + html_escape(source) + "</h2>\n";
  html += "<p>cloning ratio <b>" + fmt2(report.ratio * 100) + "%</b> (" +
          std::to_string(report.total_cloned) + " of " + std::to_string(report.total_sloc) +
          " source lines in at least one clone); " + std::to_string(report.classes.size()) +
          " clone classes</p>\n";
  if (report.classes.empty()) return;

  const std::size_t limit = 20;
  html += "<table>\n<tr><th>Class</th><th>Tokens</th><th>Copies</th><th>First occurrence</th></tr>\n";
  for (std::size_t i = 0; i < report.classes.size() && i < limit; ++i) {
    const CloneClass& cls = report.classes[i];
    const CloneOccurrence& first = cls.occurrences.front();
    html += "<tr><td>C" + std::to_string(i + 1) + "</td><td class=\"num\">" +
            std::to_string(cls.length) + "</td><td class=\"num\">" +
            std::to_string(cls.occurrences.size()) + "</td><td>" +
            html_escape(first.path) + " lines " + std::to_string(first.start_line) + "-" +
            std::to_string(first.end_line) + "</td></tr>\n";
  }
  html += "</table>\n";
  if (report.classes.size() > limit)
    html += "<p class=\"meta\">listing the " + std::to_string(limit) + " longest of " +
            std::to_string(report.classes.size()) +
            " classes; see clones.txt for the full machine-readable listing</p>\n";
}

void arch_section(std::string& html, const std::string& source,
                  const ConformanceResult& result) {
  html += "<h2>Architecture conformance &#8212; " + html_escape(source) + "</h2>\n";
  html += "<p>" + std::to_string(result.violations.size()) + " violation(s), " +
          std::to_string(result.internal_dependencies) + " internal and " +
          std::to_string(result.external_dependencies) + " external dependencies</p>\n";

  if (!result.edge_summary.empty()) {
    html += "<table>\n<tr><th>From</th><th>To</th><th>Edges</th><th>Policy</th></tr>\n";
    for (const auto& edge : result.edge_summary) {
      html += "<tr><td>" + html_escape(edge.from) + "</td><td>" + html_escape(edge.to) +
              "</td><td class=\"num\">" + std::to_string(edge.count) + "</td><td class=\"" +
              (edge.allowed ? "ok" : "bad") + "\">" + (edge.allowed ? "allowed" : "forbidden") +
              "</td></tr>\n";
    }
    html += "</table>\n";
  }

  if (!result.violations.empty()) {
    const std::size_t limit = 50;
    html += "<table>\n<tr><th>Kind</th><th>Where</th><th>Detail</th></tr>\n";
    for (std::size_t i = 0; i < result.violations.size() && i < limit; ++i) {
      const Violation& v = result.violations[i];
      if (v.reason == ViolationReason::UnmappedFile) {
        html += "<tr><td class=\"warn\">unmapped file</td><td>" +
                html_escape(v.dependency.from) +
                "</td><td>not matched by any component</td></tr>\n";
      } else {
        html += "<tr><td class=\"bad\">forbidden edge</td><td>" +
                html_escape(v.dependency.from) + ":" + std::to_string(v.dependency.line) +
                "</td><td>" + html_escape(v.from_component) + " &#8594; " +
                html_escape(v.to_component) + " (imports " + html_escape(v.dependency.to) +
                ")</td></tr>\n";
      }
    }
    html += "</table>\n";
    if (result.violations.size() > limit)
      html += "<p class=\"meta\">first " + std::to_string(limit) + " of " +
              std::to_string(result.violations.size()) + " violations</p>\n";
  }
}

void trend_section(std::string& html, const std::string& source, const TrendResult& trend) {
  html += "<h2>Trend &#8212; " + html_escape(trend.rule.metric) +
          (trend.series.entity.empty() ? "" : " @ " + html_escape(trend.series.entity)) +
          " (" + html_escape(source) + ")</h2>\n";
  const Assessment& a = trend.verdict.assessment;
  html += std::string("<p>verdict <b class=\"") + color_class(a.color) + "\">" +
          color_name(a.color) + "</b> &#8212; " + html_escape(a.message) +
          (trend.blocking ? " (blocking)" : "") + "</p>\n";
  if (!trend.series.points.empty())
    html += render_trend_chart(trend.series, trend.verdict) + "\n";
}

}  // namespace

std::string render_treemap_svg(const TreeMapLayout& layout) {
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    fmt2(layout.width) + "\" height=\"" + fmt2(layout.height) +
                    "\" viewBox=\"0 0 " + fmt2(layout.width) + " " + fmt2(layout.height) +
                    "\">\n";
  auto rect_attrs = [](const Rect& r) {
    return "x=\"" + fmt2(r.x) + "\" y=\"" + fmt2(r.y) + "\" width=\"" + fmt2(r.w) +
           "\" height=\"" + fmt2(r.h) + "\"";
  };

  for (const auto& cell : layout.cells) {
    if (!cell.leaf) continue;
    std::string cls = "tm ";
    cls += cell.assessment ? color_class(cell.assessment->color) : "tmna";
    svg += "<rect class=\"" + cls + "\" " + rect_attrs(cell.rect) + "><title>" +
           html_escape(cell.path.empty() ? "<root>" : cell.path) + " &#8212; " +
           layout.weight_metric + " " + format_metric(cell.weight) + "</title></rect>\n";
  }
  for (const auto& cell : layout.cells) {
    if (cell.leaf || cell.depth == 0) continue;
    svg += "<rect class=\"tmdir\" " + rect_attrs(cell.rect) + "><title>" +
           html_escape(cell.path) + " &#8212; " + layout.weight_metric + " " +
           format_metric(cell.weight) + "</title></rect>\n";
  }
  for (const auto& cell : layout.cells) {
    if (cell.depth != 1 || cell.rect.w < 70 || cell.rect.h < 16) continue;
    std::string name = cell.path;
    auto slash = name.rfind('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    svg += "<text class=\"tmlabel\" x=\"" + fmt2(cell.rect.x + 3) + "\" y=\"" +
           fmt2(cell.rect.y + 13) + "\">" + html_escape(name) + "</text>\n";
  }
  svg += "</svg>";
  return svg;
}

std::string render_trend_chart(const TrendSeries& series, const TrendVerdict& verdict) {
  if (series.points.empty())
    throw Error("EmptySeries", "cannot chart an empty trend series");

  const double width = 640, height = 220;
  const double left = 60, right = 20, top = 20, bottom = 35;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const std::size_t n = series.points.size();

  double vmin = series.points.front().value, vmax = vmin;
  for (const auto& p : series.points) {
    vmin = std::min(vmin, p.value);
    vmax = std::max(vmax, p.value);
  }
  double span = vmax - vmin;
  if (span <= 0) span = std::max(std::fabs(vmax), 1.0) * 0.2;

  auto px = [&](std::size_t i) {
    if (n == 1) return left + plot_w / 2;
    return left + plot_w * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  auto py = [&](double v) { return top + (vmax - v) / span * plot_h; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) +
                    "\" height=\"" + fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) +
                    " " + fmt2(height) + "\">\n";
  svg += "<line class=\"axis\" x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top) + "\" x2=\"" +
         fmt2(left) + "\" y2=\"" + fmt2(top + plot_h) + "\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top + plot_h) +
         "\" x2=\"" + fmt2(left + plot_w) + "\" y2=\"" + fmt2(top + plot_h) + "\"/>\n";
  svg += "<text class=\"lbl\" x=\"2\" y=\"" + fmt2(py(vmax) + 4) + "\">" +
         html_escape(format_double(vmax)) + "</text>\n";
  svg += "<text class=\"lbl\" x=\"2\" y=\"" + fmt2(py(vmin) + 4) + "\">" +
         html_escape(format_double(vmin)) + "</text>\n";

  for (std::size_t i = 1; i < n; ++i) {
    bool flag_last =
        (i + 1 == n) && verdict.assessment.color == Color::Red;
    svg += std::string("<line class=\"seg") + (flag_last ? " bad" : "") + "\" x1=\"" +
           fmt2(px(i - 1)) + "\" y1=\"" + fmt2(py(series.points[i - 1].value)) +
           "\" x2=\"" + fmt2(px(i)) + "\" y2=\"" + fmt2(py(series.points[i].value)) +
           "\"/>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    svg += "<circle class=\"pt\" cx=\"" + fmt2(px(i)) + "\" cy=\"" +
           fmt2(py(series.points[i].value)) + "\" r=\"3\"><title>" +
           html_escape(series.points[i].run_id) + " &#8212; " +
           html_escape(format_double(series.points[i].value)) + "</title></circle>\n";
  }
  svg += "<text class=\"lbl\" x=\"" + fmt2(left) + "\" y=\"" + fmt2(height - 8) + "\">" +
         html_escape(series.points.front().timestamp) + "</text>\n";
  if (n > 1) {
    svg += "<text class=\"lbl\" x=\"" + fmt2(left + plot_w - 140) + "\" y=\"" +
           fmt2(height - 8) + "\">" + html_escape(series.points.back().timestamp) +
           "</text>\n";
  }
  svg += "</svg>";
  return svg;
}

std::vector<fs::path> render_report(std::vector<ReportArtifact> raw,
                                    const ReportOptions& options, Diagnostics& diags) {
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec || !fs::is_directory(options.out_dir))
    throw Error("OutputDirUnwritable",
                "cannot create output directory '" + options.out_dir.string() + "'");

  Artifacts artifacts = sort_artifacts(raw, diags);

  std::vector<ViewSpec> views = options.views;
  if (views.empty()) {
    ViewSpec all;
    all.id = "dashboard";
    all.audience = "Everyone";
    views.push_back(std::move(all));
  }

  std::vector<fs::path> written;

  for (const auto& view : views) {
    std::string html = page_head("conquard — " + view.id);
    html += "<h1>" + html_escape(view.id) + "</h1>\n";
    html += "<p class=\"meta\">audience: " +
            html_escape(view.audience.empty() ? "unspecified" : view.audience) +
            " &#8226; scope: <code>" + html_escape(view.scope) + "</code> &#8226; run " +
            html_escape(options.run_id) + " &#8226; " + html_escape(options.timestamp) +
            "</p>\n";

    for (const auto& [source, tree] : artifacts.trees) metric_table(html, view, source, *tree);

    for (const auto& [source, layout] : artifacts.layouts) {
      if (!wants_metric(view, layout->weight_metric)) continue;
      bool fits = true;
      for (const auto& cell : layout->cells)
        if (!cell.path.empty() && !in_scope(view, cell.path)) {
          fits = false;
          break;
        }
      if (!fits) continue;
      html += "<h2>Tree map &#8212; " + html_escape(layout->weight_metric) + " (" +
              html_escape(source) + ")</h2>\n";
      html += render_treemap_svg(*layout) + "\n";
    }

    for (const auto& [source, report] : artifacts.clones) {
      if (!wants_metric(view, "clone.ratio")) continue;
      bool fits = true;
      for (const auto& [path, lines] : report->cloned_lines)
        if (!in_scope(view, path)) {
          fits = false;
          break;
        }
      if (fits) clone_section(html, source, *report);
    }

    for (const auto& [source, result] : artifacts.arch) {
      if (!wants_metric(view, "arch.violations")) continue;
      bool fits = true;
      for (const auto& v : result->violations)
        if (!in_scope(view, v.dependency.from)) {
          fits = false;
          break;
        }
      if (fits) arch_section(html, source, *result);
    }

    for (const auto& [source, trend] : artifacts.trends) {
      if (!wants_metric(view, trend->rule.metric)) continue;
      if (!in_scope(view, trend->series.entity)) continue;
      trend_section(html, source, *trend);
    }

    if (!artifacts.numbers.empty()) {
      html += "<h2>Values</h2>\n<table>\n<tr><th>Processor</th><th>Value</th></tr>\n";
      for (const auto& [source, value] : artifacts.numbers)
        html += "<tr><td>" + html_escape(source) + "</td><td class=\"num\">" +
                format_metric(value) + "</td></tr>\n";
      html += "</table>\n";
    }

    html += "<p class=\"meta\"><a href=\"index.html\">back to index</a></p>\n";
    html += "</body></html>\n";

    fs::path file = options.out_dir / ("view-" + view.id + ".html");
    write_file(file, html);
    written.push_back(file);
  }

  // Machine-readable clone listing.
  bool wrote_clones = false;
  if (!artifacts.clones.empty()) {
    std::string listing;
    int class_id = 0;
    for (const auto& [source, report] : artifacts.clones) {
      for (const auto& cls : report->classes) {
        ++class_id;
        for (const auto& occ : cls.occurrences)
          listing += occ.path + "\t" + std::to_string(occ.start_line) + "\t" +
                     std::to_string(occ.end_line) + "\tC" + std::to_string(class_id) + "\n";
      }
    }
    fs::path file = options.out_dir / "clones.txt";
    write_file(file, listing);
    written.push_back(file);
    wrote_clones = true;
  }

  std::string index = page_head("conquard dashboard");
  index += "<h1>conquard dashboard</h1>\n";
  index += "<p class=\"meta\">run " + html_escape(options.run_id) + " &#8226; generated " +
           html_escape(options.timestamp) + "</p>\n<ul>\n";
  for (const auto& view : views) {
    index += "<li><a href=\"view-" + view.id + ".html\">" + html_escape(view.id) + "</a>";
    if (!view.audience.empty()) index += " <span class=\"meta\">" + html_escape(view.audience) + "</span>";
    index += "</li>\n";
  }
  index += "</ul>\n";
  if (wrote_clones)
    index += "<p class=\"meta\"><a href=\"clones.txt\">clone listing</a></p>\n";
  index += "</body></html>\n";

  fs::path index_file = options.out_dir / "index.html";
  write_file(index_file, index);
  written.push_back(index_file);
  return written;
}

}  // namespace conquard
