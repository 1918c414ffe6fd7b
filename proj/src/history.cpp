#include "conquard/history.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>

#include "conquard/errors.hpp"

namespace conquard {

std::string format_double(double value) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, r.ptr);
}

std::string utc_timestamp_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TrendVerdict assess_trend(const TrendSeries& series, const TrendRule& rule) {
  TrendVerdict verdict;
  if (series.points.size() < 2) {
    verdict.assessment.color = Color::Green;
    verdict.assessment.message = "insufficient history";
    return verdict;
  }
  double last = series.points.back().value;
  double previous = series.points[series.points.size() - 2].value;
  verdict.delta = last - previous;

  bool ok = rule.kind == TrendKind::MustNotIncrease
                ? verdict.delta <= rule.tolerance
                : -verdict.delta <= rule.tolerance;
  verdict.assessment.color = ok ? Color::Green : Color::Red;
  verdict.assessment.message =
      std::string(rule.kind == TrendKind::MustNotIncrease ? "must not increase"
                                                          : "must not decrease") +
      "; delta " + format_double(verdict.delta);
  verdict.assessment.counts[static_cast<int>(verdict.assessment.color)] = 1;
  return verdict;
}

namespace {

bool parse_record(const std::string& line, SnapshotRecord& out) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (fields.size() < 5) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  if (fields.size() != 5) return false;
  if (fields[0].empty() || fields[1].empty() || fields[3].empty()) return false;
  const std::string& v = fields[4];
  if (v.empty()) return false;
  char* end = nullptr;
  double value = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size()) return false;
  out = {fields[0], fields[1], fields[2], fields[3], value};
  return true;
}

}  // namespace

std::vector<SnapshotRecord> HistoryStore::load(Diagnostics& diags) const {
  std::vector<SnapshotRecord> records;
  std::ifstream in(file_, std::ios::binary);
  if (!in) return records;  // no store yet: empty history

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SnapshotRecord rec;
    if (!parse_record(line, rec)) {
      diags.warn("corrupt history store '" + file_.string() + "' at line " +
                 std::to_string(line_no) + "; keeping the " +
                 std::to_string(records.size()) + " records before it");
      break;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void HistoryStore::append_snapshot(const std::string& run_id,
                                   const std::string& timestamp,
                                   const std::vector<SnapshotRecord>& records,
                                   Diagnostics& diags) {
  auto existing = load(diags);
  std::string last_timestamp;
  for (const auto& rec : existing) {
    if (rec.run_id == run_id)
      throw Error("DuplicateRun", "run '" + run_id + "' is already stored in '" +
                                      file_.string() + "'");
    if (rec.timestamp > last_timestamp) last_timestamp = rec.timestamp;
  }
  if (!last_timestamp.empty() && timestamp < last_timestamp)
    diags.warn("snapshot timestamp " + timestamp + " is older than stored " +
               last_timestamp + "; accepted, series order is by timestamp");

  std::set<std::pair<std::string, std::string>> seen;
  std::ofstream out(file_, std::ios::binary | std::ios::app);
  if (!out)
    throw Error("CorruptStore", "cannot open '" + file_.string() + "' for append");
  for (const auto& rec : records) {
    if (!seen.insert({rec.entity, rec.metric}).second) {
      diags.warn("duplicate record for entity '" + rec.entity + "', metric '" +
                 rec.metric + "' in one snapshot; first value kept");
      continue;
    }
    out << run_id << '\t' << timestamp << '\t' << rec.entity << '\t' << rec.metric
        << '\t' << format_double(rec.value) << '\n';
  }
  out.flush();
  if (!out)
    throw Error("CorruptStore", "write to '" + file_.string() + "' failed");
}

TrendSeries HistoryStore::load_series(const std::string& metric,
                                      const std::string& entity,
                                      Diagnostics& diags) const {
  TrendSeries series;
  series.metric = metric;
  series.entity = entity;
  for (const auto& rec : load(diags))
    if (rec.metric == metric && rec.entity == entity)
      series.points.push_back({rec.timestamp, rec.run_id, rec.value});
  std::stable_sort(series.points.begin(), series.points.end(),
                   [](const TrendPoint& a, const TrendPoint& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     return a.run_id < b.run_id;
                   });
  return series;
}

StoreLock::StoreLock(const std::filesystem::path& store_file)
    : lock_file_(store_file.string() + ".lock") {
  fd_ = ::open(lock_file_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd_ < 0)
    throw Error("StoreLocked",
                "history store '" + store_file.string() +
                    "' is locked by another run (remove '" + lock_file_.string() +
                    "' if that run crashed)");
}

StoreLock::~StoreLock() {
  if (fd_ >= 0) {
    ::close(fd_);
    std::error_code ec;
    std::filesystem::remove(lock_file_, ec);
  }
}

}  // namespace conquard
