#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "conquard/assess.hpp"
#include "conquard/diagnostics.hpp"

namespace conquard {

/// One observation: (run, timestamp, entity, metric) -> value. The entity
/// path "" denotes the project root.
struct SnapshotRecord {
  std::string run_id;
  std::string timestamp;  // ISO-8601 UTC, seconds precision
  std::string entity;
  std::string metric;
  double value = 0;

  bool operator==(const SnapshotRecord&) const = default;
};

struct TrendPoint {
  std::string timestamp;
  std::string run_id;
  double value = 0;
};

struct TrendSeries {
  std::string metric;
  std::string entity;
  std::vector<TrendPoint> points;  // sorted by timestamp, ties by run-id
};

enum class TrendKind { MustNotIncrease, MustNotDecrease };

struct TrendRule {
  std::string metric;
  TrendKind kind = TrendKind::MustNotIncrease;
  double tolerance = 0;  // absolute
};

struct TrendVerdict {
  Assessment assessment;
  double delta = 0;  // last minus previous value, 0 with fewer than 2 points
};

/// Compares the last two points against the rule. Fewer than two points is
/// GREEN with an "insufficient history" message.
TrendVerdict assess_trend(const TrendSeries& series, const TrendRule& rule);

/// A trend check evaluated during one run: the stored series extended by the
/// current value, the rule, and its verdict.
struct TrendResult {
  TrendSeries series;
  TrendRule rule;
  TrendVerdict verdict;
  bool blocking = false;
};

/// Append-only, line-oriented snapshot store. One record per line:
/// run-id, ISO-8601 timestamp, entity, metric-id, value - tab-separated.
class HistoryStore {
public:
  explicit HistoryStore(std::filesystem::path file) : file_(std::move(file)) {}

  const std::filesystem::path& file() const { return file_; }

  /// Loads all records. A malformed line stops parsing: the intact prefix
  /// is returned and a warning names the first bad line.
  std::vector<SnapshotRecord> load(Diagnostics& diags) const;

  /// Durably appends one run. Records get the given run id and timestamp.
  /// Throws DuplicateRun if the run id is already stored; a timestamp older
  /// than the last stored one is accepted with a warning (readers sort).
  void append_snapshot(const std::string& run_id, const std::string& timestamp,
                       const std::vector<SnapshotRecord>& records, Diagnostics& diags);

  TrendSeries load_series(const std::string& metric, const std::string& entity,
                          Diagnostics& diags) const;

private:
  std::filesystem::path file_;
};

/// Exclusive advisory lock guarding one store file (`<file>.lock`).
/// Acquisition fails with StoreLocked when another run holds the lock.
class StoreLock {
public:
  explicit StoreLock(const std::filesystem::path& store_file);
  ~StoreLock();
  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

private:
  std::filesystem::path lock_file_;
  int fd_ = -1;
};

/// Shortest round-trip decimal form of a double (used by the store and the
/// reports so identical inputs serialize identically).
std::string format_double(double value);

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_timestamp_now();

}  // namespace conquard
