#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpg/json_io.hpp"

namespace qpg {

/// One reproducible experiment: the echoed part of every report.
struct ExperimentConfig {
  std::string command;                 // e.g. "group analyze"
  std::vector<std::string> inputs;     // file paths or family names
  std::optional<std::uint64_t> seed;   // mandatory for stochastic runs
  std::size_t samples = 0;
  int p_max = 0;
  int r_max = 0;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::string> options;  // remaining flags, by name
  std::string output;                  // empty: stdout

  /// Throws InputError when a numeric parameter is negative or a stochastic
  /// run lacks a seed.
  void validate(bool stochastic) const;
  Json to_json() const;
};

struct CheckRecord {
  std::string name;
  bool passed = false;
  double defect = 0.0;
  double tolerance = 0.0;
  /// Asserted checks decide the exit code; diagnostics are only recorded.
  bool asserted = true;
  std::optional<std::size_t> samples;
  std::optional<double> stderr_;
  Json detail;  // optional structured extras
};

/// Named table of numbers; written as CSV or embedded in the JSON report.
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

class Report {
 public:
  explicit Report(ExperimentConfig config) : config_(std::move(config)) {}

  const ExperimentConfig& config() const { return config_; }

  /// defect <= tolerance decides `passed`.
  CheckRecord& check(std::string name, double defect, double tolerance, bool asserted = true);
  /// A boolean verdict, recorded with defect 0/1 and tolerance 0.
  CheckRecord& verdict(std::string name, bool passed, bool asserted = true);
  const std::vector<CheckRecord>& checks() const { return checks_; }

  /// Free-form result data (group order, moment tables, ...).
  Json& data() { return data_; }
  void add_series(const std::string& name, Series series);
  const std::map<std::string, Series>& series() const { return series_; }
  /// Wall-clock seconds; emitted only when timings are enabled.
  void add_timing(const std::string& stage, double seconds);
  void enable_timings(bool on) { timings_enabled_ = on; }

  bool all_asserted_passed() const;
  Json to_json() const;
  /// One CSV per series, `<stem>.<series>.csv`, next to `stem`.
  void write_series_csv(const std::filesystem::path& stem) const;

 private:
  ExperimentConfig config_;
  std::vector<CheckRecord> checks_;
  Json data_ = Json::object();
  std::map<std::string, Series> series_;
  std::map<std::string, double> timings_;
  bool timings_enabled_ = false;
};

/// Writes the series as CSV with a header row; doubles in %.17g.
std::string to_csv(const Series& series);

}  // namespace qpg
