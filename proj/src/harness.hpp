#pragma once

#include <map>
#include <string>
#include <vector>

#include "experiments.hpp"

// Configuration parsing, experiment dispatch and result emission. A run is
// described by a flat key=value text (file content plus CLI overrides, later
// keys winning); outputs are a CSV of RunRecords, a JSON summary of
// FitResults, and optionally an SVG plot. Nothing is written until the run
// has fully succeeded, so a config error leaves no partial files.

namespace mipt {

struct ExperimentConfig {
  std::map<std::string, std::string> kv;

  // Parses "key=value" lines; blank lines and '#' comments are skipped.
  // Later duplicates override earlier ones. Throws std::invalid_argument on
  // malformed lines.
  static ExperimentConfig parse(const std::string& text);

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key, double fallback) const;
  // Grid helpers: either "key" (single value) or key_min/key_max/key_step.
  std::vector<double> grid(const std::string& key, double fallback) const;
  std::vector<size_t> size_list(const std::string& key, size_t fallback) const;
};

// Exit status contract: 0 success, 2 config error, 3 fit failure.
int run_config_text(const std::string& text, std::string& error);

// Emission helpers (exposed for tests).
std::string csv_text(const std::vector<RunRecord>& records);
void write_file(const std::string& path, const std::string& content);

const char* version_string();

}  // namespace mipt
