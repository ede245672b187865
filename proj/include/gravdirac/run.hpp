#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gravdirac/config.hpp"

namespace gravdirac {

using ordered_json = nlohmann::ordered_json;

const char* version();

// Rows of scalar cells; CSV and JSON share the same columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

// Ordered key-value record.
struct Report {
  std::vector<std::pair<std::string, ordered_json>> fields;

  void add(const std::string& key, ordered_json value) { fields.emplace_back(key, std::move(value)); }
  std::string to_text() const;  // "key = value" lines
  std::string to_json() const;
};

struct TaskOutput {
  std::string task;
  std::string extension;  // csv | json | txt
  std::string content;    // what gets written (possibly incomplete on error)
  ordered_json summary = ordered_json::object();
  bool ok = true;
  std::string error_kind;
  std::string error_message;
  double seconds = 0.0;
};

// Runs one task and captures any error in the output record.
TaskOutput run_task(const std::string& task, const RunConfig& config);

struct TaskStatus {
  std::string task;
  bool ok = true;
  std::string error_kind, error_message;
  std::string output;  // path written; ends in .partial on error
  double seconds = 0.0;
  ordered_json summary;
};

struct RunManifest {
  std::string config_snapshot;
  std::string tool_version;
  std::vector<TaskStatus> tasks;
  std::string path;

  bool ok() const;
  ordered_json to_json() const;
};

// Tasks in dependency order, independent of the order given.
std::vector<std::string> ordered_tasks(const std::vector<std::string>& tasks);

// Executes every task, writes outputs into config.output_dir and the manifest last.
RunManifest run(const RunConfig& config);

// GRAVDIRAC_WORKERS caps the OpenMP thread count
void apply_worker_env();

}  // namespace gravdirac
