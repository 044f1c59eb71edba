// Copyright 2026 The Waybound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded experiments behind the command line tool, and the records they
// produce.
//
// A config is flat key=value text:
//
//   experiment=ozawa-random    optional, must match the subcommand
//   seed=7                     mandatory
//   output=out.json            optional
//   trials=1000                experiment parameter
//   tolerance.slack=1e-9       experiment tolerance
//
// Every parameter and tolerance has a default; the record echoes the full
// resolved set, so a record can be rerun from its own config.

#ifndef WAYBOUND_HARNESS_HPP_
#define WAYBOUND_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "waybound/config.hpp"
#include "waybound/report.hpp"

namespace waybound {

enum class ParamKind { kReal, kInt, kLabel, kRealList, kIntList, kLabelList };

struct ParamSpec {
  std::string key;
  ParamKind kind;
  std::string default_value;
  std::string help;
};

struct ToleranceSpec {
  std::string name;
  double default_value;
  std::string help;
};

struct ExperimentSchema {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<ToleranceSpec> tolerances;
};

const std::vector<ExperimentSchema>& experiment_schemas();
/// UsageError for an unknown experiment.
const ExperimentSchema& experiment_schema(const std::string& name);

struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;  // canonical text, defaults filled in
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::string output_path;

  /// Resolves the entries against the schema. `experiment` may come from the
  /// command line; when the file also names one they must agree. Unknown
  /// keys, a missing seed and malformed values raise UsageError naming the
  /// field.
  static ExperimentConfig from_entries(const KeyValueConfig& kv,
                                       const std::string& experiment = "");
  static ExperimentConfig parse(const std::string& text, const std::string& experiment = "");

  /// Canonical key=value text, parseable by parse().
  std::string emit() const;

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  const std::string& label(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;
  std::vector<std::string> labels(const std::string& key) const;
  double tolerance(const std::string& name) const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ResultRecord {
  ExperimentConfig config;
  std::vector<BoundReport> reports;
  std::string version;
  /// Only filled when timing was requested, so records stay reproducible.
  std::optional<double> wall_time_seconds;

  std::size_t passed() const;
  bool all_pass() const { return passed() == reports.size(); }
};

nlohmann::json to_json(const ResultRecord& rec);
ResultRecord record_from_json(const nlohmann::json& j);

enum class OutputFormat { kJson, kCsv };
OutputFormat output_format_from_string(const std::string& s);

/// JSON: the full record, two-space indent, trailing newline. CSV: columns
/// experiment, point, lhs, rhs, slack, pass with one row per report.
std::string emit_report(const ResultRecord& rec, OutputFormat format);

/// Dispatches to the named experiment. Deterministic given the config:
/// trial k draws from Rng(seed).split(k) and reports are ordered by trial.
ResultRecord run_experiment(const ExperimentConfig& cfg, bool timing = false);

/// 0 when every report passes, 2 otherwise.
int exit_code(const ResultRecord& rec);

/// Caps OpenMP parallelism from WAYBOUND_THREADS when set; UsageError when
/// it is not a positive integer.
void apply_thread_cap();

}  // namespace waybound

#endif  // WAYBOUND_HARNESS_HPP_
