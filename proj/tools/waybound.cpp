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

// waybound <subcommand> --config <path> [--seed N] [--out <path>]
//          [--format json|csv] [--timing]
//
// Exit status: 0 when every check passes, 2 when a check fails, 1 on a usage
// or runtime error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "waybound/errors.hpp"
#include "waybound/harness.hpp"
#include "waybound/version.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

std::string footer(const waybound::ExperimentSchema& s) {
  std::ostringstream f;
  f << "Config keys (defaults):\n  seed (required)\n  output\n";
  for (const auto& p : s.params) f << "  " << p.key << "=" << p.default_value << "  " << p.help << "\n";
  for (const auto& t : s.tolerances) {
    f << "  tolerance." << t.name << "=" << waybound::format_double(t.default_value) << "  "
      << t.help << "\n";
  }
  return f.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw waybound::UsageError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& experiment, const Options& opt) {
  waybound::apply_thread_cap();
  waybound::KeyValueConfig kv = waybound::KeyValueConfig::parse(read_file(opt.config));
  if (opt.seed) kv.set("seed", std::to_string(*opt.seed));
  const auto cfg = waybound::ExperimentConfig::from_entries(kv, experiment);
  const auto format = waybound::output_format_from_string(opt.format);
  const waybound::ResultRecord rec = waybound::run_experiment(cfg, opt.timing);
  const std::string text = waybound::emit_report(rec, format);
  const std::string path = opt.out.empty() ? cfg.output_path : opt.out;
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw waybound::UsageError("cannot write '" + path + "'");
  }
  std::cerr << experiment << ": " << rec.passed() << "/" << rec.reports.size() << " checks pass\n";
  return waybound::exit_code(rec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded checks of conservation-law limits on measurements and gates"};
  app.set_version_flag("--version", std::string(waybound::kVersion));
  app.require_subcommand(1);
  Options opt;
  std::string chosen;
  for (const auto& schema : waybound::experiment_schemas()) {
    CLI::App* sub = app.add_subcommand(schema.name, schema.summary);
    sub->add_option("--config", opt.config, "key=value config file")->required();
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--out", opt.out, "output path (default: config output, else stdout)");
    sub->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", opt.timing, "record wall time (breaks byte reproducibility)");
    sub->footer(footer(schema));
    sub->callback([&chosen, name = schema.name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    return run(chosen, opt);
  } catch (const waybound::UsageError& e) {
    std::cerr << "waybound: usage error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "waybound: error: " << e.what() << "\n";
  }
  return 1;
}
