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

// Flat key=value text. '#' starts a comment line; blank lines are ignored;
// whitespace around keys and values is trimmed. Emission is in key order so
// files diff cleanly.

#ifndef WAYBOUND_CONFIG_HPP_
#define WAYBOUND_CONFIG_HPP_

#include <map>
#include <string>
#include <vector>

namespace waybound {

class KeyValueConfig {
 public:
  /// UsageError on a line without '=' or a repeated key.
  static KeyValueConfig parse(const std::string& text);

  std::string emit() const;

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  /// UsageError naming the key when absent.
  const std::string& get(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// Shortest text that parses back to the same double.
std::string format_double(double x);
/// UsageError naming `field` on malformed input.
double parse_double(const std::string& text, const std::string& field);
long long parse_int(const std::string& text, const std::string& field);
std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace waybound

#endif  // WAYBOUND_CONFIG_HPP_
