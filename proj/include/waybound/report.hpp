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

#ifndef WAYBOUND_REPORT_HPP_
#define WAYBOUND_REPORT_HPP_

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "waybound/linalg.hpp"

namespace waybound {

/// One checked inequality lhs >= rhs. slack = lhs - rhs and the check passes
/// when slack >= -tolerance. Upper-limit checks "x <= c" are stored as
/// lhs = c, rhs = x.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> inputs;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::string> labels;
  std::map<std::string, StateVector> witnesses;
  std::vector<std::string> warnings;

  static BoundReport make(std::string name, double lhs, double rhs,
                          double tolerance);
  /// Recomputes slack and pass from lhs, rhs and tolerance.
  void finalize();
};

nlohmann::json to_json(const BoundReport& r);
BoundReport report_from_json(const nlohmann::json& j);

}  // namespace waybound

#endif  // WAYBOUND_REPORT_HPP_
