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

#include "waybound/report.hpp"

#include <cmath>

#include "waybound/serialize.hpp"

namespace waybound {

BoundReport BoundReport::make(std::string name, double lhs, double rhs,
                              double tolerance) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.finalize();
  return r;
}

void BoundReport::finalize() {
  slack = lhs - rhs;
  pass = std::isfinite(slack) && slack >= -tolerance;
  if (!std::isfinite(slack)) warnings.push_back("non-finite lhs or rhs");
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [k, v] : r.witnesses) w[k] = to_json(v);
  return nlohmann::json{{"name", r.name},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"slack", r.slack},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},
                        {"inputs", r.inputs},
                        {"diagnostics", r.diagnostics},
                        {"labels", r.labels},
                        {"witnesses", w},
                        {"warnings", r.warnings}};
}

BoundReport report_from_json(const nlohmann::json& j) {
  BoundReport r;
  r.name = j.at("name").get<std::string>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.slack = j.at("slack").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.inputs = j.at("inputs").get<std::map<std::string, double>>();
  r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
  r.labels = j.at("labels").get<std::map<std::string, std::string>>();
  for (const auto& [k, v] : j.at("witnesses").items()) r.witnesses[k] = state_from_json(v);
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace waybound
