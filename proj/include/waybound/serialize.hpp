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

// JSON interchange for matrices and kets: {rows, cols, re[], im[]} with
// entries in row-major order. A ket is written as a single column.

#ifndef WAYBOUND_SERIALIZE_HPP_
#define WAYBOUND_SERIALIZE_HPP_

#include <json.hpp>

#include "waybound/linalg.hpp"

namespace waybound {

nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const StateVector& v);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
StateVector state_from_json(const nlohmann::json& j);

}  // namespace waybound

#endif  // WAYBOUND_SERIALIZE_HPP_
