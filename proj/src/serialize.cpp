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

#include "waybound/serialize.hpp"

namespace waybound {
namespace {

nlohmann::json pack(std::size_t rows, std::size_t cols,
                    const std::vector<cplx>& entries) {
  std::vector<double> re, im;
  re.reserve(entries.size());
  im.reserve(entries.size());
  for (const cplx& z : entries) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return nlohmann::json{{"rows", rows}, {"cols", cols}, {"re", re}, {"im", im}};
}

std::vector<cplx> unpack(const nlohmann::json& j, std::size_t& rows,
                         std::size_t& cols) {
  try {
    rows = j.at("rows").get<std::size_t>();
    cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols) {
      throw DimensionError("matrix json: entry count does not match shape");
    }
    std::vector<cplx> out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) out[i] = cplx(re[i], im[i]);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("matrix json: ") + e.what());
  }
}

}  // namespace

nlohmann::json to_json(const ComplexMatrix& m) {
  return pack(m.rows(), m.cols(), m.entries());
}

nlohmann::json to_json(const StateVector& v) {
  return pack(v.dim(), 1, v.amplitudes());
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  std::size_t r = 0, c = 0;
  auto e = unpack(j, r, c);
  return ComplexMatrix(r, c, std::move(e));
}

StateVector state_from_json(const nlohmann::json& j) {
  std::size_t r = 0, c = 0;
  auto e = unpack(j, r, c);
  if (c != 1) throw DimensionError("ket json: expected a single column");
  return StateVector(std::move(e));
}

}  // namespace waybound
