// Copyright 2026 The Authors.
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

#ifndef CBRSCA_JSON_IO_HPP_
#define CBRSCA_JSON_IO_HPP_

#include <string>

#include "json.hpp"

#include "cbrsca/graph.hpp"
#include "cbrsca/scenario.hpp"
#include "cbrsca/solve.hpp"

namespace cbrsca {

// Tier-tagged scenario wrapper: exactly one of pa/gaa is meaningful.
struct ScenarioDoc {
  enum class Tier { kPa, kGaa };
  Tier tier = Tier::kPa;
  PAScenario pa;
  GaaScenario gaa;
};

nlohmann::json RadioParamsToJson(const RadioParams& p);
RadioParams RadioParamsFromJson(const nlohmann::json& j);

nlohmann::json ScenarioToJson(const ScenarioDoc& s);
ScenarioDoc ScenarioFromJson(const nlohmann::json& j);

nlohmann::json GraphToJson(const ConflictGraph& g);
ConflictGraph GraphFromJson(const nlohmann::json& j);

nlohmann::json SolutionToJson(const Solution& s);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);

}  // namespace cbrsca

#endif  // CBRSCA_JSON_IO_HPP_
