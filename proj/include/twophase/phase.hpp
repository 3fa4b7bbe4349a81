// Copyright 2026 The twophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace twophase {

enum class Phase { Phi1, Phi2 };

constexpr Phase opposite(Phase p) {
  return p == Phase::Phi1 ? Phase::Phi2 : Phase::Phi1;
}

inline const char* to_string(Phase p) {
  return p == Phase::Phi1 ? "phi1" : "phi2";
}

inline std::optional<Phase> phase_from_string(std::string_view s) {
  if (s == "phi1" || s == "1") return Phase::Phi1;
  if (s == "phi2" || s == "2") return Phase::Phi2;
  return std::nullopt;
}

// Names of the two top-level clock ports of a two-phase design.
struct ClockNames {
  std::string phi1 = "clk_1";
  std::string phi2 = "clk_2";

  const std::string& of(Phase p) const {
    return p == Phase::Phi1 ? phi1 : phi2;
  }
};

using PhaseMap = std::map<std::string, Phase>;

}  // namespace twophase
