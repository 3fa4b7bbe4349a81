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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/timing.hpp"
#include "twophase/transform.hpp"
#include "twophase/verify.hpp"

namespace twophase {

enum class RetimeMode { Off, MinDelay, MinArea, Both };

const char* to_string(RetimeMode m);
RetimeMode retime_mode_from_string(const std::string& s);

struct PipelineConfig {
  Variant variant = Variant::RecircMux;
  RetimeMode retime = RetimeMode::Off;
  std::optional<double> period;  // retiming target, or the STA clock period
  double duty = 0.49;
  double phase2_offset = 0.5;
  ClockNames clocks;
  std::size_t cycles = 1000;
  std::size_t seeds = 16;
  std::uint64_t seed = 1;
  std::map<std::string, double> skew;
  bool hold_uses_launch_dq = false;

  // Keys: variant, retime, period, duty, phase2_offset, clk1, clk2, cycles,
  // seeds, seed, skew, hold_uses_launch_dq. Unknown keys are rejected.
  static PipelineConfig from_json(const nlohmann::json& j);
  static PipelineConfig from_json(const nlohmann::json& j, PipelineConfig base);
  nlohmann::json to_json() const;
  ClockSpec clock_spec() const;
  EquivOptions equiv_options(std::size_t warmup = 0) const;
};

struct StageRecord {
  std::string stage;
  CellCounts counts;
  std::string note;
};

struct ConvertResult {
  Netlist netlist;
  TransformTrace trace;
  std::vector<StageRecord> log;
  std::map<std::string, int> lags;  // retimed vertices with a non-zero lag
  std::optional<double> period_before;
  std::optional<double> period_after;
  std::size_t registers_before = 0;
  std::size_t registers_after = 0;
  std::size_t warmup = 0;
  std::optional<EquivVerdict> retime_check;

  nlohmann::json stage_log_json() const;
  nlohmann::json lags_json() const;
};

// Full flip-flop to two-phase latch conversion.
ConvertResult run_convert(const Netlist& original, const CellLibrary& library,
                          const PipelineConfig& config);

}  // namespace twophase
