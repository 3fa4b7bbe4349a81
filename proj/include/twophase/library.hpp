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
#include <string>
#include <string_view>
#include <vector>

namespace twophase {

enum class PinDir { In, Out };
enum class PinRole { Data, Clock, Enable, Reset, Set, Select, Output };

const char* to_string(PinRole role);

struct PinDef {
  std::string name;
  PinDir dir = PinDir::In;
  PinRole role = PinRole::Data;
};

enum class BehaviorType { Comb, Dff, Latch };

// Flip-flop control inputs. Only positive polarity is modelled.
enum class SeqControl { Enable, SyncReset0, SyncSet1, AsyncReset0, AsyncSet1 };

const char* to_string(SeqControl c);

// All times in ns.
struct TimingData {
  double delay_max = 0.0;   // worst pin-to-pin (or clock/D-to-Q) delay
  double delay_min = 0.0;
  double d_to_q_min = 0.0;  // minimum D-to-Q through a transparent latch
  double setup = 0.0;
  double hold = 0.0;
};

struct CellKind {
  std::string name;
  std::vector<PinDef> pins;
  BehaviorType type = BehaviorType::Comb;

  // Combinational cells: boolean function over `inputs`, tabulated so that
  // truth[bits] is the output when bit k of `bits` is the value of inputs[k].
  std::string function;
  std::vector<std::string> inputs;
  std::vector<std::uint8_t> truth;

  // Flip-flops: at most one control from the supported set.
  std::vector<SeqControl> controls;

  TimingData timing;

  bool is_sequential() const { return type != BehaviorType::Comb; }
  bool is_latch() const { return type == BehaviorType::Latch; }
  bool is_dff() const { return type == BehaviorType::Dff; }
  // An edge-triggered flip-flop without controls (the "base" flop).
  bool is_base_dff() const { return is_dff() && controls.empty(); }

  const PinDef* pin(std::string_view pin_name) const;
  // First pin carrying `role`, or nullptr.
  const PinDef* pin_with_role(PinRole role) const;
  const std::string& output_pin() const;
  // The pin attached to `control` (enable/reset/set role).
  const PinDef* control_pin(SeqControl control) const;

  std::uint8_t eval(std::uint32_t input_bits) const {
    return truth[input_bits];
  }
};

class CellLibrary {
 public:
  const CellKind* find(std::string_view name) const;
  const CellKind& at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::map<std::string, CellKind, std::less<>>& cells() const {
    return cells_;
  }

  // Adds a kind after checking the per-kind invariants. Throws on violation.
  void add(CellKind kind);

 private:
  std::map<std::string, CellKind, std::less<>> cells_;
};

// Names of the cells the conversion passes instantiate.
namespace cells {
inline constexpr std::string_view kDff = "_DFF_P_";
inline constexpr std::string_view kDffe = "_DFFE_PP_";
inline constexpr std::string_view kDffAsyncReset = "_DFF_PP0_";
inline constexpr std::string_view kDffAsyncSet = "_DFF_PP1_";
inline constexpr std::string_view kDffSyncReset = "_SDFF_PP0_";
inline constexpr std::string_view kDffSyncSet = "_SDFF_PP1_";
inline constexpr std::string_view kLatch = "_DLATCH_P_";
inline constexpr std::string_view kMux2 = "MUX2";
inline constexpr std::string_view kAnd2 = "AND2";
inline constexpr std::string_view kBuf = "BUF";
}  // namespace cells

// Parses the JSON library format. Throws ParseError for malformed text and
// Error(Library) for invariant violations.
CellLibrary load_library(std::string_view json_text);

// Built-in library: the six supported flop variants, the positive-enable
// latch and a small set of gates.
const CellLibrary& default_library();
std::string_view default_library_json();

// Compiles a boolean expression over `inputs` into a truth table. Operators:
// ! ~ (not), & * (and), ^ (xor), | + (or), parentheses, constants 0/1.
std::vector<std::uint8_t> compile_function(std::string_view expr,
                                           const std::vector<std::string>& inputs);

}  // namespace twophase
