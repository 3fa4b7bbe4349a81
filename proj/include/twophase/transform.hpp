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
#include <string>
#include <vector>

#include "json.hpp"
#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/phase.hpp"

namespace twophase {

enum class Variant { ClockGated, RecircMux };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct TransformPlan {
  Variant variant = Variant::RecircMux;
  ClockNames clocks;
  std::string original_clock;  // filled in by init_clock_ports
};

enum class TraceRole { Main, Recirc, Control, Mux, Gate };

const char* to_string(TraceRole r);

struct TraceEntry {
  std::string name;
  TraceRole role = TraceRole::Main;
  Phase phase = Phase::Phi1;

  bool operator==(const TraceEntry&) const = default;
};

// Original instance -> generated instances. Registers introduced by
// retiming are listed under kRetimedKey.
struct TransformTrace {
  static constexpr const char* kRetimedKey = "(retimed)";

  std::map<std::string, std::vector<TraceEntry>> origins;

  const TraceEntry* find(const std::string& generated) const;
  TraceEntry* find(const std::string& generated);
  // Phase of every generated instance.
  PhaseMap phases() const;
  void set_phases(const PhaseMap& phases);
  // Drops entries whose instance no longer exists and files sequential
  // instances that have no entry under kRetimedKey.
  void reconcile(const Netlist& netlist, const CellLibrary& library, const PhaseMap& phases);

  nlohmann::json to_json() const;
  static TransformTrace from_json(const nlohmann::json& j);
};

// Renames the single clock input to plan.clocks.phi1 and adds the phi2 input.
// Rejects designs with zero or several clock ports, internally generated
// clocks, latches or a clock net that feeds data pins.
Netlist init_clock_ports(const Netlist& netlist, const CellLibrary& library, TransformPlan& plan);

// Replaces every flip-flop F by a series pair F__phi1 -> F__phi2 of the same
// kind. Control signals reach the second stage through one shared
// `<net>__ctl_phi1` register per control net.
TransformTrace duplicate_ffs_recirc(Netlist& netlist, const CellLibrary& library,
                                    const TransformPlan& plan);

// Lowers the full-variant pairs left by duplicate_ffs_recirc to _DFF_P_ plus
// recirculation registers and multiplexers. The main registers' phases are
// taken from `trace`.
void transform_recirc(Netlist& netlist, const CellLibrary& library, TransformTrace& trace);

// Replaces every flip-flop by a _DFF_P_ pair, gating the clocks for enables
// and muxing to constants for synchronous resets and sets.
TransformTrace transform_clock_gated(Netlist& netlist, const CellLibrary& library,
                                     const TransformPlan& plan);

// Drives the clock pin of each selected sequential instance (or the clock
// input of a selected clock-gate AND) from `clock_port`.
void connect_clk(Netlist& netlist, const CellLibrary& library,
                 const std::vector<std::string>& selection, const std::string& clock_port);

// Replaces every _DFF_P_ by _DLATCH_P_ on the clock of its phase.
void map_dff_to_latch(Netlist& netlist, const CellLibrary& library, const PhaseMap& phases,
                      const ClockNames& clocks);

// True for a two-input AND whose output drives only sequential clock pins
// and which has one input on a clock port.
bool is_clock_gate(const Connectivity& conn, std::size_t inst);

}  // namespace twophase
