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
#include <utility>
#include <vector>

#include "json.hpp"
#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/phase.hpp"
#include "twophase/sim.hpp"

namespace twophase {

// Phase of a sequential instance, found by a backward search from its clock
// pin to the clock ports. Throws Error(Verify) "unresolvable clock domain"
// if neither or both phase clocks are reached. Inverting cells on the clock
// path are reported through `warnings`.
Phase clock_domain_of(const Netlist& netlist, const CellLibrary& library,
                      const std::string& instance, const ClockNames& clocks = {},
                      std::vector<Diagnostic>* warnings = nullptr);

struct LatchEdge {
  std::string from;
  std::string to;
  std::string pin;                // pin of `to` where the path ends
  std::vector<std::string> path;  // nets from from's output to that pin

  bool operator==(const LatchEdge&) const = default;
};

struct LatchGraph {
  std::vector<std::string> nodes;           // sorted instance names
  std::map<std::string, Phase> color;       // absent when unresolvable
  std::vector<LatchEdge> edges;             // sorted by (from, to)
  std::vector<Diagnostic> warnings;
};

enum class ViolationKind { SameColorEdge, UncolorableClock, MixedCone };

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::SameColorEdge;
  std::string from;
  std::string to;  // empty for per-instance violations
  std::vector<std::string> path;
  std::string message;
};

// First-reachable sequential successors of every sequential instance,
// found by a per-source traversal that never revisits a net. Same-color
// edges and unresolvable clocks are recorded, not thrown.
std::pair<LatchGraph, std::vector<Violation>> build_latch_graph(const Netlist& netlist,
                                                                const CellLibrary& library,
                                                                const ClockNames& clocks = {});

std::vector<Violation> check_two_color(const LatchGraph& graph);

// True if `path` is a connected walk from `from`'s output to `to`.`pin`
// through combinational cells only.
bool witness_is_valid(const Netlist& netlist, const CellLibrary& library, const LatchEdge& edge);

struct EquivOptions {
  std::size_t cycles = 1000;
  std::size_t seeds = 16;
  std::uint64_t base_seed = 1;
  std::size_t warmup = 0;  // cycles excluded from comparison
  PhaseSchedule schedule;
};

struct Divergence {
  std::uint64_t seed = 0;
  std::size_t cycle = 0;
  std::string port;
  int expected = 0;
  int got = 0;
};

struct EquivVerdict {
  bool equivalent = true;
  std::size_t cycles = 0;
  std::size_t seeds = 0;
  std::size_t warmup = 0;
  std::optional<Divergence> divergence;
};

// Flip-flop original against two-phase latch design, output sample after
// the clock edge compared with the sample after phi2 closes.
EquivVerdict check_equivalence(const Netlist& original, const Netlist& transformed,
                               const CellLibrary& library, const EquivOptions& options = {});
// Two flip-flop designs, both simulated with a single clock.
EquivVerdict check_ff_equivalence(const Netlist& a, const Netlist& b, const CellLibrary& library,
                                  const EquivOptions& options = {});

nlohmann::json violations_to_json(const std::vector<Violation>& violations);
nlohmann::json verdict_to_json(const EquivVerdict& verdict);

}  // namespace twophase
