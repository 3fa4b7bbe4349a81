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
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <map>
#include <string>
#include <vector>

#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/phase.hpp"
#include "twophase/retime.hpp"
#include "twophase/sim.hpp"
#include "twophase/transform.hpp"

namespace twophase::testing {

std::string fixture_path(const std::string& file);
std::string read_text(const std::string& path);

// Cell library with fixed 10/7/2/12 ns cells and ideal sequential cells.
const CellLibrary& ideal_library();

struct Fixture {
  std::string name;
  const CellLibrary* library;
  bool async_controls;  // rejected by the clock-gated variant
};

// The flip-flop designs used in the end-to-end suites.
const std::vector<Fixture>& ff_fixtures();

Netlist load_fixture(const std::string& name, const CellLibrary& library);
Netlist load_fixture(const Fixture& f);

Netlist parse(const std::string& verilog, const CellLibrary& library = default_library());

// Straightforward scalar simulators used as oracles for the bit-parallel one.
// Outputs are sampled after the clock edge (flip-flops) or after the last
// sub-step of the schedule (latches).
std::vector<std::vector<int>> reference_ff(const Netlist& n, const CellLibrary& lib,
                                           const Stimulus& st,
                                           const std::vector<std::string>& outputs);
std::vector<std::vector<int>> reference_two_phase(const Netlist& n, const CellLibrary& lib,
                                                  const Stimulus& st,
                                                  const std::vector<std::string>& outputs,
                                                  const ClockNames& clocks = {});

std::vector<std::vector<int>> trace_values(const Trace& t);

// Retiming oracles. Periods are +inf for illegal lags or zero-weight cycles.
constexpr double kNoPeriod = std::numeric_limits<double>::infinity();
double oracle_period(const RetimeGraph& g, const std::vector<int>& lags);
int oracle_shared(const RetimeGraph& g, const std::vector<int>& lags);
// Every lag vector with host lag 0 and the rest in [-bound, bound].
void for_each_lag(std::size_t n, int bound, const std::function<void(const std::vector<int>&)>& f);

// Sequential pairs (u, v) joined by a purely combinational path, by plain
// recursive reachability.
std::set<std::pair<std::string, std::string>> oracle_edges(const Netlist& n, const CellLibrary& lib);

// Moves latch `name` to the other phase clock, through its clock gate if any.
void flip_phase(Netlist& n, const CellLibrary& lib, const std::string& name);

// Delay cells DLY1..DLY5, MRG and a latch with non-zero timing.
const CellLibrary& delay_library();
// Latch L<i> has phase phi1 for even i and reads one or two sources through
// fresh delay chains. With `acyclic`, latch i only reads din or latches below i.
Netlist random_latch_netlist(std::mt19937& rng, bool acyclic);

// Transform without retiming, phases from the trace.
Netlist convert(const Netlist& n, const CellLibrary& lib, Variant v);

}  // namespace twophase::testing
