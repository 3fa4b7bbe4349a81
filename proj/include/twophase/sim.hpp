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
#include <memory>
#include <string>
#include <vector>

#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/phase.hpp"

namespace twophase {

// Values of the data input ports, one vector per cycle.
struct Stimulus {
  std::vector<std::string> inputs;
  std::vector<std::vector<std::uint8_t>> vectors;
  std::uint64_t seed = 0;

  std::size_t cycles() const { return vectors.size(); }
};

std::vector<std::string> data_inputs(const Netlist& netlist);
std::vector<std::string> data_outputs(const Netlist& netlist);

Stimulus random_stimulus(const Netlist& netlist, std::size_t cycles, std::uint64_t seed);

struct Trace {
  std::vector<std::string> nets;
  std::vector<std::vector<std::uint8_t>> values;  // [cycle][net]
  std::string sampling;

  std::string to_csv() const;
  std::string to_vcd(const std::string& module_name) const;
};

// One sub-step of a two-phase cycle: which clock ports are high.
struct SubStep {
  bool phi1 = false;
  bool phi2 = false;
};

struct PhaseSchedule {
  ClockNames clocks;
  std::vector<SubStep> steps{{true, false}, {false, false}, {false, true}, {false, false}};

  // Throws Error(Simulation) if any sub-step has both phases high.
  void check() const;
};

// Evaluates the combinational cells for the given source values (primary
// inputs, constants and sequential outputs). Throws Error(Simulation) when a
// source net is unassigned.
std::map<std::string, int> eval_comb(const Netlist& netlist, const CellLibrary& library,
                                     const std::map<std::string, int>& sources);

// Cycle-based simulation of up to 64 independent stimulus lanes at once.
// Every state element starts at its init value.
class Simulator {
 public:
  static constexpr std::size_t kMaxLanes = 64;

  Simulator(const Netlist& netlist, const CellLibrary& library);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  void reset();
  // Inputs are bit masks over lanes, ordered like data_inputs().
  void set_inputs(const std::vector<std::uint64_t>& inputs);
  // Applies the inputs and one rising clock edge to every flip-flop.
  void step_ff();
  // Runs one cycle of `schedule` over the latches.
  void step_two_phase(const PhaseSchedule& schedule);
  std::uint64_t value(const std::string& net) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Trace simulate_ff(const Netlist& netlist, const CellLibrary& library, const Stimulus& stimulus,
                  const std::vector<std::string>& probes = {});
Trace simulate_two_phase(const Netlist& netlist, const CellLibrary& library,
                         const Stimulus& stimulus, const PhaseSchedule& schedule = {},
                         const std::vector<std::string>& probes = {});

// Batch forms: one trace per stimulus; stimuli must share input lists and
// cycle counts.
std::vector<Trace> simulate_ff_batch(const Netlist& netlist, const CellLibrary& library,
                                     const std::vector<Stimulus>& stimuli,
                                     const std::vector<std::string>& probes = {});
std::vector<Trace> simulate_two_phase_batch(const Netlist& netlist, const CellLibrary& library,
                                            const std::vector<Stimulus>& stimuli,
                                            const PhaseSchedule& schedule = {},
                                            const std::vector<std::string>& probes = {});

}  // namespace twophase
