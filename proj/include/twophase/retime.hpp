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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/phase.hpp"

namespace twophase {

// Leiserson-Saxe style retiming graph. Vertex 0 is the host, which stands
// for primary inputs and outputs, constants and every register that cannot
// be retimed. Retimable registers are _DFF_P_ cells clocked directly by the
// design's clock port.
struct RetimeGraph {
  static constexpr std::size_t kHost = 0;

  struct Vertex {
    std::string name;  // instance name; "(host)" for the host
    double delay = 0.0;
    std::optional<std::size_t> inst;  // index into the netlist's instances
  };
  struct Register {
    std::string name;
    std::string q_net;
    int init = 0;
  };
  struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
    std::string source_net;  // net driven by the tail
    std::string sink_inst;   // empty when the sink is an output port
    std::string sink_pin;
    std::string sink_port;
    std::vector<Register> registers;  // tail to head order

    int weight() const { return static_cast<int>(registers.size()); }
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::string clock;  // clock net of the retimable registers

  std::size_t register_count() const;  // distinct registers on edges
};

RetimeGraph build_retime_graph(const Netlist& netlist, const CellLibrary& library);

// w_r(e) = w(e) + r(head) - r(tail).
std::vector<int> retimed_weights(const RetimeGraph& g, const std::vector<int>& lags);
bool is_legal(const RetimeGraph& g, const std::vector<int>& lags);

// Longest register-free path, with the host split into a source (arrival 0)
// and a sink. Empty lags mean no retiming.
double clock_period(const RetimeGraph& g, const std::vector<int>& lags = {});

// Registers needed when registers on edges leaving the same net are shared.
int shared_register_count(const RetimeGraph& g, const std::vector<int>& lags);

struct MinDelayResult {
  std::vector<int> lags;
  double period = 0.0;
};

// Without a target, finds the minimum achievable period. Throws
// Error(Retime) naming the best achievable period if the target is missed.
MinDelayResult min_delay_retime(const RetimeGraph& g, std::optional<double> target = {});

struct MinAreaOptions {
  bool allow_backward = true;
  std::optional<double> max_period;
  std::vector<int> start;  // starting lags; empty means all zero
};

// Greedy register merging; never increases the register count.
std::vector<int> min_area_retime(const RetimeGraph& g, const MinAreaOptions& options = {});

// Rebuilds the registers of `netlist` for `lags`. Initial values of moved
// registers are recomputed; a backward move whose initial value cannot be
// justified throws Error(Retime) naming the vertex.
Netlist apply_retiming(const Netlist& netlist, const CellLibrary& library, const RetimeGraph& g,
                       const std::vector<int>& lags);

// Two-colors the sequential cells so that every combinational path between
// them alternates phase. Primary inputs act as phi2 sources and primary
// outputs as phi1 sinks. `hints` breaks ties for unconstrained groups.
// Throws Error(Retime) "odd register parity" with a witness cycle.
PhaseMap assign_phases(const Netlist& netlist, const CellLibrary& library,
                       const PhaseMap& hints = {});

}  // namespace twophase
