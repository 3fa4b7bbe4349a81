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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "twophase/library.hpp"

namespace twophase {

enum class PortDir { Input, Output };
enum class PortKind { Data, Clock };

struct Port {
  std::string name;
  PortDir dir = PortDir::Input;
  PortKind kind = PortKind::Data;

  bool operator==(const Port&) const = default;
};

struct Instance {
  std::string name;
  std::string kind;
  std::map<std::string, std::string> pins;  // pin -> net
  int init = 0;                             // power-up value of sequential cells

  bool operator==(const Instance&) const = default;
};

// Flattened gate-level design. A port's net carries the port's name.
// Instances are kept sorted by name (see sort_instances()).
struct Netlist {
  std::string name;
  std::vector<Port> ports;
  std::set<std::string> nets;
  std::string const_zero = "$zero";
  std::string const_one = "$one";
  std::vector<Instance> instances;

  const Port* port(std::string_view port_name) const;
  const Instance* instance(std::string_view inst_name) const;
  Instance* instance(std::string_view inst_name);
  bool is_constant(std::string_view net) const {
    return net == const_zero || net == const_one;
  }

  void sort_instances();
  // Renames a net everywhere (pins, ports, net set).
  void rename_net(const std::string& from, const std::string& to);

  bool operator==(const Netlist&) const = default;
};

// Driver/sink view of a netlist.
class Connectivity {
 public:
  struct PinRef {
    std::size_t inst = 0;
    std::string pin;
  };
  struct NetInfo {
    enum class DriverKind { None, Instance, Port, Constant } driver_kind = DriverKind::None;
    PinRef driver;               // valid for DriverKind::Instance
    std::string driver_port;     // valid for DriverKind::Port
    int driver_count = 0;
    std::vector<PinRef> sinks;   // instance input pins
    std::vector<std::string> output_ports;
  };

  Connectivity(const Netlist& netlist, const CellLibrary& library);

  const NetInfo* net(std::string_view name) const;
  const std::unordered_map<std::string, NetInfo>& nets() const { return nets_; }
  const CellKind* kind_of(std::size_t inst) const { return kinds_[inst]; }
  const Netlist& netlist() const { return *netlist_; }
  // Instance driving `net` through an output pin, if any.
  std::optional<std::size_t> driver_instance(std::string_view net) const;

 private:
  const Netlist* netlist_;
  std::vector<const CellKind*> kinds_;
  std::unordered_map<std::string, NetInfo> nets_;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string locus;  // net or instance name(s)
  std::string message;
};

std::string to_string(const Diagnostic& d);

// Canonical JSON interchange. parse_canonical throws ParseError on malformed
// text and Error(Netlist) on unknown kinds, multiple drivers or dangling pins.
Netlist parse_canonical(std::string_view text, const CellLibrary& library,
                        const std::string& file = "<canonical>");
std::string emit_canonical(const Netlist& netlist);

// Checks that make up the structural contract of a design. Never throws.
std::vector<Diagnostic> validate(const Netlist& netlist, const CellLibrary& library);

// The subset of validate() that the parsers treat as fatal: unknown kinds or
// pins, dangling pins, duplicate instances and multiply-driven nets.
std::vector<Diagnostic> structural_errors(const Netlist& netlist, const CellLibrary& library);

// Combinational instances (indices into netlist.instances) in dependency
// order. Throws Error(Netlist) naming the instances of a combinational cycle.
std::vector<std::size_t> topo_order_comb(const Netlist& netlist, const CellLibrary& library);

struct CellCounts {
  std::size_t sequential = 0;
  std::size_t combinational = 0;
  std::size_t total() const { return sequential + combinational; }
};

CellCounts count_cells(const Netlist& netlist, const CellLibrary& library);

// A name not yet used by any instance or net of `netlist`, derived from
// `base` with a numeric suffix when needed. `taken` is updated.
std::string unique_name(const std::string& base, std::set<std::string>& taken);
std::set<std::string> used_names(const Netlist& netlist);

}  // namespace twophase
