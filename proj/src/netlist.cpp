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

#include "twophase/netlist.hpp"

#include <algorithm>
#include <deque>

#include "json_util.hpp"
#include "twophase/error.hpp"

namespace twophase {

const Port* Netlist::port(std::string_view port_name) const {
  for (const auto& p : ports) {
    if (p.name == port_name) return &p;
  }
  return nullptr;
}

const Instance* Netlist::instance(std::string_view inst_name) const {
  auto it = std::lower_bound(instances.begin(), instances.end(), inst_name,
                             [](const Instance& i, std::string_view n) { return i.name < n; });
  if (it != instances.end() && it->name == inst_name) return &*it;
  // Fall back to a scan for netlists under construction.
  for (const auto& i : instances) {
    if (i.name == inst_name) return &i;
  }
  return nullptr;
}

Instance* Netlist::instance(std::string_view inst_name) {
  return const_cast<Instance*>(std::as_const(*this).instance(inst_name));
}

void Netlist::sort_instances() {
  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.name < b.name; });
}

void Netlist::rename_net(const std::string& from, const std::string& to) {
  if (from == to) return;
  for (auto& inst : instances) {
    for (auto& [pin, net] : inst.pins) {
      if (net == from) net = to;
    }
  }
  for (auto& p : ports) {
    if (p.name == from) p.name = to;
  }
  if (nets.erase(from)) nets.insert(to);
  if (const_zero == from) const_zero = to;
  if (const_one == from) const_one = to;
}

// ---------------------------------------------------------------------------

Connectivity::Connectivity(const Netlist& netlist, const CellLibrary& library)
    : netlist_(&netlist) {
  kinds_.reserve(netlist.instances.size());
  for (const auto& net : netlist.nets) nets_[net];
  for (const auto& port : netlist.ports) {
    NetInfo& info = nets_[port.name];
    if (port.dir == PortDir::Input) {
      info.driver_kind = NetInfo::DriverKind::Port;
      info.driver_port = port.name;
      ++info.driver_count;
    } else {
      info.output_ports.push_back(port.name);
    }
  }
  for (const auto& c : {netlist.const_zero, netlist.const_one}) {
    auto it = nets_.find(c);
    if (it != nets_.end() && it->second.driver_kind == NetInfo::DriverKind::None) {
      it->second.driver_kind = NetInfo::DriverKind::Constant;
      ++it->second.driver_count;
    }
  }
  for (std::size_t i = 0; i < netlist.instances.size(); ++i) {
    const Instance& inst = netlist.instances[i];
    const CellKind* kind = library.find(inst.kind);
    kinds_.push_back(kind);
    for (const auto& [pin, net] : inst.pins) {
      NetInfo& info = nets_[net];
      const PinDef* def = kind ? kind->pin(pin) : nullptr;
      if (def && def->dir == PinDir::Out) {
        if (info.driver_kind == NetInfo::DriverKind::None ||
            info.driver_kind == NetInfo::DriverKind::Constant) {
          info.driver_kind = NetInfo::DriverKind::Instance;
          info.driver = PinRef{i, pin};
        }
        ++info.driver_count;
      } else {
        info.sinks.push_back(PinRef{i, pin});
      }
    }
  }
}

const Connectivity::NetInfo* Connectivity::net(std::string_view name) const {
  auto it = nets_.find(std::string(name));
  return it == nets_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> Connectivity::driver_instance(std::string_view name) const {
  const NetInfo* info = net(name);
  if (info && info->driver_kind == NetInfo::DriverKind::Instance) return info->driver.inst;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string to_string(const Diagnostic& d) {
  return std::string(d.severity == Severity::Error ? "error" : "warning") + ": " + d.message +
         (d.locus.empty() ? "" : " [" + d.locus + "]");
}

// Checks every Instance invariant plus single-driver nets. These are the
// problems the parsers refuse.
static std::vector<Diagnostic> instance_diagnostics(const Netlist& n, const CellLibrary& lib,
                                             const Connectivity& conn) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const auto& inst : n.instances) {
    if (!seen.insert(inst.name).second) {
      out.push_back({Severity::Error, inst.name, "duplicate instance name " + inst.name});
    }
    const CellKind* kind = lib.find(inst.kind);
    if (!kind) {
      out.push_back({Severity::Error, inst.name, "unknown cell kind " + inst.kind});
      continue;
    }
    for (const auto& p : kind->pins) {
      if (!inst.pins.count(p.name)) {
        out.push_back({Severity::Error, inst.name,
                       "dangling pin " + inst.name + "." + p.name + " is unconnected"});
      }
    }
    for (const auto& [pin, net] : inst.pins) {
      if (!kind->pin(pin)) {
        out.push_back({Severity::Error, inst.name,
                       "unknown pin " + pin + " on " + inst.name + " (" + inst.kind + ")"});
      }
      if (!n.nets.count(net) && !n.is_constant(net)) {
        out.push_back({Severity::Error, inst.name,
                       "dangling pin " + inst.name + "." + pin + " references undeclared net " +
                           net});
      }
    }
  }
  for (const auto& [name, info] : conn.nets()) {
    if (info.driver_count > 1) {
      out.push_back({Severity::Error, name, "multiple drivers on net " + name});
    }
  }
  std::sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.locus, a.message) < std::tie(b.locus, b.message);
  });
  return out;
}

std::vector<Diagnostic> structural_errors(const Netlist& netlist, const CellLibrary& library) {
  Connectivity conn(netlist, library);
  return instance_diagnostics(netlist, library, conn);
}

namespace {

struct CombGraph {
  std::vector<std::size_t> comb;                  // instance indices
  std::vector<std::vector<std::size_t>> preds;    // by instance index
};

CombGraph comb_graph(const Netlist& n, const Connectivity& conn) {
  CombGraph g;
  g.preds.resize(n.instances.size());
  for (std::size_t i = 0; i < n.instances.size(); ++i) {
    const CellKind* k = conn.kind_of(i);
    if (!k || k->is_sequential()) continue;
    g.comb.push_back(i);
    for (const auto& [pin, net] : n.instances[i].pins) {
      const PinDef* def = k->pin(pin);
      if (!def || def->dir != PinDir::In) continue;
      auto drv = conn.driver_instance(net);
      if (drv && conn.kind_of(*drv) && !conn.kind_of(*drv)->is_sequential()) {
        g.preds[i].push_back(*drv);
      }
    }
  }
  return g;
}

// Kahn's algorithm; returns the order and (if any) the instances of one
// cycle among the leftovers.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> comb_order(
    const Netlist& n, const Connectivity& conn) {
  CombGraph g = comb_graph(n, conn);
  std::vector<int> indeg(n.instances.size(), 0);
  std::vector<std::vector<std::size_t>> succ(n.instances.size());
  for (std::size_t v : g.comb) {
    for (std::size_t u : g.preds[v]) {
      ++indeg[v];
      succ[u].push_back(v);
    }
  }
  std::deque<std::size_t> ready;
  for (std::size_t v : g.comb) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (std::size_t s : succ[v]) {
      if (--indeg[s] == 0) ready.push_back(s);
    }
  }
  std::vector<std::size_t> cycle;
  if (order.size() != g.comb.size()) {
    // Every leftover node has a leftover predecessor; walk back to a repeat.
    std::size_t start = 0;
    for (std::size_t v : g.comb) {
      if (indeg[v] > 0) {
        start = v;
        break;
      }
    }
    std::vector<int> pos(n.instances.size(), -1);
    std::vector<std::size_t> walk;
    std::size_t v = start;
    while (pos[v] < 0) {
      pos[v] = static_cast<int>(walk.size());
      walk.push_back(v);
      for (std::size_t u : g.preds[v]) {
        if (indeg[u] > 0) {
          v = u;
          break;
        }
      }
    }
    cycle.assign(walk.begin() + pos[v], walk.end());
    std::reverse(cycle.begin(), cycle.end());
  }
  return {order, cycle};
}

std::string join_names(const Netlist& n, const std::vector<std::size_t>& idx) {
  std::vector<std::string> names;
  for (std::size_t i : idx) names.push_back(n.instances[i].name);
  std::sort(names.begin(), names.end());
  std::string s;
  for (const auto& nm : names) s += (s.empty() ? "" : ",") + nm;
  return s;
}

}  // namespace

std::vector<Diagnostic> validate(const Netlist& netlist, const CellLibrary& library) {
  Connectivity conn(netlist, library);
  std::vector<Diagnostic> out = instance_diagnostics(netlist, library, conn);

  std::set<std::string> port_names;
  for (const auto& p : netlist.ports) {
    if (!port_names.insert(p.name).second) {
      out.push_back({Severity::Error, p.name, "duplicate port " + p.name});
    }
    if (p.kind == PortKind::Clock && p.dir != PortDir::Input) {
      out.push_back({Severity::Error, p.name, "clock port " + p.name + " must be an input"});
    }
  }

  std::vector<std::string> names;
  for (const auto& [name, info] : conn.nets()) names.push_back(name);
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    const auto& info = conn.nets().at(name);
    bool used = !info.sinks.empty() || !info.output_ports.empty();
    if (info.driver_kind == Connectivity::NetInfo::DriverKind::None && used) {
      out.push_back({Severity::Error, name, "undriven net " + name});
    }
    if (!netlist.nets.count(name) && !netlist.is_constant(name)) {
      out.push_back({Severity::Error, name, "net " + name + " is not declared"});
    }
  }

  auto [order, cycle] = comb_order(netlist, conn);
  if (!cycle.empty()) {
    std::string who = join_names(netlist, cycle);
    out.push_back({Severity::Error, who, "combinational cycle through " + who});
  }
  return out;
}

std::vector<std::size_t> topo_order_comb(const Netlist& netlist, const CellLibrary& library) {
  Connectivity conn(netlist, library);
  auto [order, cycle] = comb_order(netlist, conn);
  if (!cycle.empty()) {
    throw Error(ErrorCode::Netlist, "combinational cycle through " + join_names(netlist, cycle));
  }
  return order;
}

CellCounts count_cells(const Netlist& netlist, const CellLibrary& library) {
  CellCounts c;
  for (const auto& inst : netlist.instances) {
    const CellKind* k = library.find(inst.kind);
    if (k && k->is_sequential()) {
      ++c.sequential;
    } else {
      ++c.combinational;
    }
  }
  return c;
}

std::set<std::string> used_names(const Netlist& netlist) {
  std::set<std::string> taken(netlist.nets.begin(), netlist.nets.end());
  for (const auto& i : netlist.instances) taken.insert(i.name);
  for (const auto& p : netlist.ports) taken.insert(p.name);
  return taken;
}

std::string unique_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  for (int k = 1; taken.count(name); ++k) name = base + "_" + std::to_string(k);
  taken.insert(name);
  return name;
}

// ---------------------------------------------------------------------------
// Canonical JSON

Netlist parse_canonical(std::string_view text, const CellLibrary& library,
                        const std::string& file) {
  using detail::json;
  json doc = detail::parse_json(text, file);
  if (!doc.is_object()) throw Error(ErrorCode::Parse, file + ": top level must be an object");

  Netlist n;
  n.name = detail::require_string(doc, "name", file);
  if (doc.contains("constants")) {
    const json& c = doc.at("constants");
    n.const_zero = detail::require_string(c, "zero", file + " constants");
    n.const_one = detail::require_string(c, "one", file + " constants");
  }
  for (const json& p : detail::require(doc, "ports", file)) {
    Port port;
    port.name = detail::require_string(p, "name", file + " port");
    std::string dir = detail::require_string(p, "dir", "port " + port.name);
    if (dir == "input") {
      port.dir = PortDir::Input;
    } else if (dir == "output") {
      port.dir = PortDir::Output;
    } else {
      throw Error(ErrorCode::Parse, "port " + port.name + ": dir must be input or output");
    }
    std::string kind = p.contains("kind") ? p.at("kind").get<std::string>() : "data";
    if (kind == "data") {
      port.kind = PortKind::Data;
    } else if (kind == "clock") {
      port.kind = PortKind::Clock;
    } else {
      throw Error(ErrorCode::Parse, "port " + port.name + ": kind must be data or clock");
    }
    n.nets.insert(port.name);
    n.ports.push_back(std::move(port));
  }
  if (doc.contains("nets")) {
    for (const json& net : doc.at("nets")) n.nets.insert(net.get<std::string>());
  }
  if (doc.contains("instances")) {
    for (const json& i : doc.at("instances")) {
      Instance inst;
      inst.name = detail::require_string(i, "name", file + " instance");
      inst.kind = detail::require_string(i, "kind", "instance " + inst.name);
      for (auto& [pin, net] : detail::require(i, "pins", "instance " + inst.name).items()) {
        inst.pins[pin] = net.get<std::string>();
        if (n.is_constant(inst.pins[pin])) n.nets.insert(inst.pins[pin]);
      }
      if (i.contains("init")) inst.init = i.at("init").get<int>() ? 1 : 0;
      n.instances.push_back(std::move(inst));
    }
  }
  n.sort_instances();

  Connectivity conn(n, library);
  auto diags = instance_diagnostics(n, library, conn);
  if (!diags.empty()) throw Error(ErrorCode::Netlist, diags.front().message);
  return n;
}

std::string emit_canonical(const Netlist& netlist) {
  using detail::json;
  // nlohmann's default object type is a std::map, so keys come out sorted.
  json doc;
  doc["name"] = netlist.name;
  doc["constants"] = {{"zero", netlist.const_zero}, {"one", netlist.const_one}};
  json ports = json::array();
  for (const auto& p : netlist.ports) {
    ports.push_back({{"name", p.name},
                     {"dir", p.dir == PortDir::Input ? "input" : "output"},
                     {"kind", p.kind == PortKind::Clock ? "clock" : "data"}});
  }
  doc["ports"] = std::move(ports);
  doc["nets"] = json(netlist.nets);  // std::set is already sorted
  std::vector<const Instance*> sorted;
  for (const auto& i : netlist.instances) sorted.push_back(&i);
  std::sort(sorted.begin(), sorted.end(),
            [](const Instance* a, const Instance* b) { return a->name < b->name; });
  json insts = json::array();
  for (const Instance* i : sorted) {
    json j{{"name", i->name}, {"kind", i->kind}, {"pins", json(i->pins)}};
    if (i->init) j["init"] = 1;
    insts.push_back(std::move(j));
  }
  doc["instances"] = std::move(insts);
  return doc.dump(2) + "\n";
}

}  // namespace twophase
