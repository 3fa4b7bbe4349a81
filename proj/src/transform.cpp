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

#include "twophase/transform.hpp"

#include <algorithm>
#include <set>

#include "twophase/error.hpp"

namespace twophase {

const char* to_string(Variant v) {
  return v == Variant::ClockGated ? "clock-gated" : "recirc-mux";
}

Variant variant_from_string(const std::string& s) {
  if (s == "clock-gated" || s == "cg") return Variant::ClockGated;
  if (s == "recirc-mux" || s == "recirc") return Variant::RecircMux;
  throw Error(ErrorCode::Usage, "unknown variant '" + s + "' (expected clock-gated or recirc-mux)");
}

const char* to_string(TraceRole r) {
  switch (r) {
    case TraceRole::Main: return "main";
    case TraceRole::Recirc: return "recirc";
    case TraceRole::Control: return "control";
    case TraceRole::Mux: return "mux";
    case TraceRole::Gate: return "gate";
  }
  return "?";
}

static TraceRole role_from_string(const std::string& s) {
  for (TraceRole r : {TraceRole::Main, TraceRole::Recirc, TraceRole::Control, TraceRole::Mux,
                      TraceRole::Gate}) {
    if (s == to_string(r)) return r;
  }
  throw Error(ErrorCode::Parse, "unknown trace role '" + s + "'");
}

// ---------------------------------------------------------------------------
// TransformTrace

const TraceEntry* TransformTrace::find(const std::string& generated) const {
  for (const auto& [orig, entries] : origins) {
    for (const auto& e : entries) {
      if (e.name == generated) return &e;
    }
  }
  return nullptr;
}

TraceEntry* TransformTrace::find(const std::string& generated) {
  return const_cast<TraceEntry*>(std::as_const(*this).find(generated));
}

PhaseMap TransformTrace::phases() const {
  PhaseMap out;
  for (const auto& [orig, entries] : origins) {
    for (const auto& e : entries) out[e.name] = e.phase;
  }
  return out;
}

void TransformTrace::set_phases(const PhaseMap& phases) {
  for (auto& [orig, entries] : origins) {
    for (auto& e : entries) {
      if (auto it = phases.find(e.name); it != phases.end()) e.phase = it->second;
    }
  }
}

void TransformTrace::reconcile(const Netlist& netlist, const CellLibrary& library,
                               const PhaseMap& phases) {
  std::set<std::string> seen;
  for (auto it = origins.begin(); it != origins.end();) {
    auto& entries = it->second;
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [&](const TraceEntry& e) { return !netlist.instance(e.name); }),
                  entries.end());
    for (const auto& e : entries) seen.insert(e.name);
    if (entries.empty() && it->first == kRetimedKey) {
      it = origins.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& inst : netlist.instances) {
    if (seen.count(inst.name) || !library.at(inst.kind).is_sequential()) continue;
    TraceEntry e{inst.name, TraceRole::Main, Phase::Phi1};
    origins[kRetimedKey].push_back(e);
  }
  set_phases(phases);
}

nlohmann::json TransformTrace::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [orig, entries] : origins) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
      arr.push_back({{"name", e.name}, {"role", to_string(e.role)}, {"phase", to_string(e.phase)}});
    }
    j[orig] = arr;
  }
  return j;
}

TransformTrace TransformTrace::from_json(const nlohmann::json& j) {
  TransformTrace t;
  if (!j.is_object()) throw Error(ErrorCode::Parse, "trace must be a JSON object");
  for (const auto& [orig, arr] : j.items()) {
    if (!arr.is_array()) throw Error(ErrorCode::Parse, "trace entry for " + orig + " must be a list");
    for (const auto& e : arr) {
      auto phase = phase_from_string(e.at("phase").get<std::string>());
      if (!phase) throw Error(ErrorCode::Parse, "bad phase in trace entry for " + orig);
      t.origins[orig].push_back(
          {e.at("name").get<std::string>(), role_from_string(e.at("role").get<std::string>()),
           *phase});
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Helpers

namespace {

struct SeqPins {
  std::string data, clock, output;
  std::string control;  // pin name, empty when none
  std::optional<SeqControl> control_kind;
};

SeqPins seq_pins(const CellKind& k) {
  SeqPins p;
  p.data = k.pin_with_role(PinRole::Data)->name;
  p.clock = k.pin_with_role(PinRole::Clock)->name;
  p.output = k.output_pin();
  if (!k.controls.empty()) {
    p.control_kind = k.controls.front();
    p.control = k.control_pin(k.controls.front())->name;
  }
  return p;
}

const CellKind& require_kind(const CellLibrary& lib, std::string_view name,
                             std::initializer_list<const char*> pins) {
  const CellKind* k = lib.find(name);
  if (!k) {
    throw Error(ErrorCode::Library, "library lacks required cell " + std::string(name));
  }
  for (const char* p : pins) {
    if (!k->pin(p)) {
      throw Error(ErrorCode::Library,
                  "cell " + std::string(name) + " lacks required pin " + std::string(p));
    }
  }
  return *k;
}

bool is_and2(const CellKind& k) {
  return !k.is_sequential() && k.inputs.size() == 2 && k.truth == std::vector<std::uint8_t>{0, 0, 0, 1};
}

bool is_clock_port(const Netlist& n, const std::string& net) {
  const Port* p = n.port(net);
  return p && p->kind == PortKind::Clock && p->dir == PortDir::Input;
}

Instance make_dff(const std::string& name, const std::string& d, const std::string& clk,
                  const std::string& q, int init) {
  Instance i;
  i.name = name;
  i.kind = std::string(cells::kDff);
  i.pins = {{"D", d}, {"C", clk}, {"Q", q}};
  i.init = init;
  return i;
}

Instance make_mux(const std::string& name, const std::string& a, const std::string& b,
                  const std::string& s, const std::string& y) {
  Instance i;
  i.name = name;
  i.kind = std::string(cells::kMux2);
  i.pins = {{"A", a}, {"B", b}, {"S", s}, {"Y", y}};
  return i;
}

Instance make_and(const std::string& name, const std::string& clk, const std::string& en,
                  const std::string& y) {
  Instance i;
  i.name = name;
  i.kind = std::string(cells::kAnd2);
  i.pins = {{"A", clk}, {"B", en}, {"Y", y}};
  return i;
}

void check_base_cells(const CellLibrary& lib) {
  const CellKind& dff = require_kind(lib, cells::kDff, {"D", "C", "Q"});
  if (dff.pin("C")->role != PinRole::Clock || dff.pin("D")->role != PinRole::Data) {
    throw Error(ErrorCode::Library, "_DFF_P_ must have data pin D and clock pin C");
  }
}

// Control-pipeline registers, one per control net.
class ControlRegs {
 public:
  ControlRegs(Netlist& n, std::set<std::string>& taken, const std::string& clk)
      : n_(n), taken_(taken), clk_(clk) {}

  // Returns the registered control net; `created` receives a new register.
  std::string get(const std::string& net, std::optional<std::string>& created) {
    if (auto it = q_.find(net); it != q_.end()) return it->second;
    std::string name = unique_name(net + "__ctl_phi1", taken_);
    std::string q = unique_name(name + "_q", taken_);
    n_.nets.insert(q);
    n_.instances.push_back(make_dff(name, net, clk_, q, 0));
    q_[net] = q;
    created = name;
    return q;
  }

 private:
  Netlist& n_;
  std::set<std::string>& taken_;
  std::string clk_;
  std::map<std::string, std::string> q_;
};

std::string new_net(Netlist& n, std::set<std::string>& taken, const std::string& base) {
  std::string name = unique_name(base, taken);
  n.nets.insert(name);
  return name;
}

std::vector<std::size_t> flop_indices(const Netlist& n, const CellLibrary& lib) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n.instances.size(); ++i) {
    if (lib.at(n.instances[i].kind).is_dff()) out.push_back(i);
  }
  return out;
}

const std::string& constant_for(const Netlist& n, SeqControl c) {
  return (c == SeqControl::SyncSet1 || c == SeqControl::AsyncSet1) ? n.const_one : n.const_zero;
}

}  // namespace

bool is_clock_gate(const Connectivity& conn, std::size_t inst) {
  const Netlist& n = conn.netlist();
  const CellKind* k = conn.kind_of(inst);
  if (!k || !is_and2(*k)) return false;
  const Instance& g = n.instances[inst];
  bool clock_in = false;
  for (const auto& in : k->inputs) clock_in |= is_clock_port(n, g.pins.at(in));
  if (!clock_in) return false;
  const auto* info = conn.net(g.pins.at(k->output_pin()));
  if (!info || info->sinks.empty() || !info->output_ports.empty()) return false;
  for (const auto& s : info->sinks) {
    const CellKind* sk = conn.kind_of(s.inst);
    if (!sk->is_sequential() || sk->pin(s.pin)->role != PinRole::Clock) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// init_clock_ports

Netlist init_clock_ports(const Netlist& netlist, const CellLibrary& library, TransformPlan& plan) {
  if (plan.clocks.phi1 == plan.clocks.phi2) {
    throw Error(ErrorCode::Usage, "phase clock names must differ");
  }
  std::vector<const Port*> clocks;
  for (const auto& p : netlist.ports) {
    if (p.kind == PortKind::Clock) clocks.push_back(&p);
  }
  if (clocks.size() != 1) {
    throw Error(ErrorCode::Unsupported,
                "unsupported clock topology: expected exactly one clock port, found " +
                    std::to_string(clocks.size()));
  }
  const std::string clk = clocks.front()->name;
  if (clocks.front()->dir != PortDir::Input) {
    throw Error(ErrorCode::Unsupported, "unsupported clock topology: clock port " + clk +
                                            " is not an input");
  }
  Connectivity conn(netlist, library);
  if (const auto* info = conn.net(clk)) {
    if (!info->output_ports.empty()) {
      throw Error(ErrorCode::Unsupported, "clock used as data: " + clk + " drives an output port");
    }
    for (const auto& s : info->sinks) {
      const CellKind* k = conn.kind_of(s.inst);
      if (!k->is_sequential() || k->pin(s.pin)->role != PinRole::Clock) {
        throw Error(ErrorCode::Unsupported, "clock used as data: " + clk + " drives " +
                                                netlist.instances[s.inst].name + "." + s.pin);
      }
    }
  }
  for (const auto& inst : netlist.instances) {
    const CellKind& k = library.at(inst.kind);
    if (k.is_latch()) {
      throw Error(ErrorCode::Unsupported, "input design already contains latch " + inst.name);
    }
    if (k.is_dff() && inst.pins.at(k.pin_with_role(PinRole::Clock)->name) != clk) {
      throw Error(ErrorCode::Unsupported, "unsupported clock topology: clock pin of " + inst.name +
                                              " is not driven by clock port " + clk);
    }
  }
  std::set<std::string> taken = used_names(netlist);
  taken.erase(clk);
  for (const auto* name : {&plan.clocks.phi1, &plan.clocks.phi2}) {
    if (taken.count(*name)) {
      throw Error(ErrorCode::Transform, "clock name " + *name + " already used in the design");
    }
  }
  Netlist out = netlist;
  out.rename_net(clk, plan.clocks.phi1);
  out.ports.push_back(Port{plan.clocks.phi2, PortDir::Input, PortKind::Clock});
  out.nets.insert(plan.clocks.phi2);
  plan.original_clock = clk;
  return out;
}

// ---------------------------------------------------------------------------
// duplicate_ffs_recirc

TransformTrace duplicate_ffs_recirc(Netlist& netlist, const CellLibrary& library,
                                    const TransformPlan& plan) {
  check_base_cells(library);
  TransformTrace trace;
  std::set<std::string> taken = used_names(netlist);
  ControlRegs ctl(netlist, taken, plan.clocks.phi1);
  auto flops = flop_indices(netlist, library);
  std::vector<Instance> originals;
  for (std::size_t i : flops) originals.push_back(netlist.instances[i]);
  for (auto it = flops.rbegin(); it != flops.rend(); ++it) {
    netlist.instances.erase(netlist.instances.begin() + static_cast<std::ptrdiff_t>(*it));
  }
  for (const Instance& f : originals) {
    const CellKind& k = library.at(f.kind);
    SeqPins p = seq_pins(k);
    auto& entries = trace.origins[f.name];
    std::string q1 = new_net(netlist, taken, f.name + "__phi1_q");
    Instance s1 = f;
    s1.name = unique_name(f.name + "__phi1", taken);
    s1.pins[p.output] = q1;
    s1.pins[p.clock] = plan.clocks.phi1;
    Instance s2 = f;
    s2.name = unique_name(f.name + "__phi2", taken);
    s2.pins[p.data] = q1;
    s2.pins[p.clock] = plan.clocks.phi1;
    entries.push_back({s1.name, TraceRole::Main, Phase::Phi1});
    entries.push_back({s2.name, TraceRole::Main, Phase::Phi2});
    if (!p.control.empty()) {
      std::optional<std::string> created;
      s2.pins[p.control] = ctl.get(f.pins.at(p.control), created);
      if (created) entries.push_back({*created, TraceRole::Control, Phase::Phi1});
    }
    netlist.instances.push_back(std::move(s1));
    netlist.instances.push_back(std::move(s2));
  }
  netlist.sort_instances();
  return trace;
}

// ---------------------------------------------------------------------------
// transform_recirc

void transform_recirc(Netlist& netlist, const CellLibrary& library, TransformTrace& trace) {
  check_base_cells(library);
  require_kind(library, cells::kMux2, {"A", "B", "S", "Y"});
  std::set<std::string> taken = used_names(netlist);
  std::vector<Instance> added;
  for (auto& [orig, entries] : trace.origins) {
    std::vector<TraceEntry> extra;
    for (const auto& e : entries) {
      if (e.role != TraceRole::Main) continue;
      Instance* f = netlist.instance(e.name);
      if (!f) throw Error(ErrorCode::Transform, "trace names missing instance " + e.name);
      const CellKind& k = library.at(f->kind);
      if (!k.is_dff()) {
        throw Error(ErrorCode::Transform, "trace entry " + e.name + " is not a flip-flop");
      }
      if (k.is_base_dff()) continue;
      SeqPins p = seq_pins(k);
      const Phase ph = e.phase;
      const std::string tag = ph == Phase::Phi1 ? "phi1" : "phi2";
      const std::string clk = f->pins.at(p.clock);
      const std::string q = f->pins.at(p.output);
      const std::string ctl_net = f->pins.at(p.control);
      std::string d = f->pins.at(p.data);
      const std::string base = orig == TransformTrace::kRetimedKey ? e.name : orig;
      if (*p.control_kind == SeqControl::Enable) {
        std::string rname = unique_name(base + "__recirc_" + to_string(opposite(ph)), taken);
        std::string rq = new_net(netlist, taken, rname + "_q");
        added.push_back(make_dff(rname, q, clk, rq, f->init));
        std::string mname = unique_name(base + "__mux_" + tag, taken);
        std::string my = new_net(netlist, taken, mname + "_y");
        added.push_back(make_mux(mname, rq, d, ctl_net, my));
        extra.push_back({rname, TraceRole::Recirc, opposite(ph)});
        extra.push_back({mname, TraceRole::Mux, ph});
        d = my;
      } else {
        std::string mname = unique_name(base + "__cmux_" + tag, taken);
        std::string my = new_net(netlist, taken, mname + "_y");
        added.push_back(make_mux(mname, d, constant_for(netlist, *p.control_kind), ctl_net, my));
        netlist.nets.insert(constant_for(netlist, *p.control_kind));
        extra.push_back({mname, TraceRole::Mux, ph});
        d = my;
      }
      Instance lowered = make_dff(f->name, d, clk, q, f->init);
      *f = std::move(lowered);
    }
    entries.insert(entries.end(), extra.begin(), extra.end());
  }
  for (auto& a : added) netlist.instances.push_back(std::move(a));
  for (const auto& inst : netlist.instances) {
    if (library.at(inst.kind).is_dff() && !library.at(inst.kind).is_base_dff()) {
      throw Error(ErrorCode::Transform, "trace inconsistent with netlist: " + inst.name +
                                            " is not covered by the trace");
    }
  }
  netlist.sort_instances();
}

// ---------------------------------------------------------------------------
// transform_clock_gated

TransformTrace transform_clock_gated(Netlist& netlist, const CellLibrary& library,
                                     const TransformPlan& plan) {
  check_base_cells(library);
  TransformTrace trace;
  auto flops = flop_indices(netlist, library);
  for (std::size_t i : flops) {
    const Instance& f = netlist.instances[i];
    const CellKind& k = library.at(f.kind);
    for (SeqControl c : k.controls) {
      if (c == SeqControl::AsyncReset0 || c == SeqControl::AsyncSet1) {
        throw Error(ErrorCode::Unsupported,
                    f.name + ": asynchronous " + std::string(to_string(c)) +
                        " is not supported by the clock-gated variant; use recirc-mux");
      }
      if (c == SeqControl::Enable) require_kind(library, cells::kAnd2, {"A", "B", "Y"});
      else require_kind(library, cells::kMux2, {"A", "B", "S", "Y"});
    }
  }
  std::set<std::string> taken = used_names(netlist);
  ControlRegs ctl(netlist, taken, plan.clocks.phi1);
  std::vector<Instance> originals;
  for (std::size_t i : flops) originals.push_back(netlist.instances[i]);
  for (auto it = flops.rbegin(); it != flops.rend(); ++it) {
    netlist.instances.erase(netlist.instances.begin() + static_cast<std::ptrdiff_t>(*it));
  }
  const std::string& clk = plan.clocks.phi1;
  for (const Instance& f : originals) {
    const CellKind& k = library.at(f.kind);
    SeqPins p = seq_pins(k);
    auto& entries = trace.origins[f.name];
    std::string n1 = unique_name(f.name + "__phi1", taken);
    std::string n2 = unique_name(f.name + "__phi2", taken);
    std::string q1 = new_net(netlist, taken, f.name + "__phi1_q");
    std::string d1 = f.pins.at(p.data);
    std::string d2 = q1;
    std::string c1 = clk, c2 = clk;
    std::vector<TraceEntry> extra;
    if (p.control_kind) {
      const std::string& raw = f.pins.at(p.control);
      std::optional<std::string> created;
      std::string piped = ctl.get(raw, created);
      if (created) extra.push_back({*created, TraceRole::Control, Phase::Phi1});
      if (*p.control_kind == SeqControl::Enable) {
        std::string g1 = unique_name(f.name + "__cg_and_phi1", taken);
        std::string g2 = unique_name(f.name + "__cg_and_phi2", taken);
        c1 = new_net(netlist, taken, g1 + "_y");
        c2 = new_net(netlist, taken, g2 + "_y");
        netlist.instances.push_back(make_and(g1, clk, raw, c1));
        netlist.instances.push_back(make_and(g2, clk, piped, c2));
        extra.push_back({g1, TraceRole::Gate, Phase::Phi1});
        extra.push_back({g2, TraceRole::Gate, Phase::Phi2});
      } else {
        const std::string& k0 = constant_for(netlist, *p.control_kind);
        netlist.nets.insert(k0);
        std::string m1 = unique_name(f.name + "__cmux_phi1", taken);
        std::string m2 = unique_name(f.name + "__cmux_phi2", taken);
        std::string y1 = new_net(netlist, taken, m1 + "_y");
        std::string y2 = new_net(netlist, taken, m2 + "_y");
        netlist.instances.push_back(make_mux(m1, d1, k0, raw, y1));
        netlist.instances.push_back(make_mux(m2, d2, k0, piped, y2));
        extra.push_back({m1, TraceRole::Mux, Phase::Phi1});
        extra.push_back({m2, TraceRole::Mux, Phase::Phi2});
        d1 = y1;
        d2 = y2;
      }
    }
    netlist.instances.push_back(make_dff(n1, d1, c1, q1, f.init));
    netlist.instances.push_back(make_dff(n2, d2, c2, f.pins.at(p.output), f.init));
    entries.push_back({n1, TraceRole::Main, Phase::Phi1});
    entries.push_back({n2, TraceRole::Main, Phase::Phi2});
    entries.insert(entries.end(), extra.begin(), extra.end());
  }
  netlist.sort_instances();
  return trace;
}

// ---------------------------------------------------------------------------
// connect_clk / map_dff_to_latch

namespace {

// Rewires the clock of sequential instance `idx`, following a clock gate.
void rewire_clock(Netlist& netlist, const CellLibrary& library, const Connectivity& conn,
                  std::size_t idx, const std::string& clock_port) {
  Instance& inst = netlist.instances[idx];
  const CellKind& k = library.at(inst.kind);
  const std::string pin = k.pin_with_role(PinRole::Clock)->name;
  const std::string net = inst.pins.at(pin);
  if (is_clock_port(netlist, net)) {
    inst.pins[pin] = clock_port;
    return;
  }
  auto drv = conn.driver_instance(net);
  if (drv && is_clock_gate(conn, *drv)) {
    Instance& g = netlist.instances[*drv];
    for (const auto& in : library.at(g.kind).inputs) {
      if (is_clock_port(netlist, g.pins.at(in))) {
        g.pins[in] = clock_port;
        return;
      }
    }
  }
  throw Error(ErrorCode::Transform, "clock pin of " + inst.name +
                                        " is not driven by a clock port or clock gate");
}

}  // namespace

void connect_clk(Netlist& netlist, const CellLibrary& library,
                 const std::vector<std::string>& selection, const std::string& clock_port) {
  if (selection.empty()) return;
  if (!is_clock_port(netlist, clock_port)) {
    throw Error(ErrorCode::Transform, "no clock port named " + clock_port);
  }
  Connectivity conn(netlist, library);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < netlist.instances.size(); ++i) index[netlist.instances[i].name] = i;
  for (const auto& name : selection) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(ErrorCode::Transform, "no instance named " + name);
    const std::size_t i = it->second;
    const CellKind& k = library.at(netlist.instances[i].kind);
    if (k.is_sequential()) {
      rewire_clock(netlist, library, conn, i, clock_port);
    } else if (is_clock_gate(conn, i)) {
      Instance& g = netlist.instances[i];
      for (const auto& in : k.inputs) {
        if (is_clock_port(netlist, g.pins.at(in))) {
          g.pins[in] = clock_port;
          break;
        }
      }
    } else {
      throw Error(ErrorCode::Transform, name + " is not a sequential cell or clock gate");
    }
  }
}

void map_dff_to_latch(Netlist& netlist, const CellLibrary& library, const PhaseMap& phases,
                      const ClockNames& clocks) {
  const CellKind& latch = library.at(cells::kLatch);
  const std::string l_d = latch.pin_with_role(PinRole::Data)->name;
  const std::string l_e = latch.pin_with_role(PinRole::Clock)->name;
  const std::string l_q = latch.output_pin();
  for (const auto& inst : netlist.instances) {
    const CellKind& k = library.at(inst.kind);
    if (k.is_sequential() && inst.kind != cells::kDff) {
      throw Error(ErrorCode::Transform, "un-lowered variant: " + inst.name + " (" + inst.kind + ")");
    }
    if (k.is_sequential() && !phases.count(inst.name)) {
      throw Error(ErrorCode::Transform, "no phase assigned to " + inst.name);
    }
  }
  for (Phase ph : {Phase::Phi1, Phase::Phi2}) {
    std::vector<std::string> sel;
    for (const auto& inst : netlist.instances) {
      if (library.at(inst.kind).is_sequential() && phases.at(inst.name) == ph) {
        sel.push_back(inst.name);
      }
    }
    connect_clk(netlist, library, sel, clocks.of(ph));
  }
  for (auto& inst : netlist.instances) {
    if (inst.kind != cells::kDff) continue;
    Instance l;
    l.name = inst.name;
    l.kind = std::string(cells::kLatch);
    l.pins = {{l_d, inst.pins.at("D")}, {l_e, inst.pins.at("C")}, {l_q, inst.pins.at("Q")}};
    l.init = inst.init;
    inst = std::move(l);
  }
}

}  // namespace twophase
