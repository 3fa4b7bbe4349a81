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

#include "twophase/sim.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

#include "twophase/error.hpp"

namespace twophase {

std::vector<std::string> data_inputs(const Netlist& netlist) {
  std::vector<std::string> out;
  for (const auto& p : netlist.ports) {
    if (p.dir == PortDir::Input && p.kind == PortKind::Data) out.push_back(p.name);
  }
  return out;
}

std::vector<std::string> data_outputs(const Netlist& netlist) {
  std::vector<std::string> out;
  for (const auto& p : netlist.ports) {
    if (p.dir == PortDir::Output) out.push_back(p.name);
  }
  return out;
}

Stimulus random_stimulus(const Netlist& netlist, std::size_t cycles, std::uint64_t seed) {
  Stimulus s;
  s.inputs = data_inputs(netlist);
  s.seed = seed;
  std::mt19937_64 rng(seed);
  s.vectors.resize(cycles);
  for (auto& v : s.vectors) {
    v.resize(s.inputs.size());
    std::uint64_t word = 0;
    int left = 0;
    for (auto& bit : v) {
      if (left == 0) {
        word = rng();
        left = 64;
      }
      bit = word & 1u;
      word >>= 1;
      --left;
    }
  }
  return s;
}

std::string Trace::to_csv() const {
  std::ostringstream os;
  os << "cycle,net,value\n";
  for (std::size_t c = 0; c < values.size(); ++c) {
    for (std::size_t n = 0; n < nets.size(); ++n) {
      os << c << "," << nets[n] << "," << int(values[c][n]) << "\n";
    }
  }
  return os.str();
}

std::string Trace::to_vcd(const std::string& module_name) const {
  auto ident = [](std::size_t i) {
    std::string s;
    do {
      s += static_cast<char>('!' + i % 94);
      i /= 94;
    } while (i);
    return s;
  };
  std::ostringstream os;
  os << "$timescale 1ns $end\n$scope module " << module_name << " $end\n";
  for (std::size_t n = 0; n < nets.size(); ++n) {
    os << "$var wire 1 " << ident(n) << " " << nets[n] << " $end\n";
  }
  os << "$upscope $end\n$enddefinitions $end\n";
  for (std::size_t c = 0; c < values.size(); ++c) {
    os << "#" << c << "\n";
    for (std::size_t n = 0; n < nets.size(); ++n) {
      if (c == 0 || values[c][n] != values[c - 1][n]) {
        os << int(values[c][n]) << ident(n) << "\n";
      }
    }
  }
  os << "#" << values.size() << "\n";
  return os.str();
}

void PhaseSchedule::check() const {
  for (const auto& s : steps) {
    if (s.phi1 && s.phi2) {
      throw Error(ErrorCode::Simulation, "schedule overlaps: both phases high in one sub-step");
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

struct CombOp {
  std::vector<std::size_t> in;
  std::size_t out = 0;
  std::vector<std::uint32_t> ones;  // minterms with output 1
};

std::uint64_t eval_op(const CombOp& op, const std::vector<std::uint64_t>& v) {
  std::uint64_t out = 0;
  for (std::uint32_t m : op.ones) {
    std::uint64_t term = ~std::uint64_t{0};
    for (std::size_t k = 0; k < op.in.size(); ++k) {
      term &= (m >> k) & 1u ? v[op.in[k]] : ~v[op.in[k]];
    }
    out |= term;
  }
  return out;
}

CombOp make_op(const Instance& inst, const CellKind& k,
               const std::function<std::size_t(const std::string&)>& idx) {
  CombOp op;
  for (const auto& in : k.inputs) op.in.push_back(idx(inst.pins.at(in)));
  op.out = idx(inst.pins.at(k.output_pin()));
  for (std::uint32_t m = 0; m < k.truth.size(); ++m) {
    if (k.truth[m]) op.ones.push_back(m);
  }
  return op;
}

}  // namespace

std::map<std::string, int> eval_comb(const Netlist& netlist, const CellLibrary& library,
                                     const std::map<std::string, int>& sources) {
  Connectivity conn(netlist, library);
  std::vector<std::string> names(netlist.nets.begin(), netlist.nets.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
  auto idx = [&](const std::string& n) { return index.at(n); };
  std::vector<std::uint64_t> v(names.size(), 0);
  for (const auto& n : names) {
    if (n == netlist.const_zero) continue;
    if (n == netlist.const_one) {
      v[idx(n)] = ~std::uint64_t{0};
      continue;
    }
    auto drv = conn.driver_instance(n);
    if (drv && !conn.kind_of(*drv)->is_sequential()) continue;
    auto it = sources.find(n);
    if (it == sources.end()) {
      const auto* info = conn.net(n);
      bool used = info && (!info->sinks.empty() || !info->output_ports.empty() || drv);
      if (used) throw Error(ErrorCode::Simulation, "unassigned source net " + n);
      continue;
    }
    v[idx(n)] = it->second ? ~std::uint64_t{0} : 0;
  }
  for (std::size_t i : topo_order_comb(netlist, library)) {
    const Instance& inst = netlist.instances[i];
    CombOp op = make_op(inst, library.at(inst.kind), idx);
    v[op.out] = eval_op(op, v);
  }
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = int(v[i] & 1u);
  return out;
}

// ---------------------------------------------------------------------------
// Simulator

struct Simulator::Impl {
  struct Seq {
    const CellKind* kind = nullptr;
    std::size_t d = 0, clk = 0, q = 0, ctl = 0;
    bool has_ctl = false;
    SeqControl control = SeqControl::Enable;
    std::uint64_t init = 0;
    std::string name;
  };

  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::uint64_t> v;
  std::vector<CombOp> ops;
  std::vector<Seq> flops, latches;
  std::vector<std::size_t> inputs;  // data input ports
  std::vector<std::size_t> clock_ports;
  std::map<std::string, std::size_t> clock_by_name;
  std::size_t zero = SIZE_MAX, one = SIZE_MAX;

  void settle() {
    if (latches.empty()) {
      for (const auto& op : ops) v[op.out] = eval_op(op, v);
      return;
    }
    const std::size_t bound = ops.size() + latches.size() + 1;
    for (std::size_t iter = 0; iter <= bound; ++iter) {
      for (const auto& op : ops) v[op.out] = eval_op(op, v);
      std::vector<const std::string*> changed;
      for (const auto& l : latches) {
        std::uint64_t en = v[l.clk];
        std::uint64_t q = (en & v[l.d]) | (~en & v[l.q]);
        if (q != v[l.q]) {
          v[l.q] = q;
          changed.push_back(&l.name);
        }
      }
      if (changed.empty()) return;
      if (iter == bound) {
        std::string list;
        for (std::size_t i = 0; i < changed.size() && i < 8; ++i) {
          list += (i ? ", " : "") + *changed[i];
        }
        throw Error(ErrorCode::Simulation, "unstable transparent network: " + list);
      }
    }
  }

  void set_clocks(std::uint64_t value) {
    for (std::size_t c : clock_ports) v[c] = value;
  }
};

Simulator::Simulator(const Netlist& netlist, const CellLibrary& library)
    : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.names.assign(netlist.nets.begin(), netlist.nets.end());
  for (const auto& p : netlist.ports) {
    if (!netlist.nets.count(p.name)) m.names.push_back(p.name);
  }
  for (std::size_t i = 0; i < m.names.size(); ++i) m.index[m.names[i]] = i;
  auto idx = [&](const std::string& n) -> std::size_t {
    auto it = m.index.find(n);
    if (it != m.index.end()) return it->second;
    m.index[n] = m.names.size();
    m.names.push_back(n);
    return m.names.size() - 1;
  };
  for (const auto& p : netlist.ports) {
    if (p.dir != PortDir::Input) continue;
    if (p.kind == PortKind::Clock) {
      m.clock_ports.push_back(idx(p.name));
      m.clock_by_name[p.name] = idx(p.name);
    } else {
      m.inputs.push_back(idx(p.name));
    }
  }
  if (netlist.nets.count(netlist.const_zero)) m.zero = idx(netlist.const_zero);
  if (netlist.nets.count(netlist.const_one)) m.one = idx(netlist.const_one);
  for (std::size_t i : topo_order_comb(netlist, library)) {
    const Instance& inst = netlist.instances[i];
    m.ops.push_back(make_op(inst, library.at(inst.kind), idx));
  }
  for (const auto& inst : netlist.instances) {
    const CellKind& k = library.at(inst.kind);
    if (!k.is_sequential()) continue;
    Impl::Seq s;
    s.kind = &k;
    s.d = idx(inst.pins.at(k.pin_with_role(PinRole::Data)->name));
    s.clk = idx(inst.pins.at(k.pin_with_role(PinRole::Clock)->name));
    s.q = idx(inst.pins.at(k.output_pin()));
    if (!k.controls.empty()) {
      s.has_ctl = true;
      s.control = k.controls.front();
      s.ctl = idx(inst.pins.at(k.control_pin(s.control)->name));
    }
    s.init = inst.init ? ~std::uint64_t{0} : 0;
    s.name = inst.name;
    (k.is_latch() ? m.latches : m.flops).push_back(s);
  }
  m.v.assign(m.names.size(), 0);
  reset();
}

Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

void Simulator::reset() {
  Impl& m = *impl_;
  std::fill(m.v.begin(), m.v.end(), 0);
  if (m.one != SIZE_MAX) m.v[m.one] = ~std::uint64_t{0};
  for (const auto& s : m.flops) m.v[s.q] = s.init;
  for (const auto& s : m.latches) m.v[s.q] = s.init;
}

void Simulator::set_inputs(const std::vector<std::uint64_t>& inputs) {
  Impl& m = *impl_;
  if (inputs.size() != m.inputs.size()) {
    throw Error(ErrorCode::Simulation, "stimulus has " + std::to_string(inputs.size()) +
                                           " inputs, design has " +
                                           std::to_string(m.inputs.size()));
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) m.v[m.inputs[i]] = inputs[i];
}

void Simulator::step_ff() {
  Impl& m = *impl_;
  m.set_clocks(0);
  m.settle();
  std::vector<std::uint64_t> low(m.flops.size()), next(m.flops.size());
  for (std::size_t i = 0; i < m.flops.size(); ++i) {
    const auto& f = m.flops[i];
    low[i] = m.v[f.clk];
    std::uint64_t d = m.v[f.d], q = m.v[f.q];
    std::uint64_t c = f.has_ctl ? m.v[f.ctl] : 0;
    switch (f.has_ctl ? f.control : SeqControl::Enable) {
      case SeqControl::Enable: next[i] = f.has_ctl ? ((c & d) | (~c & q)) : d; break;
      case SeqControl::SyncReset0:
      case SeqControl::AsyncReset0: next[i] = ~c & d; break;
      case SeqControl::SyncSet1:
      case SeqControl::AsyncSet1: next[i] = c | d; break;
    }
  }
  m.set_clocks(~std::uint64_t{0});
  m.settle();
  for (std::size_t i = 0; i < m.flops.size(); ++i) {
    const auto& f = m.flops[i];
    std::uint64_t edge = ~low[i] & m.v[f.clk];
    m.v[f.q] = (edge & next[i]) | (~edge & m.v[f.q]);
  }
  m.set_clocks(0);
  m.settle();
}

void Simulator::step_two_phase(const PhaseSchedule& schedule) {
  Impl& m = *impl_;
  auto clock = [&](const std::string& name) -> std::size_t {
    auto it = m.clock_by_name.find(name);
    if (it == m.clock_by_name.end()) {
      throw Error(ErrorCode::Simulation, "design has no clock port " + name);
    }
    return it->second;
  };
  const std::size_t c1 = clock(schedule.clocks.phi1), c2 = clock(schedule.clocks.phi2);
  m.set_clocks(0);
  m.settle();
  for (const auto& s : schedule.steps) {
    m.v[c1] = s.phi1 ? ~std::uint64_t{0} : 0;
    m.v[c2] = s.phi2 ? ~std::uint64_t{0} : 0;
    m.settle();
  }
}

std::uint64_t Simulator::value(const std::string& net) const {
  auto it = impl_->index.find(net);
  if (it == impl_->index.end()) throw Error(ErrorCode::Simulation, "no net named " + net);
  return impl_->v[it->second];
}

// ---------------------------------------------------------------------------

namespace {

enum class Mode { Ff, TwoPhase };

void check_kinds(const Netlist& netlist, const CellLibrary& library, Mode mode) {
  for (const auto& inst : netlist.instances) {
    const CellKind& k = library.at(inst.kind);
    if (mode == Mode::Ff && k.is_latch()) {
      throw Error(ErrorCode::Simulation, "flip-flop simulation found latch " + inst.name);
    }
    if (mode == Mode::TwoPhase && k.is_dff()) {
      throw Error(ErrorCode::Simulation, "two-phase simulation found flip-flop " + inst.name);
    }
  }
}

std::vector<Trace> run_batch(const Netlist& netlist, const CellLibrary& library,
                             const std::vector<Stimulus>& stimuli, const PhaseSchedule* schedule,
                             std::vector<std::string> probes) {
  check_kinds(netlist, library, schedule ? Mode::TwoPhase : Mode::Ff);
  if (schedule) schedule->check();
  if (probes.empty()) probes = data_outputs(netlist);
  std::vector<Trace> traces(stimuli.size());
  if (stimuli.empty()) return traces;
  const auto expected_inputs = data_inputs(netlist);
  const std::size_t cycles = stimuli.front().cycles();
  for (const auto& s : stimuli) {
    if (s.inputs != expected_inputs) {
      throw Error(ErrorCode::Simulation, "stimulus inputs do not match the design's data inputs");
    }
    if (s.cycles() != cycles) {
      throw Error(ErrorCode::Simulation, "batched stimuli must have equal cycle counts");
    }
  }
  Simulator sim(netlist, library);
  for (std::size_t base = 0; base < stimuli.size(); base += Simulator::kMaxLanes) {
    const std::size_t lanes = std::min(Simulator::kMaxLanes, stimuli.size() - base);
    sim.reset();
    for (std::size_t l = 0; l < lanes; ++l) {
      Trace& t = traces[base + l];
      t.nets = probes;
      t.sampling = schedule ? "after phi2 closes" : "after clock edge";
      t.values.resize(cycles);
    }
    std::vector<std::uint64_t> in(expected_inputs.size());
    for (std::size_t c = 0; c < cycles; ++c) {
      std::fill(in.begin(), in.end(), 0);
      for (std::size_t l = 0; l < lanes; ++l) {
        const auto& vec = stimuli[base + l].vectors[c];
        for (std::size_t i = 0; i < in.size(); ++i) {
          if (vec[i]) in[i] |= std::uint64_t{1} << l;
        }
      }
      sim.set_inputs(in);
      if (schedule) {
        sim.step_two_phase(*schedule);
      } else {
        sim.step_ff();
      }
      for (std::size_t p = 0; p < probes.size(); ++p) {
        std::uint64_t word = sim.value(probes[p]);
        for (std::size_t l = 0; l < lanes; ++l) {
          auto& row = traces[base + l].values[c];
          if (row.size() != probes.size()) row.resize(probes.size());
          row[p] = (word >> l) & 1u;
        }
      }
    }
  }
  return traces;
}

}  // namespace

Trace simulate_ff(const Netlist& netlist, const CellLibrary& library, const Stimulus& stimulus,
                  const std::vector<std::string>& probes) {
  return run_batch(netlist, library, {stimulus}, nullptr, probes).front();
}

Trace simulate_two_phase(const Netlist& netlist, const CellLibrary& library,
                         const Stimulus& stimulus, const PhaseSchedule& schedule,
                         const std::vector<std::string>& probes) {
  return run_batch(netlist, library, {stimulus}, &schedule, probes).front();
}

std::vector<Trace> simulate_ff_batch(const Netlist& netlist, const CellLibrary& library,
                                     const std::vector<Stimulus>& stimuli,
                                     const std::vector<std::string>& probes) {
  return run_batch(netlist, library, stimuli, nullptr, probes);
}

std::vector<Trace> simulate_two_phase_batch(const Netlist& netlist, const CellLibrary& library,
                                            const std::vector<Stimulus>& stimuli,
                                            const PhaseSchedule& schedule,
                                            const std::vector<std::string>& probes) {
  return run_batch(netlist, library, stimuli, &schedule, probes);
}

}  // namespace twophase
