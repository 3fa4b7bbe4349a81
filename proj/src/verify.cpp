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

#include "twophase/verify.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "twophase/error.hpp"

namespace twophase {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::SameColorEdge: return "same-color-edge";
    case ViolationKind::UncolorableClock: return "uncolorable-clock";
    case ViolationKind::MixedCone: return "mixed-cone";
  }
  return "?";
}

namespace {

struct ClockReach {
  bool phi1 = false;
  bool phi2 = false;
};

std::size_t index_of(const Netlist& n, const std::string& name) {
  for (std::size_t i = 0; i < n.instances.size(); ++i) {
    if (n.instances[i].name == name) return i;
  }
  throw Error(ErrorCode::Verify, "no instance named " + name);
}

ClockReach reach_clocks(const Connectivity& conn, std::size_t inst, const ClockNames& clocks,
                        std::vector<Diagnostic>* warnings) {
  const Netlist& n = conn.netlist();
  const CellKind* k = conn.kind_of(inst);
  const PinDef* cp = k->pin_with_role(PinRole::Clock);
  ClockReach r;
  if (!cp) return r;
  std::unordered_set<std::string> seen;
  std::vector<std::string> stack{n.instances[inst].pins.at(cp->name)};
  while (!stack.empty()) {
    std::string net = stack.back();
    stack.pop_back();
    if (!seen.insert(net).second) continue;
    if (net == clocks.phi1) r.phi1 = true;
    if (net == clocks.phi2) r.phi2 = true;
    auto drv = conn.driver_instance(net);
    if (!drv) continue;
    const CellKind* dk = conn.kind_of(*drv);
    if (dk->is_sequential()) continue;
    if (warnings && dk->inputs.size() == 1 && dk->truth == std::vector<std::uint8_t>{1, 0}) {
      warnings->push_back({Severity::Warning, n.instances[*drv].name,
                           "inverter on the clock path of " + n.instances[inst].name +
                               " (negative-enable latches are not supported)"});
    }
    for (const auto& in : dk->inputs) stack.push_back(n.instances[*drv].pins.at(in));
  }
  return r;
}

}  // namespace

Phase clock_domain_of(const Netlist& netlist, const CellLibrary& library,
                      const std::string& instance, const ClockNames& clocks,
                      std::vector<Diagnostic>* warnings) {
  Connectivity conn(netlist, library);
  std::size_t i = index_of(netlist, instance);
  if (!conn.kind_of(i)->is_sequential()) {
    throw Error(ErrorCode::Verify, instance + " is not a sequential cell");
  }
  ClockReach r = reach_clocks(conn, i, clocks, warnings);
  if (r.phi1 == r.phi2) {
    throw Error(ErrorCode::Verify, "unresolvable clock domain for " + instance + ": clock " +
                                       (r.phi1 ? "reaches both phase clocks"
                                               : "reaches neither phase clock"));
  }
  return r.phi1 ? Phase::Phi1 : Phase::Phi2;
}

std::pair<LatchGraph, std::vector<Violation>> build_latch_graph(const Netlist& netlist,
                                                                const CellLibrary& library,
                                                                const ClockNames& clocks) {
  Connectivity conn(netlist, library);
  LatchGraph g;
  std::vector<Violation> violations;
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < netlist.instances.size(); ++i) {
    if (conn.kind_of(i)->is_sequential()) seq.push_back(i);
  }
  std::sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
    return netlist.instances[a].name < netlist.instances[b].name;
  });
  for (std::size_t i : seq) {
    const std::string& name = netlist.instances[i].name;
    g.nodes.push_back(name);
    ClockReach r = reach_clocks(conn, i, clocks, &g.warnings);
    if (r.phi1 != r.phi2) {
      g.color[name] = r.phi1 ? Phase::Phi1 : Phase::Phi2;
    } else {
      Violation v;
      v.kind = r.phi1 ? ViolationKind::MixedCone : ViolationKind::UncolorableClock;
      v.from = name;
      v.message = r.phi1 ? "clock cone of " + name + " reaches both phase clocks"
                         : "unresolvable clock domain: clock of " + name +
                               " reaches neither phase clock";
      violations.push_back(std::move(v));
    }
  }

  for (std::size_t u : seq) {
    const Instance& src = netlist.instances[u];
    const std::string root = src.pins.at(conn.kind_of(u)->output_pin());
    std::unordered_map<std::string, std::string> parent;  // visited nets
    std::set<std::string> reached;
    std::vector<LatchEdge> found;
    std::deque<std::string> queue{root};
    parent[root] = "";
    while (!queue.empty()) {
      std::string net = queue.front();
      queue.pop_front();
      const auto* info = conn.net(net);
      if (!info) continue;
      for (const auto& s : info->sinks) {
        const CellKind* k = conn.kind_of(s.inst);
        const Instance& sink = netlist.instances[s.inst];
        if (k->is_sequential()) {
          if (!reached.insert(sink.name).second) continue;
          LatchEdge e;
          e.from = src.name;
          e.to = sink.name;
          e.pin = s.pin;
          for (std::string at = net; !at.empty(); at = parent[at]) e.path.push_back(at);
          std::reverse(e.path.begin(), e.path.end());
          found.push_back(std::move(e));
          continue;
        }
        const std::string& out = sink.pins.at(k->output_pin());
        if (parent.count(out)) continue;
        parent[out] = net;
        queue.push_back(out);
      }
    }
    std::sort(found.begin(), found.end(),
              [](const LatchEdge& a, const LatchEdge& b) { return a.to < b.to; });
    for (auto& e : found) {
      auto cu = g.color.find(e.from), cv = g.color.find(e.to);
      if (cu != g.color.end() && cv != g.color.end() && cu->second == cv->second) {
        violations.push_back({ViolationKind::SameColorEdge, e.from, e.to, e.path,
                              "two-color violation at (" + e.from + ", " + e.to + "): both " +
                                  to_string(cu->second)});
      }
      g.edges.push_back(std::move(e));
    }
  }
  return {std::move(g), std::move(violations)};
}

std::vector<Violation> check_two_color(const LatchGraph& graph) {
  std::vector<Violation> out;
  for (const auto& e : graph.edges) {
    auto cu = graph.color.find(e.from), cv = graph.color.find(e.to);
    if (cu == graph.color.end() || cv == graph.color.end()) continue;
    if (cu->second == cv->second) {
      out.push_back({ViolationKind::SameColorEdge, e.from, e.to, e.path,
                     "two-color violation at (" + e.from + ", " + e.to + "): both " +
                         to_string(cu->second)});
    }
  }
  return out;
}

bool witness_is_valid(const Netlist& netlist, const CellLibrary& library, const LatchEdge& edge) {
  const Instance* from = netlist.instance(edge.from);
  const Instance* to = netlist.instance(edge.to);
  if (!from || !to || edge.path.empty()) return false;
  const CellKind& fk = library.at(from->kind);
  if (!fk.is_sequential() || !library.at(to->kind).is_sequential()) return false;
  if (edge.path.front() != from->pins.at(fk.output_pin())) return false;
  Connectivity conn(netlist, library);
  for (std::size_t k = 1; k < edge.path.size(); ++k) {
    auto drv = conn.driver_instance(edge.path[k]);
    if (!drv) return false;
    const CellKind* dk = conn.kind_of(*drv);
    if (dk->is_sequential()) return false;
    const Instance& d = netlist.instances[*drv];
    bool fed = std::any_of(dk->inputs.begin(), dk->inputs.end(),
                           [&](const std::string& in) { return d.pins.at(in) == edge.path[k - 1]; });
    if (!fed) return false;
  }
  auto it = to->pins.find(edge.pin);
  return it != to->pins.end() && it->second == edge.path.back();
}

// ---------------------------------------------------------------------------
// Equivalence

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

EquivVerdict compare(const Netlist& a, const Netlist& b, const CellLibrary& library,
                     const EquivOptions& options, bool b_two_phase) {
  const auto in_a = data_inputs(a), in_b = data_inputs(b);
  const auto out_a = data_outputs(a), out_b = data_outputs(b);
  if (sorted(in_a) != sorted(in_b) || sorted(out_a) != sorted(out_b)) {
    throw Error(ErrorCode::Verify, "port mismatch between " + a.name + " and " + b.name);
  }
  std::vector<Stimulus> sa, sb;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < in_a.size(); ++i) pos[in_a[i]] = i;
  for (std::size_t s = 0; s < options.seeds; ++s) {
    Stimulus st = random_stimulus(a, options.cycles, options.base_seed + s);
    Stimulus tb;
    tb.inputs = in_b;
    tb.seed = st.seed;
    tb.vectors.resize(st.cycles());
    for (std::size_t c = 0; c < st.cycles(); ++c) {
      for (const auto& name : in_b) tb.vectors[c].push_back(st.vectors[c][pos[name]]);
    }
    sa.push_back(std::move(st));
    sb.push_back(std::move(tb));
  }
  auto ta = simulate_ff_batch(a, library, sa, out_a);
  auto tb = b_two_phase ? simulate_two_phase_batch(b, library, sb, options.schedule, out_a)
                        : simulate_ff_batch(b, library, sb, out_a);
  EquivVerdict v;
  v.cycles = options.cycles;
  v.seeds = options.seeds;
  v.warmup = options.warmup;
  for (std::size_t c = options.warmup; c < options.cycles && v.equivalent; ++c) {
    for (std::size_t s = 0; s < options.seeds && v.equivalent; ++s) {
      for (std::size_t p = 0; p < out_a.size(); ++p) {
        if (ta[s].values[c][p] != tb[s].values[c][p]) {
          v.equivalent = false;
          v.divergence = Divergence{sa[s].seed, c, out_a[p], ta[s].values[c][p], tb[s].values[c][p]};
          break;
        }
      }
    }
  }
  return v;
}

}  // namespace

EquivVerdict check_equivalence(const Netlist& original, const Netlist& transformed,
                               const CellLibrary& library, const EquivOptions& options) {
  return compare(original, transformed, library, options, true);
}

EquivVerdict check_ff_equivalence(const Netlist& a, const Netlist& b, const CellLibrary& library,
                                  const EquivOptions& options) {
  return compare(a, b, library, options, false);
}

nlohmann::json violations_to_json(const std::vector<Violation>& violations) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : violations) {
    arr.push_back({{"kind", to_string(v.kind)},
                   {"from", v.from},
                   {"to", v.to},
                   {"path", v.path},
                   {"message", v.message}});
  }
  return arr;
}

nlohmann::json verdict_to_json(const EquivVerdict& verdict) {
  nlohmann::json j{{"equivalent", verdict.equivalent},
                   {"cycles", verdict.cycles},
                   {"seeds", verdict.seeds},
                   {"warmup", verdict.warmup}};
  if (verdict.divergence) {
    const auto& d = *verdict.divergence;
    j["divergence"] = {{"seed", d.seed},
                       {"cycle", d.cycle},
                       {"port", d.port},
                       {"expected", d.expected},
                       {"got", d.got}};
  }
  return j;
}

}  // namespace twophase
