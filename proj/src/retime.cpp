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

#include "twophase/retime.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "twophase/error.hpp"
#include "twophase/transform.hpp"

namespace twophase {

namespace {

constexpr double kEps = 1e-9;

std::string format_ns(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool is_clock_port_net(const Netlist& n, const std::string& net) {
  const Port* p = n.port(net);
  return p && p->kind == PortKind::Clock;
}

// The clock port feeding the most _DFF_P_ clock pins.
std::string dominant_clock(const Netlist& n) {
  std::map<std::string, int> counts;
  for (const auto& inst : n.instances) {
    if (inst.kind != cells::kDff) continue;
    const std::string& c = inst.pins.at("C");
    if (is_clock_port_net(n, c)) ++counts[c];
  }
  std::string best;
  int best_count = 0;
  for (const auto& [c, k] : counts) {
    if (k > best_count) {
      best = c;
      best_count = k;
    }
  }
  return best;
}

}  // namespace

std::size_t RetimeGraph::register_count() const {
  std::set<std::string> names;
  for (const auto& e : edges) {
    for (const auto& r : e.registers) names.insert(r.name);
  }
  return names.size();
}

// ---------------------------------------------------------------------------
// Graph construction

RetimeGraph build_retime_graph(const Netlist& netlist, const CellLibrary& library) {
  RetimeGraph g;
  g.clock = dominant_clock(netlist);
  Connectivity conn(netlist, library);
  const std::size_t n_inst = netlist.instances.size();

  std::vector<bool> retimable(n_inst, false);
  std::vector<std::optional<std::size_t>> vertex_of(n_inst);
  g.vertices.push_back({"(host)", 0.0, std::nullopt});
  for (std::size_t i = 0; i < n_inst; ++i) {
    const Instance& inst = netlist.instances[i];
    const CellKind* k = conn.kind_of(i);
    if (k->is_sequential()) {
      if (inst.kind == cells::kDff && !g.clock.empty() && inst.pins.at("C") == g.clock) {
        const auto* q = conn.net(inst.pins.at("Q"));
        retimable[i] = q && (!q->sinks.empty() || !q->output_ports.empty());
      }
    } else if (!is_clock_gate(conn, i)) {
      vertex_of[i] = g.vertices.size();
      g.vertices.push_back({inst.name, k->timing.delay_max, i});
    }
  }

  struct Frame {
    std::string net;
    std::vector<RetimeGraph::Register> regs;
  };
  auto trace_from = [&](std::size_t tail, const std::string& source) {
    std::vector<Frame> stack{{source, {}}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      const auto* info = conn.net(f.net);
      if (!info) continue;
      for (const auto& s : info->sinks) {
        const Instance& inst = netlist.instances[s.inst];
        const CellKind* k = conn.kind_of(s.inst);
        if (retimable[s.inst]) {
          if (k->pin(s.pin)->role != PinRole::Data) continue;
          if (std::any_of(f.regs.begin(), f.regs.end(),
                          [&](const auto& r) { return r.name == inst.name; })) {
            throw Error(ErrorCode::Retime,
                        "register loop without combinational logic through " + inst.name);
          }
          Frame next{inst.pins.at("Q"), f.regs};
          next.regs.push_back({inst.name, inst.pins.at("Q"), inst.init});
          stack.push_back(std::move(next));
          continue;
        }
        RetimeGraph::Edge e;
        e.tail = tail;
        e.source_net = source;
        e.sink_inst = inst.name;
        e.sink_pin = s.pin;
        e.registers = f.regs;
        if (vertex_of[s.inst]) {
          e.head = *vertex_of[s.inst];
        } else {
          if (k->is_sequential() && k->pin(s.pin)->role == PinRole::Clock &&
              f.regs.empty()) {
            continue;
          }
          e.head = RetimeGraph::kHost;
        }
        g.edges.push_back(std::move(e));
      }
      for (const auto& port : info->output_ports) {
        RetimeGraph::Edge e;
        e.tail = tail;
        e.head = RetimeGraph::kHost;
        e.source_net = source;
        e.sink_port = port;
        e.registers = f.regs;
        g.edges.push_back(std::move(e));
      }
    }
  };

  for (const auto& p : netlist.ports) {
    if (p.dir == PortDir::Input && p.kind == PortKind::Data) trace_from(RetimeGraph::kHost, p.name);
  }
  for (const auto& c : {netlist.const_zero, netlist.const_one}) {
    if (netlist.nets.count(c)) trace_from(RetimeGraph::kHost, c);
  }
  for (std::size_t i = 0; i < n_inst; ++i) {
    const CellKind* k = conn.kind_of(i);
    const Instance& inst = netlist.instances[i];
    if (vertex_of[i]) {
      trace_from(*vertex_of[i], inst.pins.at(k->output_pin()));
    } else if (k->is_sequential() && !retimable[i]) {
      trace_from(RetimeGraph::kHost, inst.pins.at(k->output_pin()));
    }
  }
  std::set<std::string> reached;
  for (const auto& e : g.edges) {
    for (const auto& r : e.registers) reached.insert(r.name);
  }
  for (std::size_t i = 0; i < n_inst; ++i) {
    const std::string& name = netlist.instances[i].name;
    if (retimable[i] && !reached.count(name)) {
      throw Error(ErrorCode::Retime, "register loop without combinational logic through " + name);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Weights and periods

std::vector<int> retimed_weights(const RetimeGraph& g, const std::vector<int>& lags) {
  std::vector<int> w;
  w.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    int r = e.weight();
    if (!lags.empty()) r += lags[e.head] - lags[e.tail];
    w.push_back(r);
  }
  return w;
}

bool is_legal(const RetimeGraph& g, const std::vector<int>& lags) {
  if (!lags.empty() && (lags.size() != g.vertices.size() || lags[RetimeGraph::kHost] != 0)) {
    return false;
  }
  for (int w : retimed_weights(g, lags)) {
    if (w < 0) return false;
  }
  return true;
}

namespace {

double period_for_weights(const RetimeGraph& g, const std::vector<int>& w) {
  const std::size_t nv = g.vertices.size();
  std::vector<std::vector<std::size_t>> succ(nv);
  std::vector<int> indeg(nv, 0);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    if (w[k] != 0 || e.tail == RetimeGraph::kHost || e.head == RetimeGraph::kHost) continue;
    succ[e.tail].push_back(e.head);
    ++indeg[e.head];
  }
  std::vector<double> arrival(nv, 0.0);
  for (std::size_t v = 1; v < nv; ++v) arrival[v] = g.vertices[v].delay;
  std::vector<std::size_t> ready;
  for (std::size_t v = 1; v < nv; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t u = ready.back();
    ready.pop_back();
    ++done;
    for (std::size_t v : succ[u]) {
      arrival[v] = std::max(arrival[v], arrival[u] + g.vertices[v].delay);
      if (--indeg[v] == 0) ready.push_back(v);
    }
  }
  if (done + 1 < nv) {
    throw Error(ErrorCode::Retime, "register-free cycle in retimed graph");
  }
  double period = 0.0;
  for (std::size_t v = 1; v < nv; ++v) period = std::max(period, arrival[v]);
  return period;
}

}  // namespace

double clock_period(const RetimeGraph& g, const std::vector<int>& lags) {
  return period_for_weights(g, retimed_weights(g, lags));
}

int shared_register_count(const RetimeGraph& g, const std::vector<int>& lags) {
  std::map<std::pair<std::size_t, std::string>, int> by_driver;
  auto w = retimed_weights(g, lags);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    auto& m = by_driver[{g.edges[k].tail, g.edges[k].source_net}];
    m = std::max(m, w[k]);
  }
  int total = 0;
  for (const auto& [_, m] : by_driver) total += m;
  return total;
}

// ---------------------------------------------------------------------------
// Minimum-delay retiming

namespace {

// All-pairs W (minimum register count) and D (maximum delay among
// minimum-weight paths) with the host split into source 0 and sink n.
struct WD {
  std::size_t n = 0;  // matrix size
  std::vector<long long> W;
  std::vector<double> D;
  static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
};

WD compute_wd(const RetimeGraph& g) {
  WD wd;
  const std::size_t nv = g.vertices.size();
  const std::size_t n = nv + 1;
  const std::size_t sink = nv;
  wd.n = n;
  auto delay = [&](std::size_t v) { return v == 0 || v == sink ? 0.0 : g.vertices[v].delay; };
  // Lexicographic pair (weight, -delay excluding the final vertex).
  std::vector<long long> w(n * n, WD::kInf);
  std::vector<double> s(n * n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    w[v * n + v] = 0;
    s[v * n + v] = 0.0;
  }
  for (const auto& e : g.edges) {
    std::size_t u = e.tail;
    std::size_t v = e.head == RetimeGraph::kHost ? sink : e.head;
    long long ew = e.weight();
    double es = -delay(u);
    std::size_t idx = u * n + v;
    if (u == v) continue;
    if (ew < w[idx] || (ew == w[idx] && es < s[idx])) {
      w[idx] = ew;
      s[idx] = es;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i * n + k] >= WD::kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (w[k * n + j] >= WD::kInf) continue;
        long long nw = w[i * n + k] + w[k * n + j];
        double ns = s[i * n + k] + s[k * n + j];
        std::size_t idx = i * n + j;
        if (nw < w[idx] || (nw == w[idx] && ns < s[idx] - kEps)) {
          w[idx] = nw;
          s[idx] = ns;
        }
      }
    }
  }
  wd.W = std::move(w);
  wd.D.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (wd.W[i * n + j] < WD::kInf) wd.D[i * n + j] = delay(j) - s[i * n + j];
    }
  }
  return wd;
}

// Lags (indexed like g.vertices) achieving period <= c, if any.
std::optional<std::vector<int>> feasible_lags(const RetimeGraph& g, const WD& wd, double c) {
  const std::size_t n = wd.n;
  const std::size_t sink = n - 1;
  struct C {
    std::size_t from, to;
    long long b;
  };
  // Constraint r(u) - r(v) <= b becomes edge v -> u with weight b.
  std::vector<C> cons;
  for (const auto& e : g.edges) {
    std::size_t u = e.tail;
    std::size_t v = e.head == RetimeGraph::kHost ? sink : e.head;
    cons.push_back({v, u, e.weight()});
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      long long W = wd.W[u * n + v];
      if (W >= WD::kInf) continue;
      if (wd.D[u * n + v] > c + kEps) cons.push_back({v, u, W - 1});
    }
  }
  cons.push_back({0, sink, 0});
  cons.push_back({sink, 0, 0});
  std::vector<long long> dist(n, 0);
  for (std::size_t iter = 0; iter <= n; ++iter) {
    bool changed = false;
    for (const auto& k : cons) {
      if (dist[k.from] + k.b < dist[k.to]) {
        dist[k.to] = dist[k.from] + k.b;
        changed = true;
      }
    }
    if (!changed) {
      std::vector<int> lags(g.vertices.size());
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        lags[v] = static_cast<int>(dist[v] - dist[0]);
      }
      return lags;
    }
  }
  return std::nullopt;
}

}  // namespace

MinDelayResult min_delay_retime(const RetimeGraph& g, std::optional<double> target) {
  WD wd = compute_wd(g);
  if (target) {
    if (auto lags = feasible_lags(g, wd, *target)) {
      return {*lags, clock_period(g, *lags)};
    }
  }
  std::vector<double> candidates;
  for (std::size_t i = 0; i < wd.W.size(); ++i) {
    if (wd.W[i] < WD::kInf) candidates.push_back(wd.D[i]);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double a, double b) { return std::fabs(a - b) <= kEps; }),
                   candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  std::vector<int> best = *feasible_lags(g, wd, candidates[hi]);
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (auto lags = feasible_lags(g, wd, candidates[mid])) {
      best = *lags;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo < candidates.size()) {
    if (auto lags = feasible_lags(g, wd, candidates[lo])) best = *lags;
  }
  double period = clock_period(g, best);
  if (target) {
    throw Error(ErrorCode::Retime, "target period " + format_ns(*target) +
                                       " ns is infeasible; minimum achievable period is " +
                                       format_ns(period) + " ns");
  }
  return {best, period};
}

// ---------------------------------------------------------------------------
// Minimum-area retiming

std::vector<int> min_area_retime(const RetimeGraph& g, const MinAreaOptions& options) {
  const std::size_t nv = g.vertices.size();
  std::vector<int> lags = options.start.empty() ? std::vector<int>(nv, 0) : options.start;
  if (!is_legal(g, lags)) throw Error(ErrorCode::Retime, "starting lags are not legal");
  std::vector<std::vector<std::size_t>> in(nv), out(nv);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    out[g.edges[k].tail].push_back(k);
    in[g.edges[k].head].push_back(k);
  }
  auto plain = [&](const std::vector<int>& l) {
    int t = 0;
    for (int w : retimed_weights(g, l)) t += w;
    return t;
  };
  int shared = shared_register_count(g, lags);
  int total = plain(lags);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t v = 1; v < nv; ++v) {
      for (int dir : {-1, +1}) {
        if (dir > 0 && !options.allow_backward) continue;
        const auto& must = dir < 0 ? in[v] : out[v];
        if (must.empty()) continue;
        auto w = retimed_weights(g, lags);
        bool ok = std::all_of(must.begin(), must.end(), [&](std::size_t k) { return w[k] >= 1; });
        if (!ok) continue;
        std::vector<int> cand = lags;
        cand[v] += dir;
        int s2 = shared_register_count(g, cand);
        int t2 = plain(cand);
        if (s2 > shared || t2 > total || (s2 == shared && t2 == total)) continue;
        if (s2 == shared && clock_period(g, cand) > clock_period(g, lags) + kEps) continue;
        if (options.max_period && clock_period(g, cand) > *options.max_period + kEps) continue;
        lags = std::move(cand);
        shared = s2;
        total = t2;
        improved = true;
      }
    }
  }
  return lags;
}

// ---------------------------------------------------------------------------
// Applying lags

Netlist apply_retiming(const Netlist& netlist, const CellLibrary& library, const RetimeGraph& g,
                       const std::vector<int>& lags) {
  if (!is_legal(g, lags)) throw Error(ErrorCode::Retime, "lags are not a legal retiming");
  if (std::all_of(lags.begin(), lags.end(), [](int r) { return r == 0; })) return netlist;

  const std::size_t nv = g.vertices.size();
  std::vector<std::deque<int>> inits(g.edges.size());
  std::vector<std::vector<std::size_t>> in(nv), out(nv);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    for (const auto& r : g.edges[k].registers) inits[k].push_back(r.init);
    out[g.edges[k].tail].push_back(k);
    in[g.edges[k].head].push_back(k);
  }

  // Decompose into unit moves that keep every weight non-negative.
  std::vector<int> cur(nv, 0);
  while (true) {
    int lo = 0, hi = 0;
    for (std::size_t v = 1; v < nv; ++v) {
      lo = std::min(lo, lags[v] - cur[v]);
      hi = std::max(hi, lags[v] - cur[v]);
    }
    if (lo == 0 && hi == 0) break;
    const bool forward = lo < 0;
    const int want = forward ? lo : hi;
    std::optional<std::size_t> pick;
    for (std::size_t v = 1; v < nv && !pick; ++v) {
      if (lags[v] - cur[v] != want) continue;
      const auto& must = forward ? in[v] : out[v];
      if (std::all_of(must.begin(), must.end(), [&](std::size_t k) { return !inits[k].empty(); })) {
        pick = v;
      }
    }
    if (!pick) throw Error(ErrorCode::Retime, "lags cannot be decomposed into legal moves");
    const std::size_t v = *pick;
    const Instance& inst = netlist.instances[*g.vertices[v].inst];
    const CellKind& k = library.at(inst.kind);
    std::map<std::string, std::size_t> input_index;
    for (std::size_t b = 0; b < k.inputs.size(); ++b) input_index[k.inputs[b]] = b;
    if (forward) {
      std::uint32_t bits = 0;
      for (std::size_t e : in[v]) {
        int val = inits[e].back();
        inits[e].pop_back();
        if (val) bits |= 1u << input_index.at(g.edges[e].sink_pin);
      }
      int y = k.eval(bits);
      for (std::size_t e : out[v]) inits[e].push_front(y);
      cur[v] -= 1;
    } else {
      std::optional<int> y;
      for (std::size_t e : out[v]) {
        int val = inits[e].front();
        if (y && *y != val) {
          throw Error(ErrorCode::Retime, "cannot justify initial state across " + inst.name +
                                             ": its output registers disagree");
        }
        y = val;
      }
      for (std::size_t e : out[v]) inits[e].pop_front();
      std::optional<std::uint32_t> found;
      for (std::uint32_t bits = 0; bits < (1u << k.inputs.size()); ++bits) {
        if (k.eval(bits) == *y) {
          found = bits;
          break;
        }
      }
      if (!found) {
        throw Error(ErrorCode::Retime, "cannot justify initial state across " + inst.name +
                                           ": no input assignment produces " +
                                           std::to_string(*y));
      }
      for (std::size_t e : in[v]) {
        inits[e].push_back((*found >> input_index.at(g.edges[e].sink_pin)) & 1u);
      }
      cur[v] += 1;
    }
  }

  // Rebuild the registers, sharing chains per driver net.
  Netlist result = netlist;
  std::set<std::string> removed;
  std::map<std::pair<std::string, std::vector<int>>, const RetimeGraph::Register*> original;
  for (const auto& e : g.edges) {
    std::vector<int> prefix;
    for (const auto& r : e.registers) {
      removed.insert(r.name);
      prefix.push_back(r.init);
      original.try_emplace({e.source_net, prefix}, &r);
    }
  }
  result.instances.erase(std::remove_if(result.instances.begin(), result.instances.end(),
                                        [&](const Instance& i) { return removed.count(i.name); }),
                         result.instances.end());
  std::set<std::string> taken = used_names(netlist);
  std::set<std::string> reused;

  struct Node {
    std::string net;
    std::string reg;  // empty for the root
    bool fresh_q = true;
    std::map<int, std::size_t> child;
    std::vector<std::string> ports;  // output ports tapped here
  };
  std::map<std::string, std::vector<std::size_t>> by_source;
  for (std::size_t k = 0; k < g.edges.size(); ++k) by_source[g.edges[k].source_net].push_back(k);

  std::vector<std::pair<std::string, std::string>> renames;
  std::vector<Instance> buffers;
  std::set<std::string> claimed_ports;
  for (const auto& [source, edge_ids] : by_source) {
    std::vector<Node> nodes(1);
    nodes[0].net = source;
    std::vector<std::size_t> leaf(g.edges.size());
    // First pass: shape of the trie and the ports each node feeds.
    for (std::size_t k : edge_ids) {
      std::size_t at = 0;
      for (int val : inits[k]) {
        auto it = nodes[at].child.find(val);
        if (it == nodes[at].child.end()) {
          nodes.push_back(Node{});
          nodes[at].child[val] = nodes.size() - 1;
          at = nodes.size() - 1;
        } else {
          at = it->second;
        }
      }
      leaf[k] = at;
      if (!g.edges[k].sink_port.empty()) nodes[at].ports.push_back(g.edges[k].sink_port);
    }
    // A registered tap of the output port that names the source net needs the
    // driver moved onto a fresh net.
    const Port* sp = netlist.port(source);
    if (sp && sp->dir == PortDir::Output &&
        std::any_of(edge_ids.begin(), edge_ids.end(), [&](std::size_t k) {
          return g.edges[k].sink_port == source && leaf[k] != 0;
        })) {
      std::string fresh = unique_name(source + "__rt_d", taken);
      for (auto& i : result.instances) {
        auto it = i.pins.find(library.at(i.kind).output_pin());
        if (it != i.pins.end() && it->second == source) it->second = fresh;
      }
      nodes[0].net = fresh;
    }
    // Second pass: name the registers.
    std::vector<std::pair<std::size_t, std::vector<int>>> todo{{0, {}}};
    while (!todo.empty()) {
      auto [at, prefix] = todo.back();
      todo.pop_back();
      for (const auto& [val, c] : nodes[at].child) {
        std::vector<int> p = prefix;
        p.push_back(val);
        Node& node = nodes[c];
        auto it = original.find({source, p});
        if (it != original.end() && !reused.count(it->second->name)) {
          const auto* reg = it->second;
          reused.insert(reg->name);
          node.reg = reg->name;
          const Port* qp = netlist.port(reg->q_net);
          bool port_ok = !qp || std::find(node.ports.begin(), node.ports.end(), reg->q_net) !=
                                    node.ports.end();
          if (port_ok) {
            node.net = reg->q_net;
            node.fresh_q = false;
          }
        } else {
          node.reg = unique_name(source + "__rt", taken);
        }
        if (node.net.empty()) node.net = unique_name(node.reg + "_q", taken);
        Instance r;
        r.name = node.reg;
        r.kind = std::string(cells::kDff);
        r.pins = {{"D", nodes[at].net}, {"C", g.clock}, {"Q", node.net}};
        r.init = val;
        result.instances.push_back(std::move(r));
        todo.push_back({c, p});
      }
    }
    // Connect sinks.
    for (std::size_t k : edge_ids) {
      const auto& e = g.edges[k];
      Node& node = nodes[leaf[k]];
      if (!e.sink_inst.empty()) {
        result.instance(e.sink_inst)->pins[e.sink_pin] = node.net;
        continue;
      }
      if (node.net == e.sink_port) {
        claimed_ports.insert(e.sink_port);
        continue;
      }
      bool renamable = !netlist.port(node.net) && !netlist.is_constant(node.net) &&
                       !claimed_ports.count(node.net) &&
                       std::none_of(renames.begin(), renames.end(),
                                    [&](const auto& rn) { return rn.first == node.net; });
      if (renamable) {
        renames.emplace_back(node.net, e.sink_port);
        claimed_ports.insert(e.sink_port);
      } else {
        Instance b;
        b.name = unique_name("$retime_buf_" + e.sink_port, taken);
        b.kind = std::string(cells::kBuf);
        const CellKind& bk = library.at(cells::kBuf);
        b.pins = {{bk.inputs.front(), node.net}, {bk.output_pin(), e.sink_port}};
        buffers.push_back(std::move(b));
        claimed_ports.insert(e.sink_port);
      }
    }
  }
  for (auto& b : buffers) result.instances.push_back(std::move(b));
  for (const auto& [from, to] : renames) result.rename_net(from, to);

  result.nets.clear();
  for (const auto& p : result.ports) result.nets.insert(p.name);
  for (const auto& i : result.instances) {
    for (const auto& [pin, net] : i.pins) result.nets.insert(net);
  }
  result.sort_instances();
  return result;
}

// ---------------------------------------------------------------------------
// Phase assignment

PhaseMap assign_phases(const Netlist& netlist, const CellLibrary& library, const PhaseMap& hints) {
  Connectivity conn(netlist, library);
  const std::size_t n_inst = netlist.instances.size();
  // Node ids: sequential instances, then the input and output pseudo-nodes.
  std::vector<std::size_t> seq;
  std::map<std::size_t, std::size_t> node_of;
  for (std::size_t i = 0; i < n_inst; ++i) {
    if (conn.kind_of(i)->is_sequential()) {
      node_of[i] = seq.size();
      seq.push_back(i);
    }
  }
  const std::size_t kIn = seq.size(), kOut = seq.size() + 1, n_nodes = seq.size() + 2;
  auto node_name = [&](std::size_t v) -> std::string {
    if (v == kIn) return "(inputs)";
    if (v == kOut) return "(outputs)";
    return netlist.instances[seq[v]].name;
  };
  std::vector<std::set<std::size_t>> adj(n_nodes);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };

  // Sources (sequential nodes or kIn) reaching `net` through combinational logic.
  auto sources_of = [&](const std::string& start) {
    std::set<std::size_t> found;
    std::set<std::string> seen;
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
      std::string net = stack.back();
      stack.pop_back();
      if (!seen.insert(net).second) continue;
      const auto* info = conn.net(net);
      if (!info) continue;
      using DK = Connectivity::NetInfo::DriverKind;
      if (info->driver_kind == DK::Port) {
        if (!is_clock_port_net(netlist, net)) found.insert(kIn);
      } else if (info->driver_kind == DK::Instance) {
        std::size_t d = info->driver.inst;
        const CellKind* k = conn.kind_of(d);
        if (k->is_sequential()) {
          found.insert(node_of.at(d));
        } else {
          for (const auto& in : k->inputs) stack.push_back(netlist.instances[d].pins.at(in));
        }
      }
    }
    return found;
  };

  for (std::size_t v = 0; v < seq.size(); ++v) {
    const Instance& inst = netlist.instances[seq[v]];
    const CellKind* k = conn.kind_of(seq[v]);
    for (const auto& pd : k->pins) {
      if (pd.dir != PinDir::In) continue;
      const std::string& net = inst.pins.at(pd.name);
      if (pd.role == PinRole::Clock) {
        // Gated clock: the gate's data inputs belong to this register's cone.
        auto drv = conn.driver_instance(net);
        if (!drv || conn.kind_of(*drv)->is_sequential()) continue;
        for (const auto& in : conn.kind_of(*drv)->inputs) {
          const std::string& gn = netlist.instances[*drv].pins.at(in);
          if (is_clock_port_net(netlist, gn)) continue;
          for (std::size_t s : sources_of(gn)) link(v, s);
        }
        continue;
      }
      for (std::size_t s : sources_of(net)) link(v, s);
    }
  }
  for (const auto& p : netlist.ports) {
    if (p.dir != PortDir::Output) continue;
    for (std::size_t s : sources_of(p.name)) {
      if (s != kIn) link(kOut, s);
    }
  }

  std::vector<int> color(n_nodes, -1);  // 0 = phi1, 1 = phi2
  std::vector<std::size_t> parent(n_nodes);
  auto witness = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> pa{a}, pb{b};
    while (parent[pa.back()] != pa.back()) pa.push_back(parent[pa.back()]);
    while (parent[pb.back()] != pb.back()) pb.push_back(parent[pb.back()]);
    std::string s;
    for (auto it = pa.rbegin(); it != pa.rend(); ++it) s += node_name(*it) + " -> ";
    for (std::size_t i = 0; i < pb.size(); ++i) s += node_name(pb[i]) + (i + 1 < pb.size() ? " -> " : "");
    return s;
  };
  auto bfs = [&](std::vector<std::size_t> roots) {
    std::vector<std::size_t> members;
    std::queue<std::size_t> q;
    for (std::size_t r : roots) {
      parent[r] = r;
      q.push(r);
      members.push_back(r);
    }
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          parent[v] = u;
          q.push(v);
          members.push_back(v);
        } else if (color[v] == color[u]) {
          throw Error(ErrorCode::Retime, "odd register parity: " + node_name(u) + " and " +
                                             node_name(v) + " would share a phase (" +
                                             witness(u, v) + ")");
        }
      }
    }
    return members;
  };

  color[kIn] = 1;
  color[kOut] = 0;
  bfs({kIn, kOut});
  for (std::size_t v = 0; v < seq.size(); ++v) {
    if (color[v] >= 0) continue;
    color[v] = 0;
    auto members = bfs({v});
    int agree = 0, disagree = 0;
    for (std::size_t m : members) {
      auto it = hints.find(node_name(m));
      if (it == hints.end()) continue;
      ((it->second == Phase::Phi2) == (color[m] == 1) ? agree : disagree)++;
    }
    if (disagree > agree) {
      for (std::size_t m : members) color[m] = 1 - color[m];
    }
  }
  PhaseMap out;
  for (std::size_t v = 0; v < seq.size(); ++v) {
    out[node_name(v)] = color[v] == 0 ? Phase::Phi1 : Phase::Phi2;
  }
  return out;
}

}  // namespace twophase
