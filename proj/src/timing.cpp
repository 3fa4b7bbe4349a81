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

#include "twophase/timing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "twophase/error.hpp"
#include "twophase/verify.hpp"

namespace twophase {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr const char* kInputSource = "(input)";

}  // namespace

double ClockSpec::skew_of(const std::string& latch) const {
  auto it = skew.find(latch);
  return it == skew.end() ? 0.0 : it->second;
}

void ClockSpec::check() const {
  if (!(period > 0.0)) throw Error(ErrorCode::Timing, "clock period must be positive");
  if (!(duty > 0.0)) throw Error(ErrorCode::Timing, "duty cycle must be positive");
  if (!(phase2_offset > 0.0 && phase2_offset < 1.0)) {
    throw Error(ErrorCode::Timing, "phase-2 offset must lie strictly between 0 and 1");
  }
  if (duty > phase2_offset + kEps || duty > 1.0 - phase2_offset + kEps) {
    throw Error(ErrorCode::Timing, "clock windows overlap: duty " + std::to_string(duty) +
                                       " with phase-2 offset " + std::to_string(phase2_offset));
  }
}

double max_borrow(double period, double duty, double setup) { return duty * period - setup; }

double setup_slack(double close, double arrival, double setup, double skew) {
  return close - (arrival + setup + skew);
}

double hold_slack(double dq, double min_path, double separation, double width, double hold,
                  double skew, double period) {
  return (dq + min_path + separation) - (width + hold + skew - period);
}

// ---------------------------------------------------------------------------

namespace {

struct Model {
  std::vector<std::string> latch_names;  // sorted
  std::vector<Phase> phase;
  std::vector<const CellKind*> kind;
  std::vector<std::vector<FanIn>> fanin;
  std::unordered_map<std::string, std::size_t> id;
};

Model build_model(const Netlist& netlist, const CellLibrary& library, const ClockSpec& spec) {
  Connectivity conn(netlist, library);
  Model m;
  std::vector<std::size_t> latches;
  for (std::size_t i = 0; i < netlist.instances.size(); ++i) {
    const CellKind* k = conn.kind_of(i);
    if (k->is_dff()) {
      throw Error(ErrorCode::Timing, "timing analysis expects a latch design; found flip-flop " +
                                         netlist.instances[i].name);
    }
    if (k->is_latch()) latches.push_back(i);
  }
  std::sort(latches.begin(), latches.end(), [&](std::size_t a, std::size_t b) {
    return netlist.instances[a].name < netlist.instances[b].name;
  });
  for (std::size_t li = 0; li < latches.size(); ++li) {
    const Instance& inst = netlist.instances[latches[li]];
    m.id[inst.name] = li;
    m.latch_names.push_back(inst.name);
    m.kind.push_back(conn.kind_of(latches[li]));
    m.phase.push_back(clock_domain_of(netlist, library, inst.name, spec.clocks));
  }
  m.fanin.resize(latches.size());

  const auto order = topo_order_comb(netlist, library);
  auto propagate = [&](const std::string& source, const std::string& label) {
    std::unordered_map<std::string, std::pair<double, double>> dist;  // net -> (max, min)
    dist[source] = {0.0, 0.0};
    for (std::size_t c : order) {
      const Instance& gate = netlist.instances[c];
      const CellKind* k = conn.kind_of(c);
      double mx = -kInf, mn = kInf;
      for (const auto& in : k->inputs) {
        auto it = dist.find(gate.pins.at(in));
        if (it == dist.end()) continue;
        mx = std::max(mx, it->second.first);
        mn = std::min(mn, it->second.second);
      }
      if (mx == -kInf) continue;
      dist[gate.pins.at(k->output_pin())] = {mx + k->timing.delay_max, mn + k->timing.delay_min};
    }
    for (std::size_t li = 0; li < latches.size(); ++li) {
      const Instance& inst = netlist.instances[latches[li]];
      const std::string& d = inst.pins.at(m.kind[li]->pin_with_role(PinRole::Data)->name);
      auto it = dist.find(d);
      if (it != dist.end()) m.fanin[li].push_back({label, it->second.first, it->second.second});
    }
  };
  for (std::size_t li = 0; li < latches.size(); ++li) {
    const Instance& inst = netlist.instances[latches[li]];
    propagate(inst.pins.at(m.kind[li]->output_pin()), inst.name);
  }
  for (const auto& p : netlist.ports) {
    if (p.dir == PortDir::Input && p.kind == PortKind::Data) propagate(p.name, kInputSource);
  }
  return m;
}

}  // namespace

ArrivalResult compute_arrivals(const Netlist& netlist, const CellLibrary& library,
                               const ClockSpec& spec) {
  spec.check();
  Model m = build_model(netlist, library, spec);
  const std::size_t n = m.latch_names.size();
  ArrivalResult r;
  r.points.resize(n);
  std::vector<double> open(n), dep(n), arr(n);
  for (std::size_t i = 0; i < n; ++i) {
    open[i] = spec.open(m.phase[i]) + spec.skew_of(m.latch_names[i]);
    dep[i] = open[i] + m.kind[i]->timing.delay_max;
    arr[i] = -kInf;
  }
  auto arrival_of = [&](std::size_t i) {
    double a = -kInf;
    for (const auto& f : m.fanin[i]) {
      if (f.from == kInputSource) {
        a = std::max(a, f.max_delay);
        continue;
      }
      std::size_t j = m.id.at(f.from);
      double shift = spec.open(m.phase[i]) > spec.open(m.phase[j]) ? 0.0 : spec.period;
      a = std::max(a, dep[j] + f.max_delay - shift);
    }
    return a == -kInf ? open[i] : a;
  };
  const int max_sweeps = static_cast<int>(n) + 2;
  bool converged = false;
  std::vector<std::string> moving;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    moving.clear();
    for (std::size_t i = 0; i < n; ++i) {
      double a = arrival_of(i);
      if (!(std::fabs(a - arr[i]) <= kEps)) {
        arr[i] = a;
        moving.push_back(m.latch_names[i]);
      }
      dep[i] = std::max(arr[i], open[i]) + m.kind[i]->timing.delay_max;
    }
    if (moving.empty()) {
      converged = true;
      break;
    }
    ++r.iterations;
  }
  r.feasible = converged;
  if (!converged) r.looping = moving;
  for (std::size_t i = 0; i < n; ++i) {
    LatchTimingPoint& p = r.points[i];
    const double skew = spec.skew_of(m.latch_names[i]);
    const double setup = m.kind[i]->timing.setup;
    p.name = m.latch_names[i];
    p.phase = m.phase[i];
    p.arrival = arr[i];
    p.departure = dep[i];
    p.borrow = std::max(0.0, arr[i] - open[i]);
    p.max_borrow = max_borrow(spec.period, spec.duty, setup);
    p.setup_slack = setup_slack(spec.close(m.phase[i]), arr[i], setup, skew);
    p.fanin = m.fanin[i];
  }
  return r;
}

bool TimingReport::met() const {
  return feasible && worst_setup_slack >= -kEps && worst_hold_slack >= -kEps;
}

TimingReport analyze_timing(const Netlist& netlist, const CellLibrary& library,
                            const ClockSpec& spec) {
  ArrivalResult ar = compute_arrivals(netlist, library, spec);
  TimingReport rep;
  rep.spec = spec;
  rep.iterations = ar.iterations;
  rep.feasible = ar.feasible;
  rep.looping = ar.looping;
  rep.worst_setup_slack = kInf;
  rep.worst_hold_slack = kInf;
  std::unordered_map<std::string, const LatchTimingPoint*> by_name;
  for (const auto& p : ar.points) by_name[p.name] = &p;
  double skew_lo = kInf, skew_hi = -kInf;
  for (const auto& p : ar.points) {
    rep.worst_setup_slack = std::min(rep.worst_setup_slack, p.setup_slack);
    rep.max_tb = std::max(rep.max_tb, p.max_borrow);
    rep.act_tb = std::max(rep.act_tb, p.borrow);
    double s = spec.skew_of(p.name);
    skew_lo = std::min(skew_lo, s);
    skew_hi = std::max(skew_hi, s);
  }
  rep.skew_max = ar.points.empty() ? 0.0 : skew_hi - skew_lo;
  const CellLibrary& lib = library;
  for (const auto& p : ar.points) {
    const Instance* inst_i = netlist.instance(p.name);
    const TimingData& ti = lib.at(inst_i->kind).timing;
    for (const auto& f : p.fanin) {
      if (f.from == kInputSource) continue;
      const LatchTimingPoint& j = *by_name.at(f.from);
      const Instance* inst_j = netlist.instance(j.name);
      const double dq = spec.hold_uses_launch_dq ? lib.at(inst_j->kind).timing.d_to_q_min
                                                 : ti.d_to_q_min;
      double sep = spec.period;
      if (j.phase == Phase::Phi1 && p.phase == Phase::Phi2) sep = spec.phase2_offset * spec.period;
      if (j.phase == Phase::Phi2 && p.phase == Phase::Phi1) {
        sep = (1.0 - spec.phase2_offset) * spec.period;
      }
      const double skew = spec.skew_of(p.name) - spec.skew_of(j.name);
      double s = hold_slack(dq, f.min_delay, sep, spec.width(), ti.hold, skew, spec.period);
      rep.holds.push_back({j.name, p.name, s});
      rep.worst_hold_slack = std::min(rep.worst_hold_slack, s);
    }
  }
  rep.latches = std::move(ar.points);
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double denum(const nlohmann::json& j, double fallback) {
  return j.is_number() ? j.get<double>() : fallback;
}

}  // namespace

nlohmann::json TimingReport::to_json() const {
  nlohmann::json latches_json = nlohmann::json::array();
  for (const auto& p : latches) {
    latches_json.push_back({{"name", p.name},
                            {"phase", to_string(p.phase)},
                            {"arrival", num(p.arrival)},
                            {"departure", num(p.departure)},
                            {"borrow", num(p.borrow)},
                            {"max_borrow", num(p.max_borrow)},
                            {"setup_slack", num(p.setup_slack)}});
  }
  nlohmann::json holds_json = nlohmann::json::array();
  for (const auto& h : holds) {
    holds_json.push_back({{"from", h.from}, {"to", h.to}, {"slack", num(h.slack)}});
  }
  return {{"period", spec.period},
          {"duty", spec.duty},
          {"phase2_offset", spec.phase2_offset},
          {"max_tb", num(max_tb)},
          {"act_tb", num(act_tb)},
          {"worst_setup_slack", num(worst_setup_slack)},
          {"worst_hold_slack", num(worst_hold_slack)},
          {"skew_max", num(skew_max)},
          {"iterations", iterations},
          {"feasible", feasible},
          {"met", met()},
          {"looping", looping},
          {"latches", latches_json},
          {"hold_checks", holds_json}};
}

TimingReport TimingReport::from_json(const nlohmann::json& j) {
  TimingReport r;
  try {
    r.spec.period = j.at("period").get<double>();
    r.spec.duty = j.at("duty").get<double>();
    r.spec.phase2_offset = j.value("phase2_offset", 0.5);
    r.max_tb = denum(j.at("max_tb"), 0.0);
    r.act_tb = denum(j.at("act_tb"), 0.0);
    r.worst_setup_slack = denum(j.at("worst_setup_slack"), kInf);
    r.worst_hold_slack = denum(j.at("worst_hold_slack"), kInf);
    r.skew_max = denum(j.at("skew_max"), 0.0);
    r.iterations = j.at("iterations").get<int>();
    r.feasible = j.at("feasible").get<bool>();
    r.looping = j.value("looping", std::vector<std::string>{});
    for (const auto& l : j.at("latches")) {
      LatchTimingPoint p;
      p.name = l.at("name").get<std::string>();
      auto ph = phase_from_string(l.at("phase").get<std::string>());
      if (!ph) throw Error(ErrorCode::Parse, "bad phase for latch " + p.name);
      p.phase = *ph;
      p.arrival = denum(l.at("arrival"), -kInf);
      p.departure = denum(l.value("departure", nlohmann::json()), 0.0);
      p.borrow = denum(l.at("borrow"), 0.0);
      p.max_borrow = denum(l.value("max_borrow", nlohmann::json()), 0.0);
      p.setup_slack = denum(l.at("setup_slack"), -kInf);
      r.latches.push_back(std::move(p));
    }
    for (const auto& h : j.value("hold_checks", nlohmann::json::array())) {
      r.holds.push_back({h.at("from").get<std::string>(), h.at("to").get<std::string>(),
                         denum(h.at("slack"), -kInf)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed timing report: ") + e.what());
  }
  return r;
}

}  // namespace twophase
