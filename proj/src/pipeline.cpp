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

#include "twophase/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "twophase/error.hpp"
#include "twophase/retime.hpp"

namespace twophase {

const char* to_string(RetimeMode m) {
  switch (m) {
    case RetimeMode::Off: return "off";
    case RetimeMode::MinDelay: return "min-delay";
    case RetimeMode::MinArea: return "min-area";
    case RetimeMode::Both: return "both";
  }
  return "?";
}

RetimeMode retime_mode_from_string(const std::string& s) {
  for (RetimeMode m : {RetimeMode::Off, RetimeMode::MinDelay, RetimeMode::MinArea,
                       RetimeMode::Both}) {
    if (s == to_string(m)) return m;
  }
  throw Error(ErrorCode::Usage,
              "unknown retime mode '" + s + "' (expected off, min-delay, min-area or both)");
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  return from_json(j, PipelineConfig());
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j, PipelineConfig c) {
  static const std::set<std::string> known{"variant", "retime", "period", "duty", "phase2_offset",
                                           "clk1", "clk2", "cycles", "seeds", "seed", "skew",
                                           "hold_uses_launch_dq"};
  if (!j.is_object()) throw Error(ErrorCode::Usage, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.count(key)) throw Error(ErrorCode::Usage, "unknown config key '" + key + "'");
    }
    if (j.contains("variant")) c.variant = variant_from_string(j["variant"].get<std::string>());
    if (j.contains("retime")) c.retime = retime_mode_from_string(j["retime"].get<std::string>());
    if (j.contains("period")) {
      if (j["period"].is_null()) c.period.reset();
      else c.period = j["period"].get<double>();
    }
    if (j.contains("duty")) c.duty = j["duty"].get<double>();
    if (j.contains("phase2_offset")) c.phase2_offset = j["phase2_offset"].get<double>();
    if (j.contains("clk1")) c.clocks.phi1 = j["clk1"].get<std::string>();
    if (j.contains("clk2")) c.clocks.phi2 = j["clk2"].get<std::string>();
    if (j.contains("cycles")) c.cycles = j["cycles"].get<std::size_t>();
    if (j.contains("seeds")) c.seeds = j["seeds"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("skew")) c.skew = j["skew"].get<std::map<std::string, double>>();
    if (j.contains("hold_uses_launch_dq")) c.hold_uses_launch_dq = j["hold_uses_launch_dq"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Usage, std::string("bad config value: ") + e.what());
  }
  if (c.period && !(*c.period > 0.0)) throw Error(ErrorCode::Usage, "period must be positive");
  if (c.clocks.phi1 == c.clocks.phi2) throw Error(ErrorCode::Usage, "clock names must differ");
  return c;
}

nlohmann::json PipelineConfig::to_json() const {
  nlohmann::json j{{"variant", twophase::to_string(variant)},
                   {"retime", twophase::to_string(retime)},
                   {"duty", duty},
                   {"phase2_offset", phase2_offset},
                   {"clk1", clocks.phi1},
                   {"clk2", clocks.phi2},
                   {"cycles", cycles},
                   {"seeds", seeds},
                   {"seed", seed},
                   {"skew", skew},
                   {"hold_uses_launch_dq", hold_uses_launch_dq}};
  j["period"] = period ? nlohmann::json(*period) : nlohmann::json(nullptr);
  return j;
}

ClockSpec PipelineConfig::clock_spec() const {
  ClockSpec s;
  if (period) s.period = *period;
  s.duty = duty;
  s.phase2_offset = phase2_offset;
  s.skew = skew;
  s.hold_uses_launch_dq = hold_uses_launch_dq;
  s.clocks = clocks;
  return s;
}

EquivOptions PipelineConfig::equiv_options(std::size_t warmup) const {
  EquivOptions o;
  o.cycles = cycles;
  o.seeds = seeds;
  o.base_seed = seed;
  o.warmup = warmup;
  o.schedule.clocks = clocks;
  return o;
}

nlohmann::json ConvertResult::stage_log_json() const {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : log) {
    nlohmann::json e{{"stage", s.stage},
                     {"sequential", s.counts.sequential},
                     {"combinational", s.counts.combinational},
                     {"total", s.counts.total()}};
    if (!s.note.empty()) e["note"] = s.note;
    stages.push_back(std::move(e));
  }
  nlohmann::json j{{"stages", stages}, {"warmup", warmup}};
  if (period_before) j["period_before"] = *period_before;
  if (period_after) j["period_after"] = *period_after;
  if (period_before) {
    j["registers_before"] = registers_before;
    j["registers_after"] = registers_after;
  }
  if (retime_check) j["retime_equivalence"] = verdict_to_json(*retime_check);
  return j;
}

nlohmann::json ConvertResult::lags_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, r] : lags) j[v] = r;
  return j;
}

namespace {

std::vector<int> choose_lags(const RetimeGraph& g, const PipelineConfig& config,
                             bool allow_backward) {
  switch (config.retime) {
    case RetimeMode::Off: return std::vector<int>(g.vertices.size(), 0);
    case RetimeMode::MinDelay: return min_delay_retime(g, config.period).lags;
    case RetimeMode::MinArea: {
      MinAreaOptions o;
      o.allow_backward = allow_backward;
      o.max_period = config.period;
      return min_area_retime(g, o);
    }
    case RetimeMode::Both: {
      MinDelayResult md = min_delay_retime(g, config.period);
      MinAreaOptions o;
      o.allow_backward = allow_backward;
      o.max_period = md.period;
      o.start = md.lags;
      return min_area_retime(g, o);
    }
  }
  return {};
}

}  // namespace

ConvertResult run_convert(const Netlist& original, const CellLibrary& library,
                          const PipelineConfig& config) {
  ConvertResult res;
  auto record = [&](const char* stage, const Netlist& n, std::string note = {}) {
    res.log.push_back({stage, count_cells(n, library), std::move(note)});
  };
  record("input", original);

  TransformPlan plan;
  plan.variant = config.variant;
  plan.clocks = config.clocks;
  Netlist n = init_clock_ports(original, library, plan);
  record("init_clock_ports", n, "clock " + plan.original_clock + " renamed to " + plan.clocks.phi1);

  if (config.variant == Variant::RecircMux) {
    res.trace = duplicate_ffs_recirc(n, library, plan);
    record("duplicate_ffs_recirc", n);
  } else {
    res.trace = transform_clock_gated(n, library, plan);
    record("transform_clock_gated", n);
  }

  if (config.retime != RetimeMode::Off) {
    RetimeGraph g = build_retime_graph(n, library);
    res.period_before = clock_period(g);
    res.registers_before = g.register_count();
    std::vector<int> lags = choose_lags(g, config, true);
    Netlist retimed;
    try {
      retimed = apply_retiming(n, library, g, lags);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Retime || config.retime == RetimeMode::MinDelay) throw;
      lags = choose_lags(g, config, false);
      retimed = apply_retiming(n, library, g, lags);
    }
    int max_lag = 0;
    for (std::size_t v = 1; v < lags.size(); ++v) {
      if (lags[v] != 0) res.lags[g.vertices[v].name] = lags[v];
      max_lag = std::max(max_lag, std::abs(lags[v]));
    }
    res.warmup = static_cast<std::size_t>(max_lag);
    res.period_after = clock_period(g, lags);
    res.registers_after = build_retime_graph(retimed, library).register_count();
    res.retime_check = check_ff_equivalence(n, retimed, library, config.equiv_options(res.warmup));
    if (!res.retime_check->equivalent) {
      const auto& d = *res.retime_check->divergence;
      throw Error(ErrorCode::Retime, "retimed design is not equivalent: port " + d.port +
                                         " differs at cycle " + std::to_string(d.cycle) +
                                         " (seed " + std::to_string(d.seed) + ")");
    }
    n = std::move(retimed);
    record("retime", n, std::string(to_string(config.retime)));
  }

  PhaseMap phases = assign_phases(n, library, res.trace.phases());
  res.trace.reconcile(n, library, phases);
  record("assign_phases", n);

  if (config.variant == Variant::RecircMux) {
    transform_recirc(n, library, res.trace);
    record("transform_recirc", n);
  }

  map_dff_to_latch(n, library, res.trace.phases(), config.clocks);
  record("map_dff_to_latch", n);
  res.netlist = std::move(n);
  return res;
}

}  // namespace twophase
