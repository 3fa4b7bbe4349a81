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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "twophase/error.hpp"
#include "twophase/pipeline.hpp"
#include "twophase/retime.hpp"
#include "twophase/timing.hpp"
#include "twophase/transform.hpp"
#include "twophase/verify.hpp"

namespace twophase {
namespace {

using testing::ideal_library;
using testing::load_fixture;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EquivOptions long_run(std::size_t warmup = 0) {
  EquivOptions o;
  o.cycles = 1000;
  o.seeds = 16;
  o.warmup = warmup;
  return o;
}

ClockSpec spec_at(double period, double duty = 0.49) {
  ClockSpec s;
  s.period = period;
  s.duty = duty;
  return s;
}

void time_borrowing(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& lib = ideal_library();
  TimingReport fast = analyze_timing(load_fixture("borrow_ring", lib), lib, spec_at(10.0));
  TimingReport slow = analyze_timing(load_fixture("borrow_ring_slow", lib), lib, spec_at(10.0));
  double t = seconds_since(t0);
  o.detail << "act_tb=" << fast.act_tb << " ns (want 2.0 +/- 1e-6), worst setup slack="
           << fast.worst_setup_slack << ", 12 ns stage feasible=" << slow.feasible << ", " << t
           << " s";
  o.require(std::fabs(fast.act_tb - 2.0) <= 1e-6, "borrow");
  o.require(fast.feasible && fast.worst_setup_slack >= 0.0, "setup met");
  o.require(!slow.feasible, "12 ns stage infeasible");
  o.require(t < 1.0, "runtime < 1 s");
}

void min_delay_chain(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& lib = ideal_library();
  Netlist n = load_fixture("gate_chain", lib);
  RetimeGraph g = build_retime_graph(n, lib);
  double before = clock_period(g);
  MinDelayResult r = min_delay_retime(g);
  Netlist moved = apply_retiming(n, lib, g, r.lags);
  double after = clock_period(build_retime_graph(moved, lib));
  int warmup = 0;
  for (int l : r.lags) warmup = std::max(warmup, std::abs(l));
  bool eq = check_ff_equivalence(n, moved, lib, long_run(warmup)).equivalent;
  double t = seconds_since(t0);
  o.detail << "period " << before << " -> " << after << " ns (want 20 -> 10 exactly), equivalent="
           << eq << " over 1000 cycles x 16 seeds, " << t << " s";
  o.require(before == 20.0 && after == 10.0 && r.period == 10.0, "period");
  o.require(eq, "equivalence");
  o.require(t < 1.0, "runtime < 1 s");
}

void min_area_merge(Outcome& o) {
  const auto& lib = ideal_library();
  Netlist n = load_fixture("fanin_merge", lib);
  RetimeGraph g = build_retime_graph(n, lib);
  auto lags = min_area_retime(g);
  Netlist moved = apply_retiming(n, lib, g, lags);
  std::size_t before = count_cells(n, lib).sequential;
  std::size_t after = count_cells(moved, lib).sequential;
  bool eq_ff = check_ff_equivalence(n, moved, lib, long_run(1)).equivalent;

  PipelineConfig c;
  c.retime = RetimeMode::MinArea;
  ConvertResult r = run_convert(n, lib, c);
  bool eq = check_equivalence(n, r.netlist, lib, long_run(r.warmup)).equivalent;
  auto [graph, violations] = build_latch_graph(r.netlist, lib);
  o.detail << "registers " << before << " -> " << after << " (flip-flop level), "
           << r.registers_before << " -> " << r.registers_after
           << " (duplicated), phases assigned, two-color violations=" << violations.size()
           << ", equivalent=" << (eq && eq_ff);
  o.require(after < before && r.registers_after < r.registers_before, "strict reduction");
  o.require(violations.empty(), "two-coloring");
  o.require(eq && eq_ff, "equivalence");
}

struct Converted {
  const testing::Fixture* fixture;
  Variant variant;
  Netlist netlist;
};

std::vector<Converted> converted_fixtures() {
  std::vector<Converted> out;
  for (const auto& f : testing::ff_fixtures()) {
    for (Variant v : {Variant::RecircMux, Variant::ClockGated}) {
      if (f.async_controls && v == Variant::ClockGated) continue;
      out.push_back({&f, v, testing::convert(load_fixture(f), *f.library, v)});
    }
  }
  return out;
}

void two_coloring(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t designs = 0, clean = 0, mutants = 0, caught = 0;
  for (const auto& c : converted_fixtures()) {
    const auto& lib = *c.fixture->library;
    ++designs;
    auto [graph, violations] = build_latch_graph(c.netlist, lib);
    clean += violations.empty() && check_two_color(graph).empty();
    for (const auto& inst : c.netlist.instances) {
      if (!lib.at(inst.kind).is_latch()) continue;
      Netlist m = c.netlist;
      testing::flip_phase(m, lib, inst.name);
      auto [mg, mv] = build_latch_graph(m, lib);
      bool witnessed = false;
      for (const auto& v : mv) {
        if (v.kind != ViolationKind::SameColorEdge) continue;
        for (const auto& e : mg.edges) {
          if (e.from == v.from && e.to == v.to && e.path == v.path) {
            witnessed = witnessed || witness_is_valid(m, lib, e);
          }
        }
      }
      ++mutants;
      caught += !mv.empty() && witnessed;
    }
  }
  double t = seconds_since(t0);
  o.detail << clean << "/" << designs << " converted designs clean, " << caught << "/" << mutants
           << " phase-flip mutants caught with a valid witness, " << t << " s";
  o.require(designs >= 10 && clean == designs, "clean designs");
  o.require(mutants >= 20 && caught == mutants, "mutants");
  o.require(t < 10.0, "runtime < 10 s");
}

void end_to_end(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t runs = 0, equivalent = 0;
  std::string first_failure;
  for (const auto& f : testing::ff_fixtures()) {
    for (Variant v : {Variant::RecircMux, Variant::ClockGated}) {
      if (f.async_controls && v == Variant::ClockGated) continue;
      for (RetimeMode m : {RetimeMode::Off, RetimeMode::MinDelay, RetimeMode::MinArea,
                           RetimeMode::Both}) {
        ++runs;
        PipelineConfig c;
        c.variant = v;
        c.retime = m;
        Netlist in = load_fixture(f);
        try {
          ConvertResult r = run_convert(in, *f.library, c);
          if (check_equivalence(in, r.netlist, *f.library, long_run(r.warmup)).equivalent) {
            ++equivalent;
            continue;
          }
        } catch (const std::exception& e) {
          if (first_failure.empty()) first_failure = e.what();
        }
        if (first_failure.empty()) {
          first_failure = f.name + " " + to_string(v) + " " + to_string(m);
        }
      }
    }
  }

  // Inverted data input on every latch except the unobservable Phi2 recirculation latch.
  const auto& lib = default_library();
  std::size_t faults = 0, detected = 0;
  for (const char* name : {"counter_en", "gcd_fsm", "lfsr", "sync_reset"}) {
    Netlist orig = load_fixture(name, lib);
    for (Variant v : {Variant::RecircMux, Variant::ClockGated}) {
      Netlist t = testing::convert(orig, lib, v);
      for (const auto& inst : t.instances) {
        if (!lib.at(inst.kind).is_latch() || inst.name.find("__recirc_phi2") != std::string::npos) {
          continue;
        }
        Netlist m = t;
        std::string d = m.instance(inst.name)->pins.at("D");
        std::set<std::string> taken = m.nets;
        std::string net = unique_name("fault_n", taken);
        m.nets.insert(net);
        m.instance(inst.name)->pins["D"] = net;
        m.instances.push_back({unique_name("fault_inv", taken), "INV", {{"A", d}, {"Y", net}}});
        m.sort_instances();
        ++faults;
        detected += !check_equivalence(orig, m, lib, long_run()).equivalent;
      }
    }
  }
  double t = seconds_since(t0);
  o.detail << equivalent << "/" << runs << " fixture x variant x retime runs equivalent over 1000 cycles x 16 seeds, "
           << detected << "/" << faults << " wiring faults detected, " << t << " s";
  if (!first_failure.empty()) o.detail << " (first failure: " << first_failure << ")";
  o.require(runs > 0 && equivalent == runs, "equivalence");
  o.require(faults >= 10 && detected == faults, "faults");
  o.require(t < 60.0, "runtime < 60 s");
}

std::string single_ff(const std::string& kind, const std::string& pin) {
  std::string ctl = pin.empty() ? "" : ", ." + pin + "(c)";
  return "module one (clk, d, c, q);\n  input clk, d, c;\n  output q;\n  " + kind +
         " f (.C(clk), .D(d), .Q(q)" + ctl + ");\n  BUF keep (.A(c), .Y(unused));\n  wire unused;\nendmodule\n";
}

void structural_counts(Outcome& o) {
  const auto& lib = default_library();
  auto seq = [&](const Netlist& n, Variant v) {
    return count_cells(testing::convert(n, lib, v), lib).sequential;
  };
  Netlist en = load_fixture("counter_en", lib);
  std::size_t cg = seq(en, Variant::ClockGated), rm = seq(en, Variant::RecircMux);
  Netlist dff = testing::parse(single_ff("_DFF_P_", ""));
  Netlist dffe = testing::parse(single_ff("_DFFE_PP_", "E"));
  std::size_t plain = seq(dff, Variant::RecircMux), plain_cg = seq(dff, Variant::ClockGated);
  std::size_t e_cg = seq(dffe, Variant::ClockGated), e_rm = seq(dffe, Variant::RecircMux);
  o.detail << "all-enable counter: clock-gated " << cg << " vs recirc-mux " << rm << " (ratio "
           << static_cast<double>(cg) / static_cast<double>(rm) << ", want <= 0.75); per flop: DFF "
           << plain << "/" << plain_cg << ", enable flop clock-gated " << e_cg << ", recirc-mux " << e_rm
           << " (want 2/2, 3, 5)";
  o.require(4 * cg <= 3 * rm, "ratio");
  o.require(plain == 2 && plain_cg == 2 && e_cg == 3 && e_rm == 5, "per-flop counts");
}

void monotonicity(Outcome& o) {
  std::mt19937 rng(2026);
  const CellLibrary& lib = testing::delay_library();
  std::size_t netlists = 0, setup_bad = 0, hold_bad = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Netlist n = testing::random_latch_netlist(rng, trial % 3 == 0);
    ++netlists;
    double prev = -testing::kNoPeriod;
    for (double t = 2.0; t <= 30.0; t += 0.5) {
      TimingReport r = analyze_timing(n, lib, spec_at(t));
      double s = r.feasible ? r.worst_setup_slack : -testing::kNoPeriod;
      setup_bad += s < prev - 1e-9;
      prev = s;
    }
    std::vector<double> last;
    for (double duty = 0.49; duty >= 0.05; duty -= 0.04) {
      TimingReport r = analyze_timing(n, lib, spec_at(10.0, duty));
      for (std::size_t k = 0; k < r.holds.size() && !last.empty(); ++k) {
        hold_bad += r.holds[k].slack < last[k] - 1e-9;
      }
      last.clear();
      for (const auto& h : r.holds) last.push_back(h.slack);
    }
  }
  o.detail << netlists << " random latch netlists: " << setup_bad
           << " setup-vs-period counterexamples, " << hold_bad << " hold-vs-duty counterexamples";
  o.require(netlists >= 100 && setup_bad == 0 && hold_bad == 0, "monotonicity");
}

void max_borrow_formula(Outcome& o) {
  double base = max_borrow(6.4, 0.49, 0.0);
  double lo = max_borrow(6.4, 0.49, 0.06), hi = max_borrow(6.4, 0.49, 0.04);
  bool bracket = true;
  for (double s = 0.04; s <= 0.06 + 1e-12; s += 0.001) {
    double mb = max_borrow(6.4, 0.49, s);
    bracket = bracket && mb >= 3.076 - 1e-9 && mb <= 3.096 + 1e-9;
  }
  o.detail << "max_borrow(6.4, 0.49, 0)=" << base << " ns (want 3.136 +/- 1e-9), setup in [0.04, 0.06] gives ["
           << lo << ", " << hi << "] (want within [3.076, 3.096], brackets 3.08)";
  o.require(std::fabs(base - 3.136) <= 1e-9, "formula");
  o.require(bracket && lo <= 3.08 && hi >= 3.08, "bracket");
}

void small_oracles(Outcome& o) {
  std::size_t graphs = 0, graph_ok = 0;
  auto check_graph = [&](const RetimeGraph& g) {
    if (g.vertices.size() > 6) return;
    int bound = 0;
    for (const auto& e : g.edges) bound += e.weight();
    double best = testing::kNoPeriod;
    testing::for_each_lag(g.vertices.size(), bound, [&](const std::vector<int>& l) {
      best = std::min(best, testing::oracle_period(g, l));
    });
    ++graphs;
    MinDelayResult r = min_delay_retime(g);
    graph_ok += is_legal(g, r.lags) && std::fabs(r.period - best) <= 1e-9;
  };
  std::size_t designs = 0, edge_ok = 0;
  for (const auto& f : testing::ff_fixtures()) {
    Netlist n = load_fixture(f);
    check_graph(build_retime_graph(n, *f.library));
    TransformPlan plan;
    Netlist d = init_clock_ports(n, *f.library, plan);
    duplicate_ffs_recirc(d, *f.library, plan);
    check_graph(build_retime_graph(d, *f.library));
  }
  for (const auto& c : converted_fixtures()) {
    const auto& lib = *c.fixture->library;
    if (count_cells(c.netlist, lib).sequential > 20) continue;
    auto [graph, violations] = build_latch_graph(c.netlist, lib);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& e : graph.edges) got.insert({e.from, e.to});
    ++designs;
    edge_ok += got == testing::oracle_edges(c.netlist, lib);
  }
  o.detail << graph_ok << "/" << graphs << " retiming graphs (<= 6 vertices) match exhaustive lag search, "
           << edge_ok << "/" << designs << " latch graphs (<= 20 latches) match path search";
  o.require(graphs >= 3 && graph_ok == graphs, "retiming oracle");
  o.require(designs >= 5 && edge_ok == designs, "latch-graph oracle");
}

}  // namespace
}  // namespace twophase

int main() {
  using namespace twophase;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"time borrowing on the two-stage ring", time_borrowing},
      {"min-delay retiming of the two-gate chain", min_delay_chain},
      {"min-area retiming of the fan-in merge", min_area_merge},
      {"two-coloring of fixtures and phase-flip mutants", two_coloring},
      {"end-to-end equivalence and fault detection", end_to_end},
      {"structural counts", structural_counts},
      {"setup and hold monotonicity", monotonicity},
      {"max time borrow formula", max_borrow_formula},
      {"oracle agreement on small instances", small_oracles},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("%s  %zu  %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.str().c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
