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

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "twophase/error.hpp"
#include "twophase/retime.hpp"
#include "twophase/transform.hpp"
#include "twophase/verify.hpp"

namespace twophase {
namespace {

using namespace testing;

// Small random circuit graph: a host-to-host spine plus random edges, with
// at most three registers in total.
RetimeGraph random_graph(std::mt19937& rng) {
  RetimeGraph g;
  std::size_t n = 2 + rng() % 4;
  g.vertices.push_back({"(host)", 0.0, {}});
  for (std::size_t v = 1; v <= n; ++v) {
    g.vertices.push_back({"v" + std::to_string(v), static_cast<double>(1 + rng() % 5), {}});
  }
  int budget = 3;
  auto edge = [&](std::size_t t, std::size_t h) {
    RetimeGraph::Edge e;
    e.tail = t;
    e.head = h;
    e.source_net = "n" + std::to_string(t) + (rng() % 2 ? "a" : "");
    int w = budget > 0 ? static_cast<int>(rng() % 2) : 0;
    budget -= w;
    for (int k = 0; k < w; ++k) e.registers.push_back({"r" + std::to_string(g.edges.size()) + "_" + std::to_string(k), "", 0});
    g.edges.push_back(e);
  };
  for (std::size_t v = 0; v <= n; ++v) edge(v, v == n ? 0 : v + 1);
  std::size_t extra = rng() % 4;
  for (std::size_t k = 0; k < extra; ++k) edge(1 + rng() % n, 1 + rng() % n);
  return g;
}

TEST(RetimeGraphOracle, MinDelayMatchesExhaustiveSearch) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    RetimeGraph g = random_graph(rng);
    std::vector<int> zero(g.vertices.size(), 0);
    if (oracle_period(g, zero) == kNoPeriod) continue;
    double best = kNoPeriod;
    for_each_lag(g.vertices.size(), 3, [&](const std::vector<int>& l) {
      best = std::min(best, oracle_period(g, l));
    });
    MinDelayResult r = min_delay_retime(g);
    ASSERT_TRUE(is_legal(g, r.lags));
    EXPECT_NEAR(r.period, best, 1e-9) << "trial " << trial;
    EXPECT_NEAR(clock_period(g, r.lags), oracle_period(g, r.lags), 1e-9);
    EXPECT_NEAR(clock_period(g), oracle_period(g, zero), 1e-9);
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

TEST(RetimeGraphOracle, MinAreaIsLegalAndNeverWorse) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    RetimeGraph g = random_graph(rng);
    std::vector<int> zero(g.vertices.size(), 0);
    if (oracle_period(g, zero) == kNoPeriod) continue;
    int best = std::numeric_limits<int>::max();
    for_each_lag(g.vertices.size(), 3, [&](const std::vector<int>& l) {
      if (oracle_period(g, l) != kNoPeriod) best = std::min(best, oracle_shared(g, l));
    });
    auto lags = min_area_retime(g);
    ASSERT_TRUE(is_legal(g, lags));
    EXPECT_EQ(shared_register_count(g, lags), oracle_shared(g, lags));
    EXPECT_LE(oracle_shared(g, lags), oracle_shared(g, zero));
    EXPECT_GE(oracle_shared(g, lags), best);
    MinAreaOptions capped;
    capped.max_period = clock_period(g);
    auto c = min_area_retime(g, capped);
    EXPECT_LE(clock_period(g, c), clock_period(g) + 1e-9);
  }
}

TEST(RetimeGraph, WeightsAndLegality) {
  RetimeGraph g = build_retime_graph(testing::load_fixture("gate_chain", testing::ideal_library()),
                                     testing::ideal_library());
  EXPECT_EQ(g.register_count(), 1u);
  std::vector<int> zero(g.vertices.size(), 0);
  auto w = retimed_weights(g, zero);
  for (std::size_t k = 0; k < g.edges.size(); ++k) EXPECT_EQ(w[k], g.edges[k].weight());
  std::vector<int> bad = zero;
  bad[1] = -5;
  EXPECT_FALSE(is_legal(g, bad));
}

TEST(Retime, ChainPeriodHalves) {
  const auto& lib = testing::ideal_library();
  Netlist n = testing::load_fixture("gate_chain", lib);
  RetimeGraph g = build_retime_graph(n, lib);
  EXPECT_DOUBLE_EQ(clock_period(g), 20.0);
  MinDelayResult r = min_delay_retime(g);
  EXPECT_DOUBLE_EQ(r.period, 10.0);
  Netlist moved = apply_retiming(n, lib, g, r.lags);
  EXPECT_DOUBLE_EQ(clock_period(build_retime_graph(moved, lib)), 10.0);
  EquivOptions o;
  o.cycles = 64;
  o.seeds = 4;
  o.warmup = 1;
  EXPECT_TRUE(check_ff_equivalence(n, moved, lib, o).equivalent);
  try {
    min_delay_retime(g, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Retime);
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos) << e.what();
  }
}

TEST(Retime, MergeSavesRegister) {
  const auto& lib = testing::ideal_library();
  Netlist n = testing::load_fixture("fanin_merge", lib);
  RetimeGraph g = build_retime_graph(n, lib);
  EXPECT_EQ(shared_register_count(g, std::vector<int>(g.vertices.size(), 0)), 2);
  auto lags = min_area_retime(g);
  EXPECT_EQ(shared_register_count(g, lags), 1);
  Netlist moved = apply_retiming(n, lib, g, lags);
  EXPECT_EQ(count_cells(moved, lib).sequential, 1u);
  EXPECT_TRUE(validate(moved, lib).empty());
  EquivOptions o;
  o.cycles = 64;
  o.seeds = 4;
  o.warmup = 1;
  EXPECT_TRUE(check_ff_equivalence(n, moved, lib, o).equivalent);
}

TEST(Retime, AppliedLagsPreserveBehaviour) {
  for (const auto& name : {"lfsr", "gcd_fsm"}) {
    const auto& lib = default_library();
    Netlist n = testing::load_fixture(name, lib);
    RetimeGraph g = build_retime_graph(n, lib);
    for (const auto& lags : {min_delay_retime(g).lags, min_area_retime(g)}) {
      Netlist moved = apply_retiming(n, lib, g, lags);
      EXPECT_TRUE(validate(moved, lib).empty()) << name;
      EquivOptions o;
      o.cycles = 128;
      o.seeds = 4;
      o.warmup = 0;
      for (int l : lags) o.warmup = std::max<std::size_t>(o.warmup, std::abs(l));
      EXPECT_TRUE(check_ff_equivalence(n, moved, lib, o).equivalent) << name;
    }
  }
}

TEST(Retime, ForwardMoveComputesInitialValue) {
  Netlist n = parse(R"(
module fw (clk, a, b, y);
  input clk, a, b;
  output y;
  wire qa, qb;
  (* init = 1 *)
  _DFF_P_ ra (.C(clk), .D(a), .Q(qa));
  (* init = 1 *)
  _DFF_P_ rb (.C(clk), .D(b), .Q(qb));
  NAND2 g (.A(qa), .B(qb), .Y(y));
endmodule
)");
  const auto& lib = default_library();
  RetimeGraph g = build_retime_graph(n, lib);
  auto lags = min_area_retime(g);
  Netlist moved = apply_retiming(n, lib, g, lags);
  ASSERT_EQ(count_cells(moved, lib).sequential, 1u);
  for (const auto& i : moved.instances) {
    if (lib.at(i.kind).is_sequential()) { EXPECT_EQ(i.init, 0); }
  }
  EquivOptions o;
  o.cycles = 32;
  o.seeds = 4;
  EXPECT_TRUE(check_ff_equivalence(n, moved, lib, o).equivalent);
}

TEST(Retime, BackwardMoveJustifiesOrRejects) {
  const auto& lib = default_library();
  auto design = [&](int init) {
    return parse(R"(
module bw (clk, a, b, y);
  input clk, a, b;
  output y;
  wire w;
  AND2 g (.A(a), .B(b), .Y(w));
  (* init = )" + std::to_string(init) + R"( *)
  _DFF_P_ r (.C(clk), .D(w), .Q(y));
endmodule
)");
  };
  for (int init : {0, 1}) {
    Netlist n = design(init);
    RetimeGraph g = build_retime_graph(n, lib);
    std::vector<int> lags(g.vertices.size(), 0);
    for (std::size_t v = 1; v < g.vertices.size(); ++v) {
      if (g.vertices[v].name == "g") lags[v] = 1;
    }
    Netlist moved = apply_retiming(n, lib, g, lags);
    EXPECT_EQ(count_cells(moved, lib).sequential, 2u);
    EquivOptions o;
    o.cycles = 32;
    o.seeds = 4;
    EXPECT_TRUE(check_ff_equivalence(n, moved, lib, o).equivalent) << init;
  }
  Netlist n = parse(R"(
module bw (clk, a, y, z);
  input clk, a;
  output y, z;
  wire w;
  INV g (.A(a), .Y(w));
  _DFF_P_ r (.C(clk), .D(w), .Q(y));
  (* init = 1 *)
  _DFF_P_ s (.C(clk), .D(w), .Q(z));
endmodule
)");
  RetimeGraph g = build_retime_graph(n, lib);
  std::vector<int> lags(g.vertices.size(), 0);
  for (std::size_t v = 1; v < g.vertices.size(); ++v) {
    if (g.vertices[v].name == "g") lags[v] = 1;
  }
  ASSERT_TRUE(is_legal(g, lags));
  try {
    apply_retiming(n, lib, g, lags);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Retime);
    EXPECT_NE(std::string(e.what()).find("g"), std::string::npos);
  }
}

TEST(Retime, RejectsRegisterOnlyLoop) {
  Netlist n = parse(R"(
module rl (clk, y);
  input clk;
  output y;
  wire a;
  _DFF_P_ r1 (.C(clk), .D(y), .Q(a));
  _DFF_P_ r2 (.C(clk), .D(a), .Q(y));
endmodule
)");
  EXPECT_THROW(build_retime_graph(n, default_library()), Error);
}

TEST(AssignPhases, AlternatesAlongPaths) {
  const auto& lib = default_library();
  Netlist n = testing::load_fixture("lfsr", lib);
  TransformPlan plan;
  Netlist d = init_clock_ports(n, lib, plan);
  TransformTrace trace = duplicate_ffs_recirc(d, lib, plan);
  PhaseMap p = assign_phases(d, lib, trace.phases());
  EXPECT_EQ(p, trace.phases());
  for (const auto& [name, phase] : p) {
    if (name.ends_with("__phi1")) { EXPECT_EQ(phase, Phase::Phi1) << name; }
    if (name.ends_with("__phi2")) { EXPECT_EQ(phase, Phase::Phi2) << name; }
  }
}

TEST(AssignPhases, RejectsOddParity) {
  Netlist n = parse(R"(
module odd (clk, y);
  input clk;
  output y;
  wire a, b, c;
  INV i (.A(c), .Y(a));
  _DFF_P_ r1 (.C(clk), .D(a), .Q(b));
  _DFF_P_ r2 (.C(clk), .D(b), .Q(y));
  _DFF_P_ r3 (.C(clk), .D(y), .Q(c));
endmodule
)");
  try {
    assign_phases(n, default_library());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Retime);
    EXPECT_NE(std::string(e.what()).find("odd register parity"), std::string::npos);
  }
}

}  // namespace
}  // namespace twophase
