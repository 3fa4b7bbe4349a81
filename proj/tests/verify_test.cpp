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

#include <functional>
#include <set>
#include <string>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "twophase/error.hpp"
#include "twophase/transform.hpp"
#include "twophase/verify.hpp"

namespace twophase {
namespace {

using namespace testing;

struct Converted {
  const testing::Fixture* fixture;
  Variant variant;
  Netlist original;
  Netlist netlist;
};

std::vector<Converted> all_converted() {
  std::vector<Converted> out;
  for (const auto& f : testing::ff_fixtures()) {
    for (Variant v : {Variant::RecircMux, Variant::ClockGated}) {
      if (f.async_controls && v == Variant::ClockGated) continue;
      Netlist orig = testing::load_fixture(f);
      out.push_back({&f, v, orig, testing::convert(orig, *f.library, v)});
    }
  }
  return out;
}

TEST(Verify, ConvertedFixturesPass) {
  for (const auto& c : all_converted()) {
    const auto& lib = *c.fixture->library;
    auto [graph, violations] = build_latch_graph(c.netlist, lib);
    EXPECT_TRUE(violations.empty()) << c.fixture->name << " " << to_string(c.variant) << ": "
                                    << violations.front().message;
    EXPECT_TRUE(check_two_color(graph).empty());
    EXPECT_EQ(graph.nodes.size(), count_cells(c.netlist, lib).sequential);
    EquivOptions o;
    o.cycles = 200;
    o.seeds = 8;
    EXPECT_TRUE(check_equivalence(c.original, c.netlist, lib, o).equivalent) << c.fixture->name;
  }
}

TEST(Verify, LatchEdgesMatchReachabilityOracle) {
  for (const auto& c : all_converted()) {
    const auto& lib = *c.fixture->library;
    auto [graph, violations] = build_latch_graph(c.netlist, lib);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& e : graph.edges) {
      EXPECT_TRUE(got.insert({e.from, e.to}).second) << "duplicate edge " << e.from << " " << e.to;
      EXPECT_TRUE(witness_is_valid(c.netlist, lib, e)) << e.from << " -> " << e.to;
    }
    EXPECT_EQ(got, oracle_edges(c.netlist, lib)) << c.fixture->name << " " << to_string(c.variant);
  }
}

TEST(Verify, TamperedWitnessIsInvalid) {
  const auto& lib = default_library();
  Netlist n = testing::convert(testing::load_fixture("gcd_fsm", lib), lib, Variant::RecircMux);
  auto [graph, v] = build_latch_graph(n, lib);
  ASSERT_FALSE(graph.edges.empty());
  LatchEdge e = graph.edges.front();
  LatchEdge bad = e;
  bad.path.push_back("clk_1");
  EXPECT_FALSE(witness_is_valid(n, lib, bad));
  bad = e;
  bad.path.front() = "clk_2";
  EXPECT_FALSE(witness_is_valid(n, lib, bad));
  bad = e;
  bad.pin = "NOPE";
  EXPECT_FALSE(witness_is_valid(n, lib, bad));
}

TEST(Verify, PhaseFlipMutantsAreCaught) {
  int mutants = 0;
  for (const auto& c : all_converted()) {
    const auto& lib = *c.fixture->library;
    for (const auto& inst : c.netlist.instances) {
      if (!lib.at(inst.kind).is_latch()) continue;
      Netlist m = c.netlist;
      flip_phase(m, lib, inst.name);
      auto [graph, violations] = build_latch_graph(m, lib);
      EXPECT_FALSE(violations.empty()) << c.fixture->name << " mutant " << inst.name;
      for (const auto& v : violations) {
        if (v.kind == ViolationKind::SameColorEdge) {
          EXPECT_FALSE(v.path.empty());
          EXPECT_NE(v.message.find("two-color violation"), std::string::npos);
        }
      }
      ++mutants;
    }
  }
  EXPECT_GE(mutants, 20);
}

TEST(Verify, WiringFaultsAreCaught) {
  const auto& lib = default_library();
  int faults = 0, caught = 0;
  for (const auto& name : {"gcd_fsm", "counter_en", "lfsr"}) {
    Netlist orig = testing::load_fixture(name, lib);
    Netlist t = testing::convert(orig, lib, Variant::RecircMux);
    for (const auto& inst : t.instances) {
      if (!lib.at(inst.kind).is_latch()) continue;
      Netlist m = t;
      m.instance(inst.name)->pins["D"] = faults % 2 ? m.const_one : m.const_zero;
      m.nets.insert(m.const_zero);
      m.nets.insert(m.const_one);
      EquivOptions o;
      o.cycles = 100;
      o.seeds = 4;
      caught += !check_equivalence(orig, m, lib, o).equivalent;
      ++faults;
    }
  }
  EXPECT_GE(faults, 10);
  EXPECT_GE(caught, 10);
  EXPECT_GE(caught * 4, faults * 3);
}

TEST(Verify, DivergenceNamesPortAndCycle) {
  const auto& lib = default_library();
  Netlist orig = testing::load_fixture("lfsr", lib);
  Netlist t = testing::convert(orig, lib, Variant::RecircMux);
  Netlist m = t;
  for (auto& i : m.instances) {
    if (i.kind == "_DLATCH_P_" && i.name.ends_with("__phi2")) {
      i.init = 1 - i.init;
      break;
    }
  }
  EquivOptions o;
  o.cycles = 50;
  o.seeds = 2;
  EquivVerdict v = check_equivalence(orig, m, lib, o);
  ASSERT_FALSE(v.equivalent);
  ASSERT_TRUE(v.divergence.has_value());
  EXPECT_NE(v.divergence->expected, v.divergence->got);
  auto j = verdict_to_json(v);
  EXPECT_EQ(j["divergence"]["port"], v.divergence->port);
  o.warmup = 50;
  EXPECT_TRUE(check_equivalence(orig, m, lib, o).equivalent);
}

TEST(Verify, ReportsUncolorableAndMixedClocks) {
  Netlist n = parse(R"(
module bad (clk_1, clk_2, d, q1, q2);
  input clk_1, d;
  (* clock *) input clk_2;
  output q1, q2;
  wire both;
  AND2 g (.A(clk_1), .B(clk_2), .Y(both));
  _DLATCH_P_ a (.E(both), .D(d), .Q(q1));
  _DLATCH_P_ b (.E(d), .D(q1), .Q(q2));
endmodule
)");
  auto [graph, violations] = build_latch_graph(n, default_library());
  std::set<ViolationKind> kinds;
  for (const auto& v : violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(ViolationKind::MixedCone));
  EXPECT_TRUE(kinds.count(ViolationKind::UncolorableClock));
  EXPECT_THROW(clock_domain_of(n, default_library(), "b"), Error);
  EXPECT_EQ(violations_to_json(violations).size(), violations.size());
}

TEST(Verify, WarnsOnInvertedClock) {
  Netlist n = parse(R"(
module inv (clk_1, d, q);
  input clk_1, d;
  output q;
  wire nclk;
  INV i (.A(clk_1), .Y(nclk));
  _DLATCH_P_ a (.E(nclk), .D(d), .Q(q));
endmodule
)");
  std::vector<Diagnostic> warnings;
  EXPECT_EQ(clock_domain_of(n, default_library(), "a", {}, &warnings), Phase::Phi1);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].severity, Severity::Warning);
}

TEST(Verify, PortMismatchIsAnError) {
  const auto& lib = default_library();
  Netlist a = testing::load_fixture("lfsr", lib);
  Netlist b = testing::convert(testing::load_fixture("counter_en", lib), lib, Variant::RecircMux);
  EXPECT_THROW(check_equivalence(a, b, lib), Error);
}

}  // namespace
}  // namespace twophase
