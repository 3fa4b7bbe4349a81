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

#include <string>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "twophase/error.hpp"
#include "twophase/netlist.hpp"
#include "twophase/verilog.hpp"

namespace twophase {
namespace {

using testing::parse;

// Parses `text` and returns the error, failing if it parses.
ParseError parse_failure(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error";
  return ParseError({"<none>", 1, 1}, "none");
}

// Offset of (line, column) in `text`, or npos when outside it.
std::size_t offset_of(const std::string& text, int line, int column) {
  std::size_t at = 0;
  for (int l = 1; l < line; ++l) {
    at = text.find('\n', at);
    if (at == std::string::npos) return at;
    ++at;
  }
  at += column - 1;
  return at <= text.size() ? at : std::string::npos;
}

TEST(Verilog, SingleFlipFlop) {
  Netlist n = parse(R"(
module one (d, clk, q);
  input d, clk;
  output q;
  _DFF_P_ ff (.D(d), .C(clk), .Q(q));
endmodule
)");
  ASSERT_EQ(n.instances.size(), 1u);
  EXPECT_EQ(n.instances[0].kind, "_DFF_P_");
  EXPECT_EQ(n.port("clk")->kind, PortKind::Clock);
  EXPECT_EQ(n.port("d")->kind, PortKind::Data);
}

TEST(Verilog, RoundTripsEveryFixture) {
  for (const auto& f : testing::ff_fixtures()) {
    Netlist n = testing::load_fixture(f);
    std::string text = emit_verilog(n);
    Netlist back = parse_verilog(text, *f.library);
    EXPECT_EQ(back, n) << f.name;
    EXPECT_EQ(emit_verilog(back), text) << f.name;
  }
}

TEST(Verilog, AgreesWithCanonicalFrontend) {
  for (const auto& f : testing::ff_fixtures()) {
    Netlist n = testing::load_fixture(f);
    Netlist c = parse_canonical(emit_canonical(n), *f.library);
    EXPECT_EQ(emit_canonical(c), emit_canonical(n)) << f.name;
  }
}

TEST(Verilog, MatchesHandBuiltCanonicalCounter) {
  Netlist v = parse(R"(
module cnt2 (clk, en, q);
  input clk;
  input en;
  output [1:0] q;
  wire d0, d1;
  INV i0 (.A(q[0]), .Y(d0));
  XOR2 x1 (.A(q[1]), .B(q[0]), .Y(d1));
  _DFFE_PP_ r0 (.C(clk), .D(d0), .E(en), .Q(q[0]));
  _DFFE_PP_ r1 (.C(clk), .D(d1), .E(en), .Q(q[1]));
endmodule
)");
  Netlist c = parse_canonical(R"({
  "name": "cnt2",
  "ports": [
    {"name": "clk", "dir": "input", "kind": "clock"},
    {"name": "en", "dir": "input", "kind": "data"},
    {"name": "q[1]", "dir": "output", "kind": "data"},
    {"name": "q[0]", "dir": "output", "kind": "data"}
  ],
  "nets": ["clk", "en", "q[1]", "q[0]", "d0", "d1"],
  "constants": {"zero": "$zero", "one": "$one"},
  "instances": [
    {"name": "r1", "kind": "_DFFE_PP_", "pins": {"C": "clk", "D": "d1", "E": "en", "Q": "q[1]"}},
    {"name": "i0", "kind": "INV", "pins": {"A": "q[0]", "Y": "d0"}},
    {"name": "x1", "kind": "XOR2", "pins": {"A": "q[1]", "B": "q[0]", "Y": "d1"}},
    {"name": "r0", "kind": "_DFFE_PP_", "pins": {"C": "clk", "D": "d0", "E": "en", "Q": "q[0]"}}
  ]
})",
                              default_library());
  EXPECT_EQ(v, c);
}

TEST(Verilog, BitBlastsVectorsAndAliases) {
  Netlist n = parse(R"(
module vec (a, y, z, k);
  input [2:0] a;
  output [1:0] y;
  output z, k;
  wire t;
  assign t = a[2];
  assign y[0] = t;
  AND2 g (.A(a[0]), .B(a[1]), .Y(y[1]));
  assign z = t;
  assign k = 1'b1;
endmodule
)");
  EXPECT_NE(n.port("a[0]"), nullptr);
  EXPECT_NE(n.port("a[2]"), nullptr);
  EXPECT_EQ(n.port("a"), nullptr);
  EXPECT_TRUE(validate(n, default_library()).empty());
  // Two outputs aliasing the same input need buffers; the constant output too.
  std::size_t bufs = 0;
  for (const auto& i : n.instances) bufs += i.kind == "BUF";
  EXPECT_EQ(bufs, 3u);
}

TEST(Verilog, EscapedIdentifiersRoundTrip) {
  Netlist n = parse(R"(
module \top$odd (\a.b , \y+ );
  input \a.b ;
  output \y+ ;
  INV \u/1 (.A(\a.b ), .Y(\y+ ));
endmodule
)");
  EXPECT_EQ(n.name, "top$odd");
  EXPECT_NE(n.port("a.b"), nullptr);
  EXPECT_NE(n.instance("u/1"), nullptr);
  Netlist back = parse(emit_verilog(n));
  EXPECT_EQ(back, n);
}

TEST(Verilog, InitAttribute) {
  Netlist n = parse(R"(
module i (clk, d, q);
  input clk, d;
  output q;
  (* init = 1 *)
  _DFF_P_ r (.C(clk), .D(d), .Q(q));
endmodule
)");
  EXPECT_EQ(n.instance("r")->init, 1);
  EXPECT_EQ(parse(emit_verilog(n)).instance("r")->init, 1);
}

TEST(Verilog, RejectsBehavioralBlock) {
  auto e = parse_failure("module m (clk);\n  input clk;\n  always @(posedge clk) begin end\nendmodule\n");
  EXPECT_EQ(e.bare_message(), "unsupported construct: behavioral block");
  EXPECT_EQ(e.span().line, 3);
  EXPECT_EQ(e.span().column, 3);
}

TEST(Verilog, RejectsUnsupportedConstructs) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"module m (a, y);\n input a;\n output y;\n assign y = ~a;\nendmodule\n", "unsupported construct"},
      {"module m (a);\n parameter P = 1;\n input a;\nendmodule\n", "unsupported construct"},
      {"`define X 1\nmodule m (a);\n input a;\nendmodule\n", "unsupported construct: compiler directive"},
      {"module m (a, y);\n input a;\n output y;\n INV u (a, y);\nendmodule\n", "positional port connections"},
      {"module m (a, y);\n input a;\n output y;\n FOO u (.A(a), .Y(y));\nendmodule\n", "unknown cell kind FOO"},
      {"module m (a, y);\n input a;\n output y;\n INV u (.A(a), .Q(y));\nendmodule\n", "unknown pin Q"},
      {"module m (a, y);\n input a;\n output y;\n INV u (.A(a));\nendmodule\n", "dangling pin"},
      {"module m (a, y);\n input a;\n output y;\n INV u (.A(a), .Y(y))\nendmodule\n", "expected"},
      {"module m (a, y);\n input a;\n output y;\n INV u1 (.A(a), .Y(y));\n INV u2 (.A(a), .Y(y));\nendmodule\n", "multiple drivers"},
  };
  for (const auto& [text, needle] : cases) {
    auto e = parse_failure(text);
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    EXPECT_NE(offset_of(text, e.span().line, e.span().column), std::string::npos) << e.what();
    EXPECT_GE(e.span().line, 1);
    EXPECT_GE(e.span().column, 1);
  }
}

TEST(Verilog, ErrorFormatIsFileLineColumn) {
  try {
    parse_verilog("module m (a);\n input a;\n wire ;\nendmodule\n", default_library(), "x.v");
    FAIL();
  } catch (const ParseError& e) {
    std::string what = e.what();
    EXPECT_EQ(what.rfind("x.v:3:", 0), 0u) << what;
  }
}

TEST(Verilog, EmitsTransformedClockPorts) {
  Netlist n = testing::convert(testing::load_fixture("lfsr", default_library()), default_library(),
                               Variant::RecircMux);
  std::string text = emit_verilog(n);
  EXPECT_NE(text.find("input clk_1;"), std::string::npos);
  EXPECT_NE(text.find("input clk_2;"), std::string::npos);
}

}  // namespace
}  // namespace twophase
