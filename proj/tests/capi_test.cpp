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

#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "twophase/twophase.h"

namespace {

using nlohmann::json;

std::string fixture(const std::string& file) {
  std::ifstream in(std::string(TWOPHASE_FIXTURE_DIR) + "/" + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  tp_string_free(s);
  return out;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_EQ(tp_library_default(&lib_), TP_OK); }
  void TearDown() override { tp_library_free(lib_); }

  tp_netlist* load(const std::string& name, const tp_library* lib = nullptr) {
    tp_netlist* nl = nullptr;
    EXPECT_EQ(tp_netlist_parse(lib ? lib : lib_, fixture(name + ".v").c_str(), TP_FORMAT_VERILOG,
                               (name + ".v").c_str(), &nl),
              TP_OK)
        << tp_last_error();
    return nl;
  }

  tp_library* lib_ = nullptr;
};

TEST_F(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(tp_version(), "");
  EXPECT_STREQ(tp_status_name(TP_OK), "ok");
  EXPECT_STRNE(tp_status_name(TP_ERR_PARSE), tp_status_name(TP_ERR_RETIME));
}

TEST_F(CApi, ParseEmitStats) {
  tp_netlist* nl = load("counter_en");
  char* s = nullptr;
  ASSERT_EQ(tp_netlist_name(nl, &s), TP_OK);
  EXPECT_EQ(take(s), "counter_en");
  ASSERT_EQ(tp_netlist_stats(lib_, nl, &s), TP_OK);
  json stats = json::parse(take(s));
  EXPECT_EQ(stats["sequential"], 4);
  ASSERT_EQ(tp_netlist_emit(nl, TP_FORMAT_CANONICAL, &s), TP_OK);
  std::string canonical = take(s);
  tp_netlist* back = nullptr;
  ASSERT_EQ(tp_netlist_parse(lib_, canonical.c_str(), TP_FORMAT_CANONICAL, "x.json", &back), TP_OK);
  ASSERT_EQ(tp_netlist_emit(back, TP_FORMAT_CANONICAL, &s), TP_OK);
  EXPECT_EQ(take(s), canonical);
  ASSERT_EQ(tp_netlist_validate(lib_, nl, &s), TP_OK);
  EXPECT_EQ(json::parse(take(s)), json::array());
  tp_netlist_free(back);
  tp_netlist_free(nl);
}

TEST_F(CApi, ErrorsCarryCodesAndMessages) {
  tp_netlist* nl = nullptr;
  EXPECT_EQ(tp_netlist_parse(lib_, "module m (a);\n input a;\n always @(a) begin end\nendmodule\n",
                             TP_FORMAT_VERILOG, "bad.v", &nl),
            TP_ERR_PARSE);
  EXPECT_EQ(nl, nullptr);
  EXPECT_EQ(std::string(tp_last_error()).rfind("bad.v:3:", 0), 0u) << tp_last_error();
  EXPECT_EQ(tp_netlist_parse(nullptr, "", TP_FORMAT_VERILOG, "x", &nl), TP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tp_netlist_parse(lib_, "", TP_FORMAT_VERILOG, "x", nullptr), TP_ERR_INVALID_ARGUMENT);
  tp_library* bad = nullptr;
  EXPECT_EQ(tp_library_parse("{\"cells\": 3}", &bad), TP_ERR_PARSE);
  EXPECT_EQ(bad, nullptr);
  tp_netlist* in = load("counter_en");
  tp_convert_result* r = nullptr;
  EXPECT_EQ(tp_convert(lib_, in, "{\"nope\": 1}", &r), TP_ERR_USAGE);
  EXPECT_NE(std::string(tp_last_error()).find("nope"), std::string::npos);
  tp_netlist_free(in);
  tp_netlist* async_nl = load("async_reset");
  EXPECT_EQ(tp_convert(lib_, async_nl, "{\"variant\": \"clock-gated\"}", &r), TP_ERR_UNSUPPORTED);
  tp_netlist_free(async_nl);
  tp_netlist_free(nullptr);
  tp_convert_result_free(nullptr);
  tp_library_free(nullptr);
}

TEST_F(CApi, ConvertVerifyAndSta) {
  tp_netlist* in = load("gcd_fsm");
  tp_convert_result* r = nullptr;
  ASSERT_EQ(tp_convert(lib_, in, "{\"variant\": \"clock-gated\", \"retime\": \"min-area\", "
                                 "\"cycles\": 64, \"seeds\": 2}",
                       &r),
            TP_OK)
      << tp_last_error();
  tp_netlist* out = nullptr;
  ASSERT_EQ(tp_convert_result_netlist(r, &out), TP_OK);
  char* s = nullptr;
  ASSERT_EQ(tp_convert_result_stage_log(r, &s), TP_OK);
  json log = json::parse(take(s));
  EXPECT_EQ(log["stages"].back()["stage"], "map_dff_to_latch");
  ASSERT_EQ(tp_convert_result_trace(r, &s), TP_OK);
  EXPECT_TRUE(json::parse(take(s)).is_object());
  ASSERT_EQ(tp_convert_result_lags(r, &s), TP_OK);
  EXPECT_TRUE(json::parse(take(s)).is_object());

  int passed = 0;
  ASSERT_EQ(tp_verify(lib_, in, out, "{\"cycles\": 200, \"seeds\": 4}", log["warmup"].get<size_t>(),
                      &s, &passed),
            TP_OK)
      << tp_last_error();
  json report = json::parse(take(s));
  EXPECT_EQ(passed, 1);
  EXPECT_EQ(report["passed"], true);
  EXPECT_EQ(report["violations"], json::array());
  EXPECT_EQ(report["equivalence"]["equivalent"], true);

  ASSERT_EQ(tp_sta(lib_, out, "{\"period\": 10}", &s, &passed), TP_OK) << tp_last_error();
  EXPECT_TRUE(json::parse(take(s)).contains("act_tb"));
  EXPECT_EQ(tp_sta(lib_, in, nullptr, &s, &passed), TP_ERR_TIMING);

  tp_netlist_free(out);
  tp_convert_result_free(r);
  tp_netlist_free(in);
}

TEST_F(CApi, TwoStageRingTiming) {
  tp_library* ideal = nullptr;
  ASSERT_EQ(tp_library_parse(fixture("ideal_lib.json").c_str(), &ideal), TP_OK);
  tp_netlist* ring = load("borrow_ring", ideal);
  char* s = nullptr;
  int passed = 0;
  ASSERT_EQ(tp_sta(ideal, ring, "{\"period\": 10, \"duty\": 0.49}", &s, &passed), TP_OK);
  json rep = json::parse(take(s));
  EXPECT_EQ(passed, 1);
  EXPECT_NEAR(rep["act_tb"].get<double>(), 2.0, 1e-6);
  tp_netlist* slow = load("borrow_ring_slow", ideal);
  ASSERT_EQ(tp_sta(ideal, slow, "{\"period\": 10}", &s, &passed), TP_OK);
  take(s);
  EXPECT_EQ(passed, 0);
  tp_netlist_free(slow);
  tp_netlist_free(ring);
  tp_library_free(ideal);
}

}  // namespace
