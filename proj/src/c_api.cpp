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

#include "twophase/twophase.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "json.hpp"
#include "twophase/error.hpp"
#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/pipeline.hpp"
#include "twophase/sim.hpp"
#include "twophase/timing.hpp"
#include "twophase/verilog.hpp"
#include "twophase/verify.hpp"

struct tp_library {
  twophase::CellLibrary lib;
};

struct tp_netlist {
  twophase::Netlist nl;
};

struct tp_convert_result {
  twophase::ConvertResult result;
};

namespace {

thread_local std::string g_last_error;

tp_status status_of(twophase::ErrorCode c) {
  using twophase::ErrorCode;
  switch (c) {
    case ErrorCode::Parse: return TP_ERR_PARSE;
    case ErrorCode::Library: return TP_ERR_LIBRARY;
    case ErrorCode::Netlist: return TP_ERR_NETLIST;
    case ErrorCode::Unsupported: return TP_ERR_UNSUPPORTED;
    case ErrorCode::Transform: return TP_ERR_TRANSFORM;
    case ErrorCode::Retime: return TP_ERR_RETIME;
    case ErrorCode::Simulation: return TP_ERR_SIMULATION;
    case ErrorCode::Verify: return TP_ERR_VERIFY;
    case ErrorCode::Timing: return TP_ERR_TIMING;
    case ErrorCode::Io: return TP_ERR_IO;
    case ErrorCode::Usage: return TP_ERR_USAGE;
  }
  return TP_ERR_INTERNAL;
}

template <typename F>
tp_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TP_OK;
  } catch (const twophase::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return TP_ERR_USAGE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TP_ERR_INTERNAL;
  }
}

tp_status invalid(const char* what) {
  g_last_error = std::string("invalid argument: ") + what;
  return TP_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

twophase::PipelineConfig config_of(const char* config_json) {
  if (!config_json || !*config_json) return {};
  return twophase::PipelineConfig::from_json(nlohmann::json::parse(config_json));
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "0.1.0"; }

const char* tp_last_error(void) { return g_last_error.c_str(); }

const char* tp_status_name(tp_status status) {
  switch (status) {
    case TP_OK: return "ok";
    case TP_ERR_PARSE: return "parse";
    case TP_ERR_LIBRARY: return "library";
    case TP_ERR_NETLIST: return "netlist";
    case TP_ERR_UNSUPPORTED: return "unsupported";
    case TP_ERR_TRANSFORM: return "transform";
    case TP_ERR_RETIME: return "retime";
    case TP_ERR_SIMULATION: return "simulation";
    case TP_ERR_VERIFY: return "verify";
    case TP_ERR_TIMING: return "timing";
    case TP_ERR_IO: return "io";
    case TP_ERR_USAGE: return "usage";
    case TP_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case TP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void tp_string_free(char* s) { std::free(s); }

tp_status tp_library_default(tp_library** out) {
  if (!out) return invalid("out");
  return guarded([&] { *out = new tp_library{twophase::default_library()}; });
}

tp_status tp_library_parse(const char* json_text, tp_library** out) {
  if (!json_text || !out) return invalid("json_text/out");
  return guarded([&] { *out = new tp_library{twophase::load_library(json_text)}; });
}

void tp_library_free(tp_library* lib) { delete lib; }

tp_status tp_netlist_parse(const tp_library* lib, const char* text, tp_format format,
                           const char* filename, tp_netlist** out) {
  if (!lib || !text || !out) return invalid("lib/text/out");
  return guarded([&] {
    auto nl = std::make_unique<tp_netlist>();
    if (format == TP_FORMAT_VERILOG) {
      nl->nl = twophase::parse_verilog(text, lib->lib, filename ? filename : "<verilog>");
    } else if (format == TP_FORMAT_CANONICAL) {
      nl->nl = twophase::parse_canonical(text, lib->lib, filename ? filename : "<canonical>");
    } else {
      throw twophase::Error(twophase::ErrorCode::Usage, "unknown netlist format");
    }
    *out = nl.release();
  });
}

tp_status tp_netlist_emit(const tp_netlist* nl, tp_format format, char** out) {
  if (!nl || !out) return invalid("nl/out");
  return guarded([&] {
    if (format == TP_FORMAT_VERILOG) {
      *out = dup_string(twophase::emit_verilog(nl->nl));
    } else if (format == TP_FORMAT_CANONICAL) {
      *out = dup_string(twophase::emit_canonical(nl->nl));
    } else {
      throw twophase::Error(twophase::ErrorCode::Usage, "unknown netlist format");
    }
  });
}

tp_status tp_netlist_name(const tp_netlist* nl, char** out) {
  if (!nl || !out) return invalid("nl/out");
  return guarded([&] { *out = dup_string(nl->nl.name); });
}

tp_status tp_netlist_validate(const tp_library* lib, const tp_netlist* nl, char** out) {
  if (!lib || !nl || !out) return invalid("lib/nl/out");
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : twophase::validate(nl->nl, lib->lib)) {
      arr.push_back({{"severity", d.severity == twophase::Severity::Error ? "error" : "warning"},
                     {"locus", d.locus},
                     {"message", d.message}});
    }
    *out = dup_string(arr.dump(2));
  });
}

tp_status tp_netlist_stats(const tp_library* lib, const tp_netlist* nl, char** out) {
  if (!lib || !nl || !out) return invalid("lib/nl/out");
  return guarded([&] {
    auto c = twophase::count_cells(nl->nl, lib->lib);
    nlohmann::json j{{"name", nl->nl.name},
                     {"sequential", c.sequential},
                     {"combinational", c.combinational},
                     {"total", c.total()},
                     {"inputs", twophase::data_inputs(nl->nl).size()},
                     {"outputs", twophase::data_outputs(nl->nl).size()}};
    *out = dup_string(j.dump(2));
  });
}

void tp_netlist_free(tp_netlist* nl) { delete nl; }

tp_status tp_convert(const tp_library* lib, const tp_netlist* nl, const char* config_json,
                     tp_convert_result** out) {
  if (!lib || !nl || !out) return invalid("lib/nl/out");
  return guarded([&] {
    auto config = config_of(config_json);
    *out = new tp_convert_result{twophase::run_convert(nl->nl, lib->lib, config)};
  });
}

tp_status tp_convert_result_netlist(const tp_convert_result* r, tp_netlist** out) {
  if (!r || !out) return invalid("r/out");
  return guarded([&] { *out = new tp_netlist{r->result.netlist}; });
}

tp_status tp_convert_result_trace(const tp_convert_result* r, char** out) {
  if (!r || !out) return invalid("r/out");
  return guarded([&] { *out = dup_string(r->result.trace.to_json().dump(2)); });
}

tp_status tp_convert_result_stage_log(const tp_convert_result* r, char** out) {
  if (!r || !out) return invalid("r/out");
  return guarded([&] { *out = dup_string(r->result.stage_log_json().dump(2)); });
}

tp_status tp_convert_result_lags(const tp_convert_result* r, char** out) {
  if (!r || !out) return invalid("r/out");
  return guarded([&] { *out = dup_string(r->result.lags_json().dump(2)); });
}

void tp_convert_result_free(tp_convert_result* r) { delete r; }

tp_status tp_verify(const tp_library* lib, const tp_netlist* original,
                    const tp_netlist* transformed, const char* config_json, size_t warmup,
                    char** report, int* passed) {
  if (!lib || !original || !transformed || !report || !passed) return invalid("null argument");
  return guarded([&] {
    auto config = config_of(config_json);
    auto [graph, violations] = twophase::build_latch_graph(transformed->nl, lib->lib, config.clocks);
    auto verdict = twophase::check_equivalence(original->nl, transformed->nl, lib->lib,
                                               config.equiv_options(warmup));
    nlohmann::json warnings = nlohmann::json::array();
    for (const auto& w : graph.warnings) warnings.push_back(twophase::to_string(w));
    bool ok = violations.empty() && verdict.equivalent;
    nlohmann::json j{{"design", transformed->nl.name},
                     {"latches", graph.nodes.size()},
                     {"edges", graph.edges.size()},
                     {"violations", twophase::violations_to_json(violations)},
                     {"warnings", warnings},
                     {"equivalence", twophase::verdict_to_json(verdict)},
                     {"passed", ok}};
    *report = dup_string(j.dump(2));
    *passed = ok ? 1 : 0;
  });
}

tp_status tp_sta(const tp_library* lib, const tp_netlist* nl, const char* config_json,
                 char** report, int* passed) {
  if (!lib || !nl || !report || !passed) return invalid("null argument");
  return guarded([&] {
    auto config = config_of(config_json);
    auto r = twophase::analyze_timing(nl->nl, lib->lib, config.clock_spec());
    *report = dup_string(r.to_json().dump(2));
    *passed = r.met() ? 1 : 0;
  });
}

}  // extern "C"
