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

// twophase-cli: command-line driver over the C API.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "twophase/twophase.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(tp_status s) {
  switch (s) {
    case TP_ERR_PARSE:
    case TP_ERR_LIBRARY:
    case TP_ERR_USAGE:
    case TP_ERR_IO:
    case TP_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitFail;
  }
}

void check(tp_status s, const std::string& context) {
  if (s != TP_OK) {
    throw CliError{exit_code_for(s),
                   context + ": " + tp_status_name(s) + " error: " + tp_last_error()};
  }
}

std::string take(char* s) {
  std::string out(s ? s : "");
  tp_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes every file to a temporary sibling first and renames them only once
// all writes succeeded.
void write_files(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [path, text] : files) {
    fs::path tmp = path;
    tmp += ".tmp";
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
      cleanup();
      throw CliError{kExitUsage, "cannot write " + path.string()};
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(temps[i], files[i].first, ec);
    if (ec) {
      cleanup();
      throw CliError{kExitUsage, "cannot write " + files[i].first.string() + ": " + ec.message()};
    }
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_files({{out_path, text}});
  }
}

struct Library {
  tp_library* lib = nullptr;
  explicit Library(const std::string& path) {
    if (path.empty()) {
      check(tp_library_default(&lib), "library");
    } else {
      check(tp_library_parse(read_file(path).c_str(), &lib), path);
    }
  }
  ~Library() { tp_library_free(lib); }
  Library(const Library&) = delete;
  Library& operator=(const Library&) = delete;
};

struct Netlist {
  tp_netlist* nl = nullptr;
  Netlist() = default;
  ~Netlist() { tp_netlist_free(nl); }
  Netlist(const Netlist&) = delete;
  Netlist& operator=(const Netlist&) = delete;
};

tp_format format_for(const std::string& path, const std::string& format) {
  if (format == "verilog") return TP_FORMAT_VERILOG;
  if (format == "canonical") return TP_FORMAT_CANONICAL;
  fs::path p(path);
  if (p.extension() == ".json") return TP_FORMAT_CANONICAL;
  return TP_FORMAT_VERILOG;
}

void load_netlist(const Library& lib, const std::string& path, const std::string& format,
                  Netlist& out) {
  std::string text = read_file(path);
  check(tp_netlist_parse(lib.lib, text.c_str(), format_for(path, format), path.c_str(), &out.nl),
        "parse");
}

// Shared clock, retime and equivalence options. A --config file supplies the
// base values and explicit flags override it.
struct Options {
  std::string library;
  std::string config;
  std::string format;
  std::optional<std::string> variant;
  std::optional<std::string> retime;
  std::optional<double> period;
  std::optional<double> duty;
  std::optional<std::size_t> seeds;
  std::optional<std::size_t> cycles;
  std::string skew_table;

  std::string config_json() const {
    json j = json::object();
    if (!config.empty()) {
      try {
        j = json::parse(read_file(config));
      } catch (const json::exception& e) {
        throw CliError{kExitUsage, config + ": " + e.what()};
      }
    }
    if (variant) j["variant"] = *variant;
    if (retime) j["retime"] = *retime;
    if (period) j["period"] = *period;
    if (duty) j["duty"] = *duty;
    if (seeds) j["seeds"] = *seeds;
    if (cycles) j["cycles"] = *cycles;
    if (!skew_table.empty()) {
      try {
        j["skew"] = json::parse(read_file(skew_table));
      } catch (const json::exception& e) {
        throw CliError{kExitUsage, skew_table + ": " + e.what()};
      }
    }
    return j.dump();
  }
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--library", o.library, "Cell library JSON (default: built-in library)");
  app->add_option("--format", o.format, "Input netlist format")
      ->check(CLI::IsMember({"verilog", "canonical"}));
}

void add_clock(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "Pipeline config JSON; flags override its values");
  app->add_option("--period", o.period, "Clock period in ns")->check(CLI::PositiveNumber);
  app->add_option("--duty", o.duty, "Duty cycle of each phase")->check(CLI::Range(0.0, 1.0));
  app->add_option("--skew-table", o.skew_table, "JSON object mapping latch names to clock skew");
}

void add_equiv(CLI::App* app, Options& o) {
  app->add_option("--seeds", o.seeds, "Random stimulus seeds for co-simulation");
  app->add_option("--cycles", o.cycles, "Cycles per co-simulation seed");
}

int cmd_parse(const Options& o, const std::string& input, const std::string& to,
              const std::string& out) {
  Library lib(o.library);
  Netlist nl;
  load_netlist(lib, input, o.format, nl);
  char* diag = nullptr;
  check(tp_netlist_validate(lib.lib, nl.nl, &diag), "validate");
  json d = json::parse(take(diag));
  for (const auto& e : d) {
    std::cerr << input << ": " << e["severity"].get<std::string>() << ": "
              << e["locus"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
  }
  char* text = nullptr;
  check(tp_netlist_emit(nl.nl, to == "verilog" ? TP_FORMAT_VERILOG : TP_FORMAT_CANONICAL, &text),
        "emit");
  emit(out, take(text));
  return kExitOk;
}

int cmd_convert(const Options& o, const std::string& input, const std::string& out_dir) {
  Library lib(o.library);
  Netlist nl;
  load_netlist(lib, input, o.format, nl);
  std::string config = o.config_json();
  tp_convert_result* r = nullptr;
  check(tp_convert(lib.lib, nl.nl, config.c_str(), &r), "convert");
  std::unique_ptr<tp_convert_result, void (*)(tp_convert_result*)> guard(r, tp_convert_result_free);
  Netlist out;
  check(tp_convert_result_netlist(r, &out.nl), "convert");
  char *name = nullptr, *v = nullptr, *c = nullptr, *trace = nullptr, *log = nullptr,
       *lags = nullptr;
  check(tp_netlist_name(out.nl, &name), "convert");
  std::string base = take(name);
  check(tp_netlist_emit(out.nl, TP_FORMAT_VERILOG, &v), "emit");
  std::string verilog = take(v);
  check(tp_netlist_emit(out.nl, TP_FORMAT_CANONICAL, &c), "emit");
  std::string canonical = take(c);
  check(tp_convert_result_trace(r, &trace), "convert");
  std::string trace_text = take(trace);
  check(tp_convert_result_stage_log(r, &log), "convert");
  std::string log_text = take(log);
  check(tp_convert_result_lags(r, &lags), "convert");
  std::string lags_text = take(lags);

  fs::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError{kExitUsage, "cannot create " + dir.string() + ": " + ec.message()};
  write_files({{dir / (base + ".v"), verilog},
               {dir / (base + ".json"), canonical + "\n"},
               {dir / "trace.json", trace_text + "\n"},
               {dir / "stage_log.json", log_text + "\n"},
               {dir / "lags.json", lags_text + "\n"}});
  json stages = json::parse(log_text)["stages"];
  for (const auto& s : stages) {
    std::cerr << s["stage"].get<std::string>() << ": seq=" << s["sequential"]
              << " comb=" << s["combinational"] << " total=" << s["total"] << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o, const std::string& input, const std::string& original,
               std::size_t warmup, const std::string& lags_path, const std::string& out) {
  Library lib(o.library);
  Netlist a, b;
  load_netlist(lib, original, o.format, a);
  load_netlist(lib, input, o.format, b);
  if (!lags_path.empty()) {
    try {
      json lags = json::parse(read_file(lags_path));
      for (const auto& item : lags.items()) {
        std::size_t m = static_cast<std::size_t>(std::abs(item.value().get<int>()));
        warmup = std::max(warmup, m);
      }
    } catch (const json::exception& e) {
      throw CliError{kExitUsage, lags_path + ": " + e.what()};
    }
  }
  std::string config = o.config_json();
  char* report = nullptr;
  int passed = 0;
  check(tp_verify(lib.lib, a.nl, b.nl, config.c_str(), warmup, &report, &passed), "verify");
  std::string text = take(report);
  emit(out, text);
  if (!passed) {
    json j = json::parse(text);
    for (const auto& v : j["violations"]) std::cerr << v["message"].get<std::string>() << "\n";
    if (j["equivalence"].contains("divergence")) {
      const auto& d = j["equivalence"]["divergence"];
      std::cerr << "divergence at cycle " << d["cycle"] << " on " << d["port"].get<std::string>()
                << " (seed " << d["seed"] << ")\n";
    }
  }
  return passed ? kExitOk : kExitFail;
}

int cmd_sta(const Options& o, const std::string& input, const std::string& out) {
  Library lib(o.library);
  Netlist nl;
  load_netlist(lib, input, o.format, nl);
  std::string config = o.config_json();
  char* report = nullptr;
  int passed = 0;
  check(tp_sta(lib.lib, nl.nl, config.c_str(), &report, &passed), "sta");
  emit(out, take(report));
  return passed ? kExitOk : kExitFail;
}

std::string fmt(const json& v) {
  if (v.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v.get<double>());
  return buf;
}

int cmd_report(const Options& o, const std::vector<std::string>& inputs, const std::string& out) {
  Library lib(o.library);
  std::string config = o.config_json();
  std::ostringstream table;
  char line[1024];
  std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %10s %10s %6s %6s %6s  %s\n", "design",
                "period", "max_tb", "act_tb", "wns_setup", "wns_hold", "seq", "comb", "total", "file");
  table << line;
  for (const auto& path : inputs) {
    Netlist nl;
    load_netlist(lib, path, o.format, nl);
    char* stats = nullptr;
    check(tp_netlist_stats(lib.lib, nl.nl, &stats), "report");
    json s = json::parse(take(stats));
    json t;
    char* report = nullptr;
    int passed = 0;
    if (tp_sta(lib.lib, nl.nl, config.c_str(), &report, &passed) == TP_OK) {
      t = json::parse(take(report));
    }
    auto get = [&](const char* k) { return t.is_object() ? t[k] : json(); };
    std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %10s %10s %6zu %6zu %6zu  %s\n",
                  s["name"].get<std::string>().c_str(), fmt(get("period")).c_str(),
                  fmt(get("max_tb")).c_str(), fmt(get("act_tb")).c_str(),
                  fmt(get("worst_setup_slack")).c_str(), fmt(get("worst_hold_slack")).c_str(),
                  s["sequential"].get<std::size_t>(), s["combinational"].get<std::size_t>(),
                  s["total"].get<std::size_t>(), path.c_str());
    table << line;
  }
  emit(out, table.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flip-flop to two-phase latch conversion, verification and timing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tp_version());
  Options o;
  std::string input, original, out, to = "canonical", lags_path;
  std::size_t warmup = 0;
  std::vector<std::string> inputs;

  auto* parse = app.add_subcommand("parse", "Parse, validate and re-emit a netlist");
  add_common(parse, o);
  parse->add_option("input", input, "Netlist file")->required();
  parse->add_option("--emit", to, "Output format")->check(CLI::IsMember({"verilog", "canonical"}));
  parse->add_option("--out", out, "Output file (default: stdout)");

  auto* convert = app.add_subcommand("convert", "Convert a flip-flop design to two-phase latches");
  add_common(convert, o);
  add_clock(convert, o);
  add_equiv(convert, o);
  convert->add_option("input", input, "Netlist file")->required();
  convert->add_option("--variant", o.variant, "Transformation variant")
      ->check(CLI::IsMember({"clock-gated", "recirc-mux"}));
  convert->add_option("--retime", o.retime, "Retiming mode")
      ->check(CLI::IsMember({"off", "min-delay", "min-area", "both"}));
  convert->add_option("--out", out, "Output directory")->required();

  auto* verify = app.add_subcommand("verify", "Check two-coloring and equivalence");
  add_common(verify, o);
  add_clock(verify, o);
  add_equiv(verify, o);
  verify->add_option("input", input, "Two-phase netlist")->required();
  verify->add_option("--original", original, "Original flip-flop netlist")->required();
  verify->add_option("--warmup", warmup, "Cycles excluded from comparison");
  verify->add_option("--lags", lags_path, "lags.json from convert; sets warmup to max |lag|");
  verify->add_option("--out", out, "Report file (default: stdout)");

  auto* sta = app.add_subcommand("sta", "Latch static timing with time borrowing");
  add_common(sta, o);
  add_clock(sta, o);
  sta->add_option("input", input, "Two-phase netlist")->required();
  sta->add_option("--out", out, "Report file (default: stdout)");

  auto* report = app.add_subcommand("report", "Summary table over several designs");
  add_common(report, o);
  add_clock(report, o);
  report->add_option("inputs", inputs, "Netlist files")->required();
  report->add_option("--out", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse) return cmd_parse(o, input, to, out);
    if (*convert) return cmd_convert(o, input, out);
    if (*verify) return cmd_verify(o, input, original, warmup, lags_path, out);
    if (*sta) return cmd_sta(o, input, out);
    if (*report) return cmd_report(o, inputs, out);
  } catch (const CliError& e) {
    std::cerr << "twophase-cli: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitUsage;
}
