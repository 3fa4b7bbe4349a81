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

#include "twophase/library.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>

#include "json_util.hpp"
#include "twophase/error.hpp"

namespace twophase {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Library: return "library";
    case ErrorCode::Netlist: return "netlist";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Transform: return "transform";
    case ErrorCode::Retime: return "retime";
    case ErrorCode::Simulation: return "simulation";
    case ErrorCode::Verify: return "verify";
    case ErrorCode::Timing: return "timing";
    case ErrorCode::Io: return "io";
    case ErrorCode::Usage: return "usage";
  }
  return "unknown";
}

const char* to_string(PinRole role) {
  switch (role) {
    case PinRole::Data: return "data";
    case PinRole::Clock: return "clock";
    case PinRole::Enable: return "enable";
    case PinRole::Reset: return "reset";
    case PinRole::Set: return "set";
    case PinRole::Select: return "select";
    case PinRole::Output: return "output";
  }
  return "data";
}

const char* to_string(SeqControl c) {
  switch (c) {
    case SeqControl::Enable: return "enable";
    case SeqControl::SyncReset0: return "sync-reset-0";
    case SeqControl::SyncSet1: return "sync-set-1";
    case SeqControl::AsyncReset0: return "async-reset-0";
    case SeqControl::AsyncSet1: return "async-set-1";
  }
  return "enable";
}

const PinDef* CellKind::pin(std::string_view pin_name) const {
  for (const auto& p : pins) {
    if (p.name == pin_name) return &p;
  }
  return nullptr;
}

const PinDef* CellKind::pin_with_role(PinRole role) const {
  for (const auto& p : pins) {
    if (p.role == role) return &p;
  }
  return nullptr;
}

const std::string& CellKind::output_pin() const {
  for (const auto& p : pins) {
    if (p.dir == PinDir::Out) return p.name;
  }
  throw Error(ErrorCode::Library, "cell kind " + name + " has no output pin");
}

const PinDef* CellKind::control_pin(SeqControl control) const {
  switch (control) {
    case SeqControl::Enable: return pin_with_role(PinRole::Enable);
    case SeqControl::SyncReset0:
    case SeqControl::AsyncReset0: return pin_with_role(PinRole::Reset);
    case SeqControl::SyncSet1:
    case SeqControl::AsyncSet1: return pin_with_role(PinRole::Set);
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Boolean expressions

namespace {

struct Expr {
  enum class Op { Var, Const, Not, And, Or, Xor } op = Op::Const;
  int var = 0;
  bool value = false;
  std::unique_ptr<Expr> lhs, rhs;

  bool eval(std::uint32_t bits) const {
    switch (op) {
      case Op::Var: return (bits >> var) & 1U;
      case Op::Const: return value;
      case Op::Not: return !lhs->eval(bits);
      case Op::And: return lhs->eval(bits) && rhs->eval(bits);
      case Op::Or: return lhs->eval(bits) || rhs->eval(bits);
      case Op::Xor: return lhs->eval(bits) != rhs->eval(bits);
    }
    return false;
  }
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& inputs)
      : text_(text), inputs_(inputs) {}

  std::unique_ptr<Expr> parse() {
    auto e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Library, "function '" + std::string(text_) +
                                        "': " + what + " at offset " +
                                        std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::unique_ptr<Expr> binary(Expr::Op op, std::unique_ptr<Expr> l,
                                      std::unique_ptr<Expr> r) {
    auto e = std::make_unique<Expr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  std::unique_ptr<Expr> parse_or() {
    auto e = parse_xor();
    while (accept('|') || accept('+')) e = binary(Expr::Op::Or, std::move(e), parse_xor());
    return e;
  }

  std::unique_ptr<Expr> parse_xor() {
    auto e = parse_and();
    while (accept('^')) e = binary(Expr::Op::Xor, std::move(e), parse_and());
    return e;
  }

  std::unique_ptr<Expr> parse_and() {
    auto e = parse_unary();
    while (accept('&') || accept('*')) e = binary(Expr::Op::And, std::move(e), parse_unary());
    return e;
  }

  std::unique_ptr<Expr> parse_unary() {
    if (accept('!') || accept('~')) {
      auto e = std::make_unique<Expr>();
      e->op = Expr::Op::Not;
      e->lhs = parse_unary();
      return e;
    }
    if (accept('(')) {
      auto e = parse_or();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      auto e = std::make_unique<Expr>();
      e->op = Expr::Op::Const;
      e->value = c == '1';
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view id = text_.substr(start, pos_ - start);
      auto it = std::find(inputs_.begin(), inputs_.end(), id);
      if (it == inputs_.end()) {
        pos_ = start;
        fail("references undeclared input pin '" + std::string(id) + "'");
      }
      auto e = std::make_unique<Expr>();
      e->op = Expr::Op::Var;
      e->var = static_cast<int>(it - inputs_.begin());
      return e;
    }
    fail("unexpected character");
  }

  std::string_view text_;
  const std::vector<std::string>& inputs_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kMaxCombInputs = 16;

}  // namespace

std::vector<std::uint8_t> compile_function(std::string_view expr,
                                           const std::vector<std::string>& inputs) {
  if (inputs.size() > kMaxCombInputs) {
    throw Error(ErrorCode::Library, "combinational cell has more than 16 inputs");
  }
  auto tree = ExprParser(expr, inputs).parse();
  std::vector<std::uint8_t> table(std::size_t{1} << inputs.size());
  for (std::uint32_t bits = 0; bits < table.size(); ++bits) {
    table[bits] = tree->eval(bits) ? 1 : 0;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Library

const CellKind* CellLibrary::find(std::string_view name) const {
  auto it = cells_.find(name);
  return it == cells_.end() ? nullptr : &it->second;
}

const CellKind& CellLibrary::at(std::string_view name) const {
  if (const CellKind* k = find(name)) return *k;
  throw Error(ErrorCode::Netlist, "unknown cell kind " + std::string(name));
}

namespace {

void check_timing(const CellKind& k) {
  const TimingData& t = k.timing;
  for (double v : {t.delay_max, t.delay_min, t.d_to_q_min, t.setup, t.hold}) {
    if (v < 0) throw Error(ErrorCode::Library, k.name + ": negative timing value");
  }
  if (t.delay_min > t.delay_max) {
    throw Error(ErrorCode::Library, k.name + ": delay_min exceeds delay_max");
  }
}

bool supported_controls(const std::vector<SeqControl>& controls) {
  // One control at most: {}, {E}, {R0}, {S1} in sync or async flavour.
  return controls.size() <= 1;
}

void check_sequential(const CellKind& k) {
  int clocks = 0, data = 0, outputs = 0;
  for (const auto& p : k.pins) {
    if (p.role == PinRole::Clock) ++clocks;
    if (p.role == PinRole::Data && p.dir == PinDir::In) ++data;
    if (p.dir == PinDir::Out) ++outputs;
  }
  if (clocks == 0) {
    throw Error(ErrorCode::Library, k.name + ": sequential kind without clock");
  }
  if (clocks > 1) {
    throw Error(ErrorCode::Library, k.name + ": sequential kind with more than one clock pin");
  }
  if (data != 1 || outputs != 1) {
    throw Error(ErrorCode::Library,
                k.name + ": sequential kind needs exactly one data input and one output");
  }
  if (k.is_latch() && !k.controls.empty()) {
    throw Error(ErrorCode::Library, k.name + ": latches take no controls");
  }
  if (!supported_controls(k.controls)) {
    throw Error(ErrorCode::Library, k.name + ": unsupported flip-flop control combination");
  }
  std::set<const PinDef*> used;
  for (SeqControl c : k.controls) {
    const PinDef* p = k.control_pin(c);
    if (p == nullptr || p->dir != PinDir::In) {
      throw Error(ErrorCode::Library, k.name + ": control '" + to_string(c) +
                                          "' has no matching pin role");
    }
    used.insert(p);
  }
  for (const auto& p : k.pins) {
    bool ctl = p.role == PinRole::Enable || p.role == PinRole::Reset || p.role == PinRole::Set;
    if (ctl && !used.count(&p)) {
      throw Error(ErrorCode::Library,
                  k.name + ": pin " + p.name + " has a control role but no declared control");
    }
  }
}

void check_comb(CellKind& k) {
  int outputs = 0;
  k.inputs.clear();
  for (const auto& p : k.pins) {
    if (p.dir == PinDir::Out) {
      ++outputs;
    } else {
      k.inputs.push_back(p.name);
    }
  }
  if (outputs != 1) {
    throw Error(ErrorCode::Library, k.name + ": combinational kind needs exactly one output");
  }
  if (k.function.empty()) {
    throw Error(ErrorCode::Library, k.name + ": combinational kind without function");
  }
  k.truth = compile_function(k.function, k.inputs);
}

}  // namespace

void CellLibrary::add(CellKind kind) {
  if (kind.name.empty()) throw Error(ErrorCode::Library, "cell kind without name");
  if (cells_.count(kind.name)) {
    throw Error(ErrorCode::Library, "duplicate cell name " + kind.name);
  }
  std::set<std::string> pin_names;
  for (const auto& p : kind.pins) {
    if (!pin_names.insert(p.name).second) {
      throw Error(ErrorCode::Library, kind.name + ": duplicate pin " + p.name);
    }
    if ((p.dir == PinDir::Out) != (p.role == PinRole::Output)) {
      throw Error(ErrorCode::Library,
                  kind.name + ": pin " + p.name + " direction disagrees with role");
    }
  }
  check_timing(kind);
  if (kind.is_sequential()) {
    check_sequential(kind);
  } else {
    check_comb(kind);
  }
  std::string key = kind.name;
  cells_.emplace(std::move(key), std::move(kind));
}

namespace {

PinRole parse_role(const std::string& s, const std::string& where) {
  static const std::map<std::string, PinRole> roles{
      {"data", PinRole::Data},     {"clock", PinRole::Clock},   {"enable", PinRole::Enable},
      {"reset", PinRole::Reset},   {"set", PinRole::Set},       {"select", PinRole::Select},
      {"output", PinRole::Output},
  };
  auto it = roles.find(s);
  if (it == roles.end()) throw Error(ErrorCode::Parse, where + ": unknown pin role '" + s + "'");
  return it->second;
}

SeqControl parse_control(const std::string& s, const std::string& where) {
  static const std::map<std::string, SeqControl> controls{
      {"enable", SeqControl::Enable},
      {"sync-reset-0", SeqControl::SyncReset0},
      {"sync-set-1", SeqControl::SyncSet1},
      {"async-reset-0", SeqControl::AsyncReset0},
      {"async-set-1", SeqControl::AsyncSet1},
  };
  auto it = controls.find(s);
  if (it == controls.end()) {
    throw Error(ErrorCode::Parse, where + ": unknown control '" + s + "'");
  }
  return it->second;
}

}  // namespace

CellLibrary load_library(std::string_view json_text) {
  using detail::json;
  json doc = detail::parse_json(json_text, "<library>");
  const json& cells = detail::require(doc, "cells", "library");
  if (!cells.is_array()) throw Error(ErrorCode::Parse, "library: 'cells' must be an array");

  CellLibrary lib;
  for (const json& c : cells) {
    CellKind k;
    k.name = detail::require_string(c, "name", "cell");
    std::string where = "cell " + k.name;
    for (const json& p : detail::require(c, "pins", where)) {
      PinDef pin;
      pin.name = detail::require_string(p, "name", where);
      std::string dir = detail::require_string(p, "dir", where);
      if (dir != "in" && dir != "out") {
        throw Error(ErrorCode::Parse, where + ": pin direction must be 'in' or 'out'");
      }
      pin.dir = dir == "in" ? PinDir::In : PinDir::Out;
      pin.role = parse_role(detail::require_string(p, "role", where), where);
      k.pins.push_back(std::move(pin));
    }
    const json& beh = detail::require(c, "behavior", where);
    std::string type = detail::require_string(beh, "type", where);
    if (type == "comb") {
      k.type = BehaviorType::Comb;
      k.function = detail::require_string(beh, "function", where);
    } else if (type == "dff") {
      k.type = BehaviorType::Dff;
      if (beh.contains("controls")) {
        for (const json& ctl : beh.at("controls")) {
          k.controls.push_back(parse_control(ctl.get<std::string>(), where));
        }
      }
    } else if (type == "latch") {
      k.type = BehaviorType::Latch;
    } else {
      throw Error(ErrorCode::Parse, where + ": unknown behavior type '" + type + "'");
    }
    if (c.contains("timing")) {
      const json& t = c.at("timing");
      k.timing.delay_max = detail::get_number(t, "delay_max", 0.0, where);
      k.timing.delay_min = detail::get_number(t, "delay_min", 0.0, where);
      k.timing.d_to_q_min = detail::get_number(t, "d_to_q_min", 0.0, where);
      k.timing.setup = detail::get_number(t, "setup", 0.0, where);
      k.timing.hold = detail::get_number(t, "hold", 0.0, where);
    }
    lib.add(std::move(k));
  }
  return lib;
}

std::string_view default_library_json() {
  static constexpr std::string_view kJson = R"json({
  "cells": [
    {"name": "BUF", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "A"},
     "timing": {"delay_max": 0.08, "delay_min": 0.05}},
    {"name": "INV", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "!A"},
     "timing": {"delay_max": 0.05, "delay_min": 0.03}},
    {"name": "AND2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "A & B"},
     "timing": {"delay_max": 0.12, "delay_min": 0.07}},
    {"name": "OR2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "A | B"},
     "timing": {"delay_max": 0.14, "delay_min": 0.08}},
    {"name": "NAND2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "!(A & B)"},
     "timing": {"delay_max": 0.07, "delay_min": 0.04}},
    {"name": "NOR2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "!(A | B)"},
     "timing": {"delay_max": 0.09, "delay_min": 0.05}},
    {"name": "XOR2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "A ^ B"},
     "timing": {"delay_max": 0.18, "delay_min": 0.10}},
    {"name": "XNOR2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "!(A ^ B)"},
     "timing": {"delay_max": 0.18, "delay_min": 0.10}},
    {"name": "AND3", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "A & B & C"},
     "timing": {"delay_max": 0.16, "delay_min": 0.09}},
    {"name": "OR3", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "data"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "A | B | C"},
     "timing": {"delay_max": 0.19, "delay_min": 0.10}},
    {"name": "MUX2", "pins": [{"name": "A", "dir": "in", "role": "data"}, {"name": "B", "dir": "in", "role": "data"}, {"name": "S", "dir": "in", "role": "select"}, {"name": "Y", "dir": "out", "role": "output"}],
     "behavior": {"type": "comb", "function": "(S & B) | (!S & A)"},
     "timing": {"delay_max": 0.20, "delay_min": 0.11}},
    {"name": "_DFF_P_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "clock"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "dff"},
     "timing": {"delay_max": 0.30, "delay_min": 0.22, "d_to_q_min": 0.22, "setup": 0.10, "hold": 0.04}},
    {"name": "_DFFE_PP_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "clock"}, {"name": "E", "dir": "in", "role": "enable"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "dff", "controls": ["enable"]},
     "timing": {"delay_max": 0.32, "delay_min": 0.23, "d_to_q_min": 0.23, "setup": 0.12, "hold": 0.04}},
    {"name": "_DFF_PP0_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "clock"}, {"name": "R", "dir": "in", "role": "reset"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "dff", "controls": ["async-reset-0"]},
     "timing": {"delay_max": 0.33, "delay_min": 0.23, "d_to_q_min": 0.23, "setup": 0.11, "hold": 0.05}},
    {"name": "_DFF_PP1_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "clock"}, {"name": "S", "dir": "in", "role": "set"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "dff", "controls": ["async-set-1"]},
     "timing": {"delay_max": 0.33, "delay_min": 0.23, "d_to_q_min": 0.23, "setup": 0.11, "hold": 0.05}},
    {"name": "_SDFF_PP0_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "clock"}, {"name": "R", "dir": "in", "role": "reset"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "dff", "controls": ["sync-reset-0"]},
     "timing": {"delay_max": 0.31, "delay_min": 0.22, "d_to_q_min": 0.22, "setup": 0.14, "hold": 0.04}},
    {"name": "_SDFF_PP1_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "C", "dir": "in", "role": "clock"}, {"name": "S", "dir": "in", "role": "set"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "dff", "controls": ["sync-set-1"]},
     "timing": {"delay_max": 0.31, "delay_min": 0.22, "d_to_q_min": 0.22, "setup": 0.14, "hold": 0.04}},
    {"name": "_DLATCH_P_", "pins": [{"name": "D", "dir": "in", "role": "data"}, {"name": "E", "dir": "in", "role": "clock"}, {"name": "Q", "dir": "out", "role": "output"}],
     "behavior": {"type": "latch"},
     "timing": {"delay_max": 0.26, "delay_min": 0.17, "d_to_q_min": 0.17, "setup": 0.056, "hold": 0.03}}
  ]
})json";
  return kJson;
}

const CellLibrary& default_library() {
  static const CellLibrary lib = load_library(default_library_json());
  return lib;
}

}  // namespace twophase
