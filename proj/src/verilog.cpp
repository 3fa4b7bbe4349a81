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

#include "twophase/verilog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "twophase/error.hpp"

namespace twophase {

namespace {

enum class Tok { Ident, Escaped, Number, Literal, Symbol, AttrOpen, AttrClose, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw{
      "module",   "endmodule", "input",     "output",   "inout",    "wire",    "assign",
      "always",   "initial",   "reg",       "parameter", "localparam", "generate",
      "endgenerate", "function", "task",    "integer",  "genvar",   "always_ff",
      "always_comb", "always_latch", "logic", "begin", "end", "defparam", "specify",
      "supply0", "supply1", "tri"};
  return kw;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.span = here();
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(' && peek(1) == '*' && peek(2) != ')') {
      advance(2);
      t.kind = Tok::AttrOpen;
      t.text = "(*";
      return t;
    }
    if (c == '*' && peek(1) == ')') {
      advance(2);
      t.kind = Tok::AttrClose;
      t.text = "*)";
      return t;
    }
    if (c == '\\') {
      advance(1);
      std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance(1);
      }
      if (pos_ == start) throw ParseError(t.span, "empty escaped identifier");
      t.kind = Tok::Escaped;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '$')) {
        advance(1);
      }
      t.kind = Tok::Ident;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        advance(1);
      }
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        advance(1);
        if (pos_ < text_.size() && (text_[pos_] == 's' || text_[pos_] == 'S')) advance(1);
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
          throw ParseError(here(), "malformed based literal");
        }
        advance(1);
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance(1);
        }
        t.kind = Tok::Literal;
      } else {
        t.kind = Tok::Number;
      }
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::string_view("();,.[]:=#{}&|^~!+-*?<>@").find(c) != std::string_view::npos) {
      advance(1);
      t.kind = Tok::Symbol;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(t.span, std::string("unexpected character '") + c + "'");
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  SourceSpan here() const { return SourceSpan{file_, line_, col_}; }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (c == '/' && peek(1) == '*') {
        SourceSpan start = here();
        advance(2);
        while (pos_ < text_.size() && !(text_[pos_] == '*' && peek(1) == '/')) advance(1);
        if (pos_ >= text_.size()) throw ParseError(start, "unterminated block comment");
        advance(2);
      } else if (c == '`') {
        throw ParseError(here(), "unsupported construct: compiler directive");
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Range {
  int msb = 0;
  int lsb = 0;
  std::vector<int> bits() const {
    std::vector<int> out;
    int step = msb >= lsb ? -1 : 1;
    for (int i = msb;; i += step) {
      out.push_back(i);
      if (i == lsb) break;
    }
    return out;
  }
};

struct Signal {
  std::optional<Range> range;
  SourceSpan span;
};

using Attributes = std::map<std::string, std::string>;

class Parser {
 public:
  Parser(std::string_view text, const CellLibrary& lib, std::string file)
      : lexer_(text, file), lib_(lib), file_(std::move(file)) {
    tok_ = lexer_.next();
  }

  Netlist parse() {
    parse_attributes();
    expect_keyword("module");
    net_.name = identifier("module name");
    if (accept_symbol("(")) parse_header();
    expect_symbol(";");
    while (!is_keyword("endmodule")) {
      if (tok_.kind == Tok::End) throw ParseError(tok_.span, "missing endmodule");
      parse_item();
    }
    bump();
    if (tok_.kind != Tok::End) {
      throw ParseError(tok_.span, "unsupported construct: more than one module");
    }
    return finish();
  }

 private:
  // -- token helpers --------------------------------------------------------

  void bump() { tok_ = lexer_.next(); }

  bool is_keyword(std::string_view kw) const {
    return tok_.kind == Tok::Ident && tok_.text == kw;
  }
  bool is_symbol(std::string_view s) const {
    return tok_.kind == Tok::Symbol && tok_.text == s;
  }
  bool accept_symbol(std::string_view s) {
    if (!is_symbol(s)) return false;
    bump();
    return true;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) {
      throw ParseError(tok_.span, "expected '" + std::string(s) + "'" + found());
    }
  }
  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) {
      throw ParseError(tok_.span, "expected '" + std::string(kw) + "'" + found());
    }
    bump();
  }
  std::string found() const {
    if (tok_.kind == Tok::End) return " but found end of input";
    return " but found '" + tok_.text + "'";
  }

  std::string identifier(const char* what) {
    if (tok_.kind == Tok::Escaped ||
        (tok_.kind == Tok::Ident && !keywords().count(tok_.text))) {
      std::string s = tok_.text;
      bump();
      return s;
    }
    throw ParseError(tok_.span, std::string("expected ") + what + found());
  }

  int number() {
    if (tok_.kind != Tok::Number) throw ParseError(tok_.span, "expected number" + found());
    int v = std::stoi(tok_.text);
    bump();
    return v;
  }

  [[noreturn]] void unsupported(const std::string& what) {
    throw ParseError(tok_.span, "unsupported construct: " + what);
  }

  // -- grammar --------------------------------------------------------------

  Attributes parse_attributes() {
    Attributes attrs;
    while (tok_.kind == Tok::AttrOpen) {
      bump();
      while (tok_.kind != Tok::AttrClose) {
        std::string key = identifier("attribute name");
        std::string value = "1";
        if (accept_symbol("=")) {
          if (tok_.kind == Tok::End) throw ParseError(tok_.span, "unterminated attribute");
          value = tok_.text;
          bump();
        }
        attrs[key] = value;
        if (!accept_symbol(",")) break;
      }
      if (tok_.kind != Tok::AttrClose) throw ParseError(tok_.span, "expected '*)'" + found());
      bump();
    }
    return attrs;
  }

  std::optional<Range> parse_range() {
    if (!accept_symbol("[")) return std::nullopt;
    Range r;
    r.msb = number();
    expect_symbol(":");
    r.lsb = number();
    expect_symbol("]");
    return r;
  }

  void parse_header() {
    if (accept_symbol(")")) return;
    parse_attributes();
    if (is_keyword("input") || is_keyword("output") || is_keyword("inout")) {
      // ANSI-style header.
      PortDir dir = PortDir::Input;
      std::optional<Range> range;
      Attributes attrs;
      do {
        Attributes more = parse_attributes();
        if (is_keyword("input") || is_keyword("output") || is_keyword("inout")) {
          if (is_keyword("inout")) unsupported("inout port");
          dir = is_keyword("input") ? PortDir::Input : PortDir::Output;
          bump();
          if (is_keyword("wire")) bump();
          range = parse_range();
          attrs = more;
        }
        SourceSpan span = tok_.span;
        std::string name = identifier("port name");
        header_.push_back(name);
        declare_port(name, dir, range, attrs, span);
      } while (accept_symbol(","));
      expect_symbol(")");
      return;
    }
    do {
      header_.push_back(identifier("port name"));
    } while (accept_symbol(","));
    expect_symbol(")");
  }

  void declare_signal(const std::string& name, std::optional<Range> range, SourceSpan span) {
    auto it = signals_.find(name);
    if (it != signals_.end()) {
      bool same = (!it->second.range && !range) ||
                  (it->second.range && range && it->second.range->msb == range->msb &&
                   it->second.range->lsb == range->lsb);
      if (!same) throw ParseError(span, "conflicting redeclaration of " + name);
      return;
    }
    signals_[name] = Signal{range, span};
    for (const auto& bit : bit_names(name)) net_.nets.insert(bit);
  }

  void declare_port(const std::string& name, PortDir dir, std::optional<Range> range,
                    const Attributes& attrs, SourceSpan span) {
    if (port_dirs_.count(name)) throw ParseError(span, "port " + name + " declared twice");
    declare_signal(name, range, span);
    port_dirs_[name] = dir;
    if (attrs.count("clock")) clock_attr_.insert(name);
  }

  std::vector<std::string> bit_names(const std::string& name) const {
    const Signal& s = signals_.at(name);
    if (!s.range) return {name};
    std::vector<std::string> out;
    for (int b : s.range->bits()) out.push_back(name + "[" + std::to_string(b) + "]");
    return out;
  }

  void parse_item() {
    SourceSpan item_span = tok_.span;
    Attributes attrs = parse_attributes();
    if (tok_.kind == Tok::Ident && keywords().count(tok_.text)) {
      const std::string kw = tok_.text;
      if (kw == "input" || kw == "output") {
        PortDir dir = kw == "input" ? PortDir::Input : PortDir::Output;
        bump();
        if (is_keyword("wire")) bump();
        auto range = parse_range();
        do {
          SourceSpan span = tok_.span;
          std::string name = identifier("port name");
          if (std::find(header_.begin(), header_.end(), name) == header_.end()) {
            throw ParseError(span, name + " is not in the module port list");
          }
          declare_port(name, dir, range, attrs, span);
        } while (accept_symbol(","));
        expect_symbol(";");
        return;
      }
      if (kw == "wire") {
        bump();
        auto range = parse_range();
        do {
          SourceSpan span = tok_.span;
          std::string name = identifier("wire name");
          if (is_symbol("=")) unsupported("net declaration assignment");
          declare_signal(name, range, span);
        } while (accept_symbol(","));
        expect_symbol(";");
        return;
      }
      if (kw == "assign") {
        bump();
        SourceSpan span = tok_.span;
        std::string lhs = net_ref(/*allow_literal=*/false);
        expect_symbol("=");
        std::string rhs = net_ref(/*allow_literal=*/true);
        if (!is_symbol(";")) unsupported("expression in assign");
        bump();
        aliases_.push_back({lhs, rhs, span});
        return;
      }
      if (kw == "always" || kw == "always_ff" || kw == "always_comb" || kw == "always_latch" ||
          kw == "initial") {
        unsupported("behavioral block");
      }
      if (kw == "parameter" || kw == "localparam" || kw == "defparam") unsupported("parameters");
      if (kw == "inout") unsupported("inout port");
      unsupported(kw + " declaration");
    }
    parse_instance(attrs, item_span);
  }

  // A single-bit reference: name, name[i], or (when allowed) a literal.
  std::string net_ref(bool allow_literal) {
    if (tok_.kind == Tok::Literal) {
      if (!allow_literal) throw ParseError(tok_.span, "literal not allowed here");
      std::string lit = tok_.text;
      SourceSpan span = tok_.span;
      bump();
      std::string lower = lit;
      std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
      if (lower == "1'b0" || lower == "1'h0" || lower == "1'd0") {
        net_.nets.insert(net_.const_zero);
        return net_.const_zero;
      }
      if (lower == "1'b1" || lower == "1'h1" || lower == "1'd1") {
        net_.nets.insert(net_.const_one);
        return net_.const_one;
      }
      throw ParseError(span, "unsupported construct: literal " + lit + " (only 1'b0/1'b1)");
    }
    if (is_symbol("{")) unsupported("concatenation");
    if (tok_.kind == Tok::Symbol && std::string_view("&|^~!+-*?<>@").find(tok_.text[0]) !=
                                        std::string_view::npos) {
      unsupported("expression");
    }
    SourceSpan span = tok_.span;
    bool escaped = tok_.kind == Tok::Escaped;
    std::string name = identifier("net name");
    if (!escaped && is_symbol("[")) {
      bump();
      int bit = number();
      if (is_symbol(":")) unsupported("part-select");
      expect_symbol("]");
      auto it = signals_.find(name);
      if (it == signals_.end() || !it->second.range) {
        throw ParseError(span, "bit-select of undeclared vector " + name);
      }
      auto bits = it->second.range->bits();
      if (std::find(bits.begin(), bits.end(), bit) == bits.end()) {
        throw ParseError(span, "index " + std::to_string(bit) + " out of range for " + name);
      }
      return name + "[" + std::to_string(bit) + "]";
    }
    if (tok_.kind == Tok::Symbol && std::string_view("&|^~!+-*?").find(tok_.text[0]) !=
                                        std::string_view::npos) {
      unsupported("expression");
    }
    auto it = signals_.find(name);
    if (it == signals_.end()) {
      if (escaped || !net_.nets.count(name)) {
        // Implicit scalar net.
        net_.nets.insert(name);
      }
      return name;
    }
    if (it->second.range) {
      throw ParseError(span, "unsupported construct: vector " + name +
                                 " connected without a bit-select");
    }
    return name;
  }

  void parse_instance(const Attributes& attrs, SourceSpan item_span) {
    SourceSpan kind_span = tok_.span;
    std::string kind_name = identifier("cell kind");
    const CellKind* kind = lib_.find(kind_name);
    if (is_symbol("#")) unsupported("parameters");
    if (!kind) throw ParseError(kind_span, "unknown cell kind " + kind_name);
    SourceSpan inst_span = tok_.span;
    Instance inst;
    inst.name = identifier("instance name");
    inst.kind = kind_name;
    if (is_symbol("[")) unsupported("instance array");
    expect_symbol("(");
    if (!is_symbol(")")) {
      do {
        if (!is_symbol(".")) {
          throw ParseError(tok_.span, "positional port connections are not supported");
        }
        bump();
        SourceSpan pin_span = tok_.span;
        std::string pin = identifier("pin name");
        if (!kind->pin(pin)) {
          throw ParseError(pin_span, "unknown pin " + pin + " on cell kind " + kind_name);
        }
        expect_symbol("(");
        if (is_symbol(")")) {
          throw ParseError(pin_span, "dangling pin " + inst.name + "." + pin + " is unconnected");
        }
        std::string net = net_ref(/*allow_literal=*/true);
        expect_symbol(")");
        if (!inst.pins.emplace(pin, net).second) {
          throw ParseError(pin_span, "pin " + pin + " connected twice");
        }
      } while (accept_symbol(","));
    }
    expect_symbol(")");
    expect_symbol(";");
    for (const auto& p : kind->pins) {
      if (!inst.pins.count(p.name)) {
        throw ParseError(inst_span, "dangling pin " + inst.name + "." + p.name + " is unconnected");
      }
    }
    if (auto it = attrs.find("init"); it != attrs.end()) {
      inst.init = (it->second == "1" || it->second == "1'b1") ? 1 : 0;
    }
    if (spans_.count(inst.name)) throw ParseError(inst_span, "duplicate instance " + inst.name);
    spans_[inst.name] = inst_span;
    (void)item_span;
    net_.instances.push_back(std::move(inst));
  }

  // -- post-processing ------------------------------------------------------

  struct Alias {
    std::string lhs, rhs;
    SourceSpan span;
  };

  void apply_aliases() {
    if (aliases_.empty()) return;
    std::map<std::string, std::string> parent;
    auto find = [&](std::string x) {
      while (parent.count(x) && parent[x] != x) x = parent[x];
      return x;
    };
    for (const auto& a : aliases_) {
      parent.try_emplace(a.lhs, a.lhs);
      parent.try_emplace(a.rhs, a.rhs);
      std::string l = find(a.lhs), r = find(a.rhs);
      if (l != r) parent[l] = r;
    }
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [n, _] : parent) groups[find(n)].push_back(n);

    std::set<std::string> taken = used_names(net_);
    for (auto& [root, members] : groups) {
      std::vector<std::string> inputs, outputs, consts, plain;
      for (const auto& m : members) {
        const Port* p = net_.port(m);
        if (net_.is_constant(m)) {
          consts.push_back(m);
        } else if (p && p->dir == PortDir::Input) {
          inputs.push_back(m);
        } else if (p) {
          outputs.push_back(m);
        } else {
          plain.push_back(m);
        }
      }
      if (inputs.size() + consts.size() > 1) {
        throw ParseError(alias_span(members), "assign shorts two driven nets");
      }
      std::string rep;
      if (!inputs.empty()) {
        rep = inputs.front();
      } else if (!consts.empty()) {
        rep = consts.front();
      } else if (!outputs.empty()) {
        rep = outputs.front();
      } else {
        rep = alias_rhs_root(members);
      }
      for (const auto& m : plain) {
        if (m != rep) {
          net_.rename_net(m, rep);
          signals_.erase(m);
        }
      }
      for (const auto& o : outputs) {
        if (o == rep) continue;
        if (!lib_.find(cells::kBuf)) {
          throw ParseError(alias_span(members),
                           "assign between ports needs a BUF cell in the library");
        }
        Instance buf;
        buf.name = unique_name("$assign_" + o, taken);
        buf.kind = std::string(cells::kBuf);
        const CellKind& bk = lib_.at(cells::kBuf);
        buf.pins[bk.inputs.front()] = rep;
        buf.pins[bk.output_pin()] = o;
        net_.instances.push_back(std::move(buf));
      }
    }
  }

  SourceSpan alias_span(const std::vector<std::string>& members) const {
    for (const auto& a : aliases_) {
      if (std::find(members.begin(), members.end(), a.lhs) != members.end()) return a.span;
    }
    return SourceSpan{file_, 1, 1};
  }

  std::string alias_rhs_root(const std::vector<std::string>& members) const {
    for (const auto& a : aliases_) {
      if (std::find(members.begin(), members.end(), a.rhs) != members.end()) return a.rhs;
    }
    return members.front();
  }

  Netlist finish() {
    for (const auto& name : header_) {
      auto it = port_dirs_.find(name);
      if (it == port_dirs_.end()) {
        throw ParseError(signals_.count(name) ? signals_.at(name).span : SourceSpan{file_, 1, 1},
                         "port " + name + " has no direction declaration");
      }
      for (const auto& bit : bit_names(name)) {
        net_.ports.push_back(Port{bit, it->second, PortKind::Data});
      }
    }
    apply_aliases();
    net_.sort_instances();

    // Clock classification: attribute, else drives a sequential clock pin.
    std::set<std::string> clock_nets;
    for (const auto& inst : net_.instances) {
      const CellKind& k = lib_.at(inst.kind);
      if (!k.is_sequential()) continue;
      const PinDef* c = k.pin_with_role(PinRole::Clock);
      clock_nets.insert(inst.pins.at(c->name));
    }
    for (auto& p : net_.ports) {
      std::string base = p.name.substr(0, p.name.find('['));
      if (p.dir == PortDir::Input && (clock_attr_.count(base) || clock_nets.count(p.name))) {
        p.kind = PortKind::Clock;
      }
    }

    auto errors = structural_errors(net_, lib_);
    if (!errors.empty()) {
      const Diagnostic& d = errors.front();
      SourceSpan span{file_, 1, 1};
      if (auto it = spans_.find(d.locus); it != spans_.end()) {
        span = it->second;
      } else if (auto sit = signals_.find(d.locus.substr(0, d.locus.find('[')));
                 sit != signals_.end()) {
        span = sit->second.span;
      } else {
        span = first_driver_span(d.locus);
      }
      throw ParseError(span, d.message);
    }
    return std::move(net_);
  }

  SourceSpan first_driver_span(const std::string& net) const {
    for (const auto& inst : net_.instances) {
      for (const auto& [pin, n] : inst.pins) {
        if (n == net && spans_.count(inst.name)) return spans_.at(inst.name);
      }
    }
    return SourceSpan{file_, 1, 1};
  }

  Lexer lexer_;
  const CellLibrary& lib_;
  std::string file_;
  Token tok_;
  Netlist net_;
  std::vector<std::string> header_;
  std::map<std::string, Signal> signals_;
  std::map<std::string, PortDir> port_dirs_;
  std::set<std::string> clock_attr_;
  std::vector<Alias> aliases_;
  std::map<std::string, SourceSpan> spans_;
};

bool simple_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')) return false;
  }
  return !keywords().count(s);
}

}  // namespace

Netlist parse_verilog(std::string_view text, const CellLibrary& library, const std::string& file) {
  return Parser(text, library, file).parse();
}

std::string verilog_identifier(const std::string& name) {
  if (simple_identifier(name)) return name;
  return "\\" + name + " ";
}

std::string emit_verilog(const Netlist& netlist) {
  auto ref = [&](const std::string& net) {
    if (net == netlist.const_zero) return std::string("1'b0");
    if (net == netlist.const_one) return std::string("1'b1");
    return verilog_identifier(net);
  };
  std::ostringstream os;
  os << "module " << verilog_identifier(netlist.name) << "(";
  for (std::size_t i = 0; i < netlist.ports.size(); ++i) {
    os << (i ? ", " : "") << verilog_identifier(netlist.ports[i].name);
  }
  os << ");\n";
  std::set<std::string> port_names;
  for (const auto& p : netlist.ports) {
    port_names.insert(p.name);
    if (p.kind == PortKind::Clock) os << "  (* clock *)\n";
    os << "  " << (p.dir == PortDir::Input ? "input " : "output ") << verilog_identifier(p.name)
       << ";\n";
  }
  for (const auto& n : netlist.nets) {
    if (port_names.count(n) || netlist.is_constant(n)) continue;
    os << "  wire " << verilog_identifier(n) << ";\n";
  }
  std::vector<const Instance*> sorted;
  for (const auto& i : netlist.instances) sorted.push_back(&i);
  std::sort(sorted.begin(), sorted.end(),
            [](const Instance* a, const Instance* b) { return a->name < b->name; });
  for (const Instance* inst : sorted) {
    if (inst->init) os << "  (* init = 1 *)\n";
    os << "  " << verilog_identifier(inst->kind) << " " << verilog_identifier(inst->name) << " (";
    bool first = true;
    for (const auto& [pin, net] : inst->pins) {
      os << (first ? "" : ", ") << "." << pin << "(" << ref(net) << ")";
      first = false;
    }
    os << ");\n";
  }
  os << "endmodule\n";
  return os.str();
}

}  // namespace twophase
