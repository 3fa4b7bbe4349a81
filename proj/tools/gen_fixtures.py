# Copyright 2026 The twophase Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the structural Verilog test fixtures into tests/fixtures/."""

import json
import pathlib
import sys

HEADER = """// Copyright 2026 The twophase Authors
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

// Generated by tools/gen_fixtures.py.
"""

OUTPUT_PIN = {"_DFF_P_": "Q", "_DFFE_PP_": "Q", "_DFF_PP0_": "Q", "_DFF_PP1_": "Q",
              "_SDFF_PP0_": "Q", "_SDFF_PP1_": "Q", "_DLATCH_P_": "Q"}


class Module:
  def __init__(self, name):
    self.name = name
    self.inputs = []
    self.outputs = []
    self.wires = []
    self.insts = []
    self.assigns = []
    self.counter = 0

  def input(self, name, width=None):
    self.inputs.append((name, width))
    return name if width is None else [f"{name}[{i}]" for i in range(width)]

  def output(self, name, width=None):
    self.outputs.append((name, width))
    return name if width is None else [f"{name}[{i}]" for i in range(width)]

  def wire(self, base="n"):
    self.counter += 1
    name = f"{base}{self.counter}"
    self.wires.append(name)
    return name

  def cell(self, kind, out=None, init=False, name=None, **pins):
    pin = OUTPUT_PIN.get(kind, "Y")
    if out is None:
      out = self.wire()
    self.counter += 1
    inst = name or f"u{self.counter}"
    pins[pin] = out
    self.insts.append((inst, kind, pins, init))
    return out

  def g(self, kind, *args, **kw):
    names = {1: ["A"], 2: ["A", "B"], 3: ["A", "B", "C"]}[len(args)]
    return self.cell(kind, **dict(zip(names, args)), **kw)

  def mux(self, s, a, b, **kw):
    return self.cell("MUX2", A=a, B=b, S=s, **kw)

  def emit(self):
    ports = [n for n, _ in self.inputs] + [n for n, _ in self.outputs]
    lines = [HEADER, f"module {self.name} ({', '.join(ports)});"]
    for n, w in self.inputs:
      lines.append(f"  input {'' if w is None else f'[{w - 1}:0] '}{n};")
    for n, w in self.outputs:
      lines.append(f"  output {'' if w is None else f'[{w - 1}:0] '}{n};")
    for n in self.wires:
      lines.append(f"  wire {n};")
    for inst, kind, pins, init in self.insts:
      if init:
        lines.append("  (* init = 1 *)")
      conns = ", ".join(f".{p}({n})" for p, n in sorted(pins.items()))
      lines.append(f"  {kind} {inst} ({conns});")
    for lhs, rhs in self.assigns:
      lines.append(f"  assign {lhs} = {rhs};")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


def counter_en():
  m = Module("counter_en")
  clk = m.input("clk")
  en = m.input("en")
  q = m.output("q", 4)
  carry = None
  for i in range(4):
    if i == 0:
      d = m.g("INV", q[0])
    else:
      d = m.g("XOR2", q[i], carry)
    carry = q[0] if i == 0 else m.g("AND2", carry, q[i])
    m.cell("_DFFE_PP_", out=q[i], name=f"cnt_{i}", D=d, C=clk, E=en)
  return m


def subtract(m, x, y):
  diff, borrow = [], "1'b0"
  for i in range(len(x)):
    t = m.g("XOR2", x[i], y[i])
    diff.append(m.g("XOR2", t, borrow) if borrow != "1'b0" else t)
    nx = m.g("INV", x[i])
    gen = m.g("AND2", nx, y[i])
    if borrow == "1'b0":
      borrow = gen
    else:
      prop = m.g("AND2", m.g("INV", t), borrow)
      borrow = m.g("OR2", gen, prop)
  return diff, borrow


def gcd_fsm():
  m = Module("gcd_fsm")
  clk = m.input("clk")
  start = m.input("start")
  ain = m.input("ain", 3)
  bin_ = m.input("bin", 3)
  res = m.output("res", 3)
  done = m.output("done")
  a = res
  b = [m.wire("b") for _ in range(3)]
  busy = m.wire("busy")
  a_minus_b, a_lt_b = subtract(m, a, b)
  b_minus_a, b_lt_a = subtract(m, b, a)
  eq = m.g("AND3", *[m.g("XNOR2", a[i], b[i]) for i in range(3)])
  run = m.g("AND2", busy, m.g("INV", eq))
  a_en = m.g("OR2", start, m.g("AND2", run, b_lt_a))
  b_en = m.g("OR2", start, m.g("AND2", run, a_lt_b))
  for i in range(3):
    m.cell("_DFFE_PP_", out=a[i], name=f"a_reg_{i}", C=clk, E=a_en,
           D=m.mux(start, a_minus_b[i], ain[i]))
    m.cell("_DFFE_PP_", out=b[i], name=f"b_reg_{i}", C=clk, E=b_en,
           D=m.mux(start, b_minus_a[i], bin_[i]))
  m.cell("_DFF_P_", out=busy, name="busy_reg", C=clk, D=m.g("OR2", start, run))
  m.cell("BUF", A=m.g("INV", busy), out=done)
  return m


def lfsr():
  m = Module("lfsr")
  clk = m.input("clk")
  din = m.input("din")
  tap = m.output("tap")
  parity = m.output("parity")
  s = [m.wire("s") for _ in range(5)]
  fb = m.g("XOR2", m.g("XOR2", din, s[4]), s[2])
  m.cell("_DFF_P_", out=s[0], name="sr_0", C=clk, D=fb, init=True)
  for i in range(1, 5):
    m.cell("_DFF_P_", out=s[i], name=f"sr_{i}", C=clk, D=s[i - 1])
  m.cell("BUF", A=s[4], out=tap)
  m.cell("XOR2", A=m.g("XOR2", s[0], s[1]), B=m.g("XOR2", s[3], s[4]), out=parity)
  return m


def sync_reset():
  m = Module("sync_reset")
  clk = m.input("clk")
  rst = m.input("rst")
  set_ = m.input("set")
  d = m.input("d")
  q = m.output("q", 2)
  flag = m.output("flag")
  m.cell("_SDFF_PP0_", out=q[0], name="cnt_0", C=clk, R=rst, D=m.g("INV", q[0]))
  m.cell("_SDFF_PP0_", out=q[1], name="cnt_1", C=clk, R=rst, D=m.g("XOR2", q[0], q[1]))
  m.cell("_SDFF_PP1_", out=flag, name="flag_reg", C=clk, S=set_,
         D=m.g("AND2", d, m.g("NAND2", q[0], q[1])))
  return m


def async_reset():
  m = Module("async_reset")
  clk = m.input("clk")
  arst = m.input("arst")
  aset = m.input("aset")
  d = m.input("d")
  q = m.output("q", 2)
  hold = m.output("hold")
  m.cell("_DFF_PP0_", out=q[0], name="acc_0", C=clk, R=arst, D=m.g("XOR2", d, q[0]))
  m.cell("_DFF_PP0_", out=q[1], name="acc_1", C=clk, R=arst,
         D=m.g("XOR2", q[1], m.g("AND2", d, q[0])))
  m.cell("_DFF_PP1_", out=hold, name="hold_reg", C=clk, S=aset, D=m.g("OR2", d, q[1]))
  return m


def gate_chain():
  m = Module("gate_chain")
  clk = m.input("clk")
  din = m.input("din")
  dout = m.output("dout")
  r = m.cell("_DFF_P_", name="r_in", C=clk, D=din)
  g1 = m.cell("G10", name="g1", A=r)
  m.cell("G10", name="g2", A=g1, out=dout)
  return m


def fanin_merge():
  m = Module("fanin_merge")
  clk = m.input("clk")
  a = m.input("a")
  b = m.input("b")
  y = m.output("y")
  ra = m.cell("_DFF_P_", name="r_a", C=clk, D=a)
  rb = m.cell("_DFF_P_", name="r_b", C=clk, D=b)
  m.cell("AND10", name="merge", A=ra, B=rb, out=y)
  return m


def borrow_ring(name, stage1):
  m = Module(name)
  c1 = m.input("clk_1")
  c2 = m.input("clk_2")
  q = m.output("q")
  back = m.wire("back")
  q1 = m.cell("_DLATCH_P_", name="l1", E=c1, D=back)
  mid = m.cell(stage1, name="stage1", A=q1)
  m.cell("_DLATCH_P_", name="l2", E=c2, D=mid, out=q)
  m.cell("I2", name="stage2", A=q, out=back)
  return m


def cell(name, pins, behavior, timing=None):
  c = {"name": name,
       "pins": [{"name": n, "dir": d, "role": r} for n, d, r in pins],
       "behavior": behavior}
  if timing is not None:
    c["timing"] = timing
  return c


def ideal_library():
  a = ("A", "in", "data")
  b = ("B", "in", "data")
  y = ("Y", "out", "output")
  zero = {"delay_max": 0.0, "delay_min": 0.0}
  seq = {"delay_max": 0.0, "delay_min": 0.0, "d_to_q_min": 0.0, "setup": 0.0, "hold": 0.0}
  comb = lambda f: {"type": "comb", "function": f}
  fixed = lambda d: {"delay_max": d, "delay_min": d}
  cells = [
      cell("BUF", [a, y], comb("A"), zero),
      cell("INV", [a, y], comb("!A"), zero),
      cell("AND2", [a, b, y], comb("A & B"), zero),
      cell("MUX2", [a, b, ("S", "in", "select"), y], comb("(S & B) | (!S & A)"), zero),
      cell("G10", [a, y], comb("!A"), fixed(10.0)),
      cell("AND10", [a, b, y], comb("A & B"), fixed(10.0)),
      cell("D7", [a, y], comb("A"), fixed(7.0)),
      cell("D12", [a, y], comb("A"), fixed(12.0)),
      cell("I2", [a, y], comb("!A"), fixed(2.0)),
      cell("_DFF_P_", [("D", "in", "data"), ("C", "in", "clock"), ("Q", "out", "output")],
           {"type": "dff"}, seq),
      cell("_DLATCH_P_", [("D", "in", "data"), ("E", "in", "clock"), ("Q", "out", "output")],
           {"type": "latch"}, seq),
  ]
  return {"cells": cells}


def main():
  root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
  root.mkdir(parents=True, exist_ok=True)
  for m in [counter_en(), gcd_fsm(), lfsr(), sync_reset(), async_reset(), gate_chain(), fanin_merge(),
            borrow_ring("borrow_ring", "D7"), borrow_ring("borrow_ring_slow", "D12")]:
    (root / f"{m.name}.v").write_text(m.emit())
  (root / "ideal_lib.json").write_text(json.dumps(ideal_library(), indent=1) + "\n")


if __name__ == "__main__":
  main()
