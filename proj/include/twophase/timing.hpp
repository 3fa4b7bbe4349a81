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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "twophase/library.hpp"
#include "twophase/netlist.hpp"
#include "twophase/phase.hpp"

namespace twophase {

// Two-phase clock. Phi1 is transparent over [0, duty*T), phi2 over
// [offset*T, offset*T + duty*T). Times in ns.
struct ClockSpec {
  double period = 10.0;
  double duty = 0.49;
  double phase2_offset = 0.5;
  std::map<std::string, double> skew;  // per-latch clock arrival offset
  // Use the launching latch's minimum D-to-Q delay in the hold check
  // instead of the receiving latch's.
  bool hold_uses_launch_dq = false;
  ClockNames clocks;

  double open(Phase p) const { return p == Phase::Phi1 ? 0.0 : phase2_offset * period; }
  double close(Phase p) const { return open(p) + width(); }
  double width() const { return duty * period; }
  double skew_of(const std::string& latch) const;
  // Throws Error(Timing) for a non-positive period or overlapping windows.
  void check() const;
};

// Largest borrow a latch can take and still meet setup.
double max_borrow(double period, double duty, double setup);
double setup_slack(double close, double arrival, double setup, double skew);
// Residual of the hold requirement between a launching latch j and a
// receiving latch i: (dq + min_path + separation) - (width + hold + skew - period).
double hold_slack(double dq, double min_path, double separation, double width, double hold,
                  double skew, double period);

struct FanIn {
  std::string from;  // latch name, or "(input)" for primary inputs
  double max_delay = 0.0;
  double min_delay = 0.0;
};

struct LatchTimingPoint {
  std::string name;
  Phase phase = Phase::Phi1;
  double arrival = 0.0;
  double departure = 0.0;
  double borrow = 0.0;
  double max_borrow = 0.0;
  double setup_slack = 0.0;
  std::vector<FanIn> fanin;
};

struct HoldCheck {
  std::string from;
  std::string to;
  double slack = 0.0;
};

struct ArrivalResult {
  std::vector<LatchTimingPoint> points;  // sorted by name
  int iterations = 0;
  bool feasible = true;
  std::vector<std::string> looping;  // latches still moving when declared infeasible
};

// Fixed-point arrival propagation with time borrowing over the latches of a
// two-phase netlist. Latch phases come from the clock network.
ArrivalResult compute_arrivals(const Netlist& netlist, const CellLibrary& library,
                               const ClockSpec& spec);

struct TimingReport {
  ClockSpec spec;
  std::vector<LatchTimingPoint> latches;
  std::vector<HoldCheck> holds;
  double worst_setup_slack = 0.0;  // +inf when there are no checks
  double worst_hold_slack = 0.0;
  double max_tb = 0.0;
  double act_tb = 0.0;
  double skew_max = 0.0;
  int iterations = 0;
  bool feasible = true;
  std::vector<std::string> looping;

  bool met() const;
  nlohmann::json to_json() const;
  static TimingReport from_json(const nlohmann::json& j);
};

TimingReport analyze_timing(const Netlist& netlist, const CellLibrary& library,
                            const ClockSpec& spec);

}  // namespace twophase
