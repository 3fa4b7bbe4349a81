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

#include <string>
#include <string_view>

#include "twophase/library.hpp"
#include "twophase/netlist.hpp"

namespace twophase {

// Structural Verilog subset: one module, scalar and [m:n] vector
// declarations (bit-blasted to "name[i]"), cell instances with named port
// connections, plain `assign a = b;` aliasing and 1'b0/1'b1 literals. The
// attribute (* clock *) marks clock inputs; otherwise an input is a clock if
// it drives a sequential clock pin. (* init = 1 *) sets a cell's power-up
// value. Errors are ParseError with "file:line:col: message".
Netlist parse_verilog(std::string_view text, const CellLibrary& library,
                      const std::string& file = "<verilog>");

std::string emit_verilog(const Netlist& netlist);

// Identifier as it must appear in Verilog source (escaped when needed).
std::string verilog_identifier(const std::string& name);

}  // namespace twophase
