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

#include <stdexcept>
#include <string>

namespace twophase {

enum class ErrorCode {
  Parse,        // malformed input text
  Library,      // cell library invariant violated
  Netlist,      // structural netlist problem (drivers, cycles, unknown kinds)
  Unsupported,  // construct or topology outside the supported subset
  Transform,    // a conversion pass could not be applied
  Retime,       // infeasible target or unrealizable lags
  Simulation,   // unstable network, missing stimulus
  Verify,       // clock-domain resolution and similar
  Timing,
  Io,
  Usage,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

// Carries the location of a lexical or syntax error. what() is already
// formatted as "file:line:col: message".
class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : Error(ErrorCode::Parse, span.to_string() + ": " + message),
        span_(std::move(span)),
        bare_(message) {}

  const SourceSpan& span() const noexcept { return span_; }
  const std::string& bare_message() const noexcept { return bare_; }

 private:
  SourceSpan span_;
  std::string bare_;
};

}  // namespace twophase
