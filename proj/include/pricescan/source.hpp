//------------------------------------------------------------------------------
//
//   Copyright 2026 pricescan authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pricescan {

// Half-open byte range [begin, end) into the original source buffer.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool valid() const { return begin < end; }
  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
  std::string code;  // short machine identifier, e.g. "unsupported-construct"
};

inline const char *severity_name(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

// 1-based line number of a byte offset, for human-readable diagnostics.
std::size_t line_of_offset(const std::string &text, std::size_t offset);

std::string render_diagnostic(const Diagnostic &d, const std::string &text,
                              const std::string &path);

}  // namespace pricescan
