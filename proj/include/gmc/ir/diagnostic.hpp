// Copyright 2026 The gmc Authors
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
#include <vector>

#include "gmc/ir/model.hpp"

namespace gmc {

enum class Severity { Error, Warning };

/// A located problem report. `path` names the model element ("task yhfk",
/// "task yhfk.in_y") and `span` points into the source when known.
///
/// Codes are stable: E0xx are produced by the frontend, V1xx are validation
/// errors and W2xx validation warnings. See README.md for the full table.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string path;
  std::string message;
  ir::SourceSpan span;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);

}  // namespace gmc
