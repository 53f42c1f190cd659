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

//===- parser.hpp - Model DSL frontend ------------------------------------===//
//
//   model    := decl*
//   decl     := array | task | hw | allocate | connect
//   array    := "array" IDENT ":" scalar ivec
//   task     := "task" IDENT "repeat" ivec "body" IDENT "{" tiling* "}"
//   tiling   := ("in" | "out" | "inout") IDENT "from" IDENT "tiler" "{"
//                 "origin" ivec "paving" imat "fitting" imat "pattern" ivec "}"
//   hw       := "host" IDENT "{" ("memory" IDENT)+ "}"
//             | "device" IDENT "{" ("memory" IDENT "kind" REGION)+
//                 "maxwg" INT ["maxdims" INT] "}"
//   allocate := "allocate" IDENT "on" IDENT
//   connect  := "connect" IDENT "->" IDENT
//   ivec     := "[" [INT ("," INT)*] "]"
//   imat     := "[" [ivec ("," ivec)*] "]"
//   scalar   := "u8" | "i32" | "f32"
//   REGION   := "global" | "constant" | "local" | "private"
//
// Integers are decimal and may be negative; `//` starts a comment.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gmc/ir/diagnostic.hpp"
#include "gmc/ir/model.hpp"

namespace gmc::frontend {

struct ParseResult {
  std::optional<ir::Model> model;  // set iff there are no errors
  Diagnostics diagnostics;
};

/// Parses and resolves names. Validation is a separate step.
ParseResult parse(std::string_view source, std::string file = "<input>");

/// Canonical DSL text for a model; parse(print_model(m)) == m.
std::string print_model(const ir::Model& model);

/// One block per diagnostic in source order:
///   file:line:col: severity[code]: message
///   <source line>
///   <caret underline>
/// Diagnostics without a source location print `path: severity[code]: message`
/// after the located ones.
std::string format_diagnostics(const Diagnostics& diags, std::string_view source);

}  // namespace gmc::frontend
