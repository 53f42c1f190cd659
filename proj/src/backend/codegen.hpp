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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gmc/ir/model.hpp"
#include "gmc/passes/passes.hpp"

namespace gmc::backend::detail {

std::string_view c_type(ir::ScalarType type);

/// Expands ${name} placeholders; an unknown placeholder throws gmc::Error.
std::string substitute(std::string_view text, const std::map<std::string, std::string>& values);

/// Appends `text` line by line, each prefixed with `indent`.
void append_indented(std::string& out, std::string_view text, std::string_view indent);

/// Distinct arrays a task touches: inputs first, then outputs, port order.
std::vector<std::string> task_arrays(const ir::RepetitiveTask& task);

/// Sanitized identifiers for every task and array, collision-checked.
struct Names {
  std::map<std::string, std::string> tasks;
  std::map<std::string, std::string> arrays;
};
Names make_names(const ir::Model& model);

/// Body of one repetition: assumes an int `lin` in scope holding the row-major
/// repetition id and array pointers named per `names`. Emits index
/// reconstruction, pattern gathers, the body template and scatters.
std::string emit_repetition(const ir::Model& model, const ir::RepetitiveTask& task,
                            const Names& names, std::string_view indent);

/// Helper definitions (the non-negative modulo), file-local on the host side.
std::string support_functions(bool host_side);

}  // namespace gmc::backend::detail
