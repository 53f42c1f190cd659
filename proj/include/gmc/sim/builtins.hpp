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

//===- builtins.hpp - Registered elementary task bodies -----------------===//
//
// An elementary body is a pure function from input patterns to output
// patterns. Each builtin carries a reference implementation used by the
// simulator and a kernel-dialect template inlined by the backend.
//
// Template placeholders: ${T} element type, ${inK}/${outK} the K-th input or
// output pattern (a local array), ${n_inK}/${n_outK} their element counts.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmc/ir/model.hpp"

namespace gmc::sim {

struct PortSignature {
  ir::ScalarType type;
  ir::Shape shape;
};

struct PatternIn {
  ir::ScalarType type;
  std::int64_t count;
  std::span<const std::byte> data;
};

struct PatternOut {
  ir::ScalarType type;
  std::int64_t count;
  std::span<std::byte> data;
};

struct Builtin {
  std::string name;
  /// Empty when the signature is acceptable, otherwise the reason.
  std::string (*check)(std::span<const PortSignature> ins,
                       std::span<const PortSignature> outs) = nullptr;
  void (*run)(std::span<const PatternIn> ins, std::span<const PatternOut> outs) = nullptr;
  /// Kernel body template for an element type; empty when unavailable.
  std::string_view (*kernel_template)(ir::ScalarType) = nullptr;
};

/// nullptr when no builtin has that name.
const Builtin* find_builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// Adds a body to the process-wide registry. Throws gmc::Error if the name is
/// taken. Not thread-safe; register before running passes.
void register_builtin(Builtin builtin);

/// Horizontal 8 -> 3 reduction, fixed-point linear interpolation at source
/// positions (k + 0.5) * 8/3 - 0.5.
std::array<std::uint8_t, 3> hfilter_8to3(std::span<const std::uint8_t, 8> in);

/// Vertical 9 -> 4 reduction at source positions (k + 0.5) * 9/4 - 0.5.
std::array<std::uint8_t, 4> vfilter_9to4(std::span<const std::uint8_t, 9> in);

}  // namespace gmc::sim
