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

//===- cli.hpp - The gmc command line ------------------------------------===//
//
//   gmc check    MODEL.gm
//   gmc dump     MODEL.gm
//   gmc compile  MODEL.gm [--schedule naive|optimized] [--out DIR]
//   gmc simulate MODEL.gm [--input FILE] [--output FILE] [--frames N] [--seed N]
//   gmc bench    MODEL.gm [--input FILE] [--frames N] [--seed N]
//
// compile, simulate and bench also take --schedule, --min-items and --max-wg.
// Exit codes: 0 success, 1 the model has errors or cannot be compiled,
// 2 a file could not be read or written, 3 bad command line.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmc/backend/backend.hpp"
#include "gmc/passes/passes.hpp"

namespace gmc::cli {

enum ExitCode : int { kOk = 0, kModelError = 1, kIoError = 2, kUsageError = 3 };

enum class Command { Check, Compile, Simulate, Bench, Dump };

struct InvocationConfig {
  Command command = Command::Check;
  std::string model_path;
  std::string output_dir = ".";
  backend::ScheduleMode schedule = backend::ScheduleMode::Optimized;
  passes::TopologyConfig topology;
  /// Unset: all frames of --input, or 1 synthetic frame (200 for bench).
  std::optional<std::int64_t> frames;
  std::uint64_t seed = 1;
  std::optional<std::string> input;
  std::optional<std::string> output;
};

struct ParsedArgs {
  std::optional<InvocationConfig> config;  // unset: stop with `exit_code`
  int exit_code = kOk;
};

/// Parses argv[1..]. Help goes to `out`, usage errors to `err`.
ParsedArgs parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(const InvocationConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmc::cli
