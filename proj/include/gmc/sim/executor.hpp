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

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "gmc/ir/model.hpp"
#include "gmc/passes/passes.hpp"
#include "gmc/sim/frames.hpp"

namespace gmc::sim {

/// Order in which a task's repetition indices are visited. Results never
/// depend on it for exactly-covered outputs.
enum class Order { RowMajor, Reverse, Shuffled };

struct ExecOptions {
  Order order = Order::RowMajor;
  std::uint64_t shuffle_seed = 0;
};

/// Runs every repetition of `task` against `arrays`: gather input patterns,
/// apply the body, scatter output patterns.
void run_task(const ir::RepetitiveTask& task, ArrayMap& arrays, const ExecOptions& options = {});

/// Reference semantics: all tasks in toposort order over a single memory,
/// arrays zero-initialised. Returns the model's output arrays. Throws
/// gmc::Error for a missing input or a shape/type mismatch.
ArrayMap execute(const ir::Model& model, const ArrayMap& inputs, const ExecOptions& options = {});

/// Executes a transfer schedule with distinct host and device copies of every
/// array; a launch only sees the copies on its own side. Device copies persist
/// across frames like real buffers, so a missing transfer shows up as stale
/// data. Not thread-safe.
class ScheduledExecutor {
 public:
  ScheduledExecutor(const ir::Model& model, passes::TransferSchedule schedule);

  /// Loads the inputs into host copies, replays the schedule once and returns
  /// the host copies of the output arrays.
  ArrayMap run_frame(const ArrayMap& inputs);

  std::int64_t frames() const { return frames_; }
  /// Transfer counts and bytes summed over all frames so far.
  const passes::TransferStats& totals() const { return totals_; }
  /// Wall time per launched task, in schedule launch order.
  const std::vector<std::pair<std::string, std::chrono::nanoseconds>>& task_times() const {
    return task_times_;
  }

 private:
  const ir::Model& model_;
  passes::TransferSchedule schedule_;
  ArrayMap host_;
  ArrayMap device_;
  std::int64_t frames_ = 0;
  passes::TransferStats totals_;
  std::vector<std::pair<std::string, std::chrono::nanoseconds>> task_times_;
};

struct ExecutionTrace {
  std::int64_t frames = 0;
  std::vector<std::pair<std::string, double>> task_seconds;
  passes::TransferStats per_frame;  // zero when no frame ran
  passes::TransferStats total;
  double seconds = 0;
  double frames_per_second = 0;
};

/// Runs `frames` iterations of the schedule on frames pulled from `source`.
/// Throws gmc::Error naming the frame index if the source runs dry.
ExecutionTrace bench(const ir::Model& model, const passes::TransferSchedule& schedule,
                     std::int64_t frames, FrameSource& source);

}  // namespace gmc::sim
