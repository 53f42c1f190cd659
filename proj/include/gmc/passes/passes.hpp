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

//===- passes.hpp - Launch topology, buffers and transfer scheduling -----===//
//
// The transformation chain from a validated model to a per-frame schedule:
//
//   compute_topology   multiplicity -> NDRange (global/local sizes, guard)
//   plan_buffers       one device buffer per array a device task touches
//   schedule_naive     copy in before / copy out after every launch
//   optimize_transfers residency scan dropping copies that move nothing new
//
//===--------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmc/ir/model.hpp"

namespace gmc::passes {

struct TopologyConfig {
  /// Multiplicities with fewer repetitions run as one exact work-group.
  std::int64_t min_items = 64;
  /// Upper bound on work-group size, on top of the device limit.
  std::int64_t max_wg = 256;
};

struct LaunchTopology {
  std::vector<std::int64_t> global;
  std::vector<std::int64_t> local;
  ir::Shape multiplicity;
  bool guarded = false;

  friend bool operator==(const LaunchTopology&, const LaunchTopology&) = default;
};

/// Deterministic NDRange for a repetition space:
///  1. trailing extents are multiplied together until the rank fits the device;
///  2. below `min_items` repetitions (and within the work-group limit) the
///     whole space is one work-group;
///  3. otherwise the local size is a power-of-two box of at most
///     min(device max, config max) items, grown one doubling at a time
///     round-robin over the dimensions from the largest extent down, never
///     past an extent it already covers; doublings are then undone while the
///     padded global size reaches twice the repetition count;
///  4. global sizes round each extent up to a multiple of the local size.
/// Throws gmc::Error for a host processor or non-positive limits.
LaunchTopology compute_topology(const ir::Shape& multiplicity, const ir::Processor& device,
                                const TopologyConfig& config = {});

struct BufferEntry {
  std::string array;
  std::string memory;  // device memory holding the buffer
  ir::Region region = ir::Region::DeviceGlobal;
  bool read_only = false;
  std::int64_t byte_size = 0;
  /// The array is allocated in host RAM; the buffer is a device-side staging
  /// copy placed in the device's first global memory.
  bool staged = false;

  friend bool operator==(const BufferEntry&, const BufferEntry&) = default;
};

struct BufferPlan {
  std::vector<BufferEntry> entries;  // array declaration order

  const BufferEntry* find(std::string_view array) const;
};

/// Throws gmc::Error when an array sits in a local or private region, or a
/// staged array has no global memory on the device to land in.
BufferPlan plan_buffers(const ir::Model& model);

enum class StepKind { HostToDevice, DeviceToHost, Launch };

struct Step {
  StepKind kind = StepKind::Launch;
  std::string array;  // transfers
  std::string task;   // launches
  /// Set for device launches; host tasks run inline on the host.
  std::optional<LaunchTopology> topology;

  bool on_device() const { return topology.has_value(); }

  static Step h2d(std::string array) { return {StepKind::HostToDevice, std::move(array), {}, {}}; }
  static Step d2h(std::string array) { return {StepKind::DeviceToHost, std::move(array), {}, {}}; }

  friend bool operator==(const Step&, const Step&) = default;
};

struct TransferSchedule {
  std::vector<Step> steps;
  /// The step list is replayed once per frame.
  bool per_frame = true;

  friend bool operator==(const TransferSchedule&, const TransferSchedule&) = default;
};

std::string to_string(const Step& step);

/// Launches in toposort order; every device launch is preceded by a copy-in of
/// each array it reads and followed by a copy-out of each array it writes.
TransferSchedule schedule_naive(const ir::Model& model, const TopologyConfig& config = {});

/// Residency scan over one frame. Drops a copy-in when the device already holds
/// the current value, and a copy-out when the host already holds it or nothing
/// on the host (a host task or the frame's outputs) reads it before it is next
/// overwritten. Launch order is preserved.
TransferSchedule optimize_transfers(const TransferSchedule& schedule, const ir::Model& model);

/// Replays `frames` iterations tracking value versions per side and reports
/// every read of a stale copy, stale copy-over and output not on the host at
/// frame end. Empty when the schedule is sound.
std::vector<std::string> verify_residency(const TransferSchedule& schedule,
                                          const ir::Model& model, int frames = 2);

struct TransferStats {
  std::int64_t h2d_count = 0;
  std::int64_t d2h_count = 0;
  std::int64_t h2d_bytes = 0;
  std::int64_t d2h_bytes = 0;

  friend bool operator==(const TransferStats&, const TransferStats&) = default;
};

/// Per-frame totals. Throws gmc::Error if a transfer names an unplanned array.
TransferStats transfer_stats(const TransferSchedule& schedule, const BufferPlan& plan);

}  // namespace gmc::passes
