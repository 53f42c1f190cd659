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

//===- backend.hpp - OpenCL kernel, host driver and report emission ------===//
//
// Kernels target OpenCL C 1.0: one kernel per device task, named after the
// task. A work-item rebuilds its repetition index from a row-major linear id
// over the padded NDRange, returns early when the range is guarded and the id
// is past the repetition count, gathers input patterns with inlined
// origin/paving/fitting arithmetic, runs the body template and scatters the
// output patterns.
//
// The host driver is a single C file using the OpenCL 1.x C API. It is run as
//
//   driver KERNELS.cl INPUT.raw OUTPUT.raw [FRAMES]
//
// and prints `h2d_bytes=<n> d2h_bytes=<n>` when done.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <string>

#include "gmc/ir/model.hpp"
#include "gmc/passes/pipeline.hpp"

namespace gmc::backend {

enum class ScheduleMode { Naive, Optimized };

std::string_view to_string(ScheduleMode mode);

struct GeneratedArtifact {
  std::string kernel_source;
  std::string host_source;
  std::string report;
};

/// Throws gmc::Error when a body has no kernel template for its element type
/// or two sanitized kernel names collide.
std::string emit_kernels(const ir::Model& model, const passes::Topologies& topologies,
                         const passes::BufferPlan& plan, std::string_view model_name = "model");

/// Throws gmc::Error when the model has no device task ("nothing to
/// generate") or the schedule transfers an unplanned array.
std::string emit_host(const ir::Model& model, const passes::TransferSchedule& schedule,
                      const passes::BufferPlan& plan, const passes::Topologies& topologies,
                      std::string_view model_name = "model");

/// JSON document with stable key order: per-task topology, buffer plan, the
/// selected schedule and transfer stats of both schedules.
std::string emit_report(const ir::Model& model, const passes::PipelineResult& pipeline,
                        ScheduleMode mode, std::string_view model_name = "model");

GeneratedArtifact generate(const ir::Model& model, const passes::PipelineResult& pipeline,
                           ScheduleMode mode, std::string_view model_name = "model");

/// Identifier used for a task's kernel or an array's parameter in generated
/// code.
std::string sanitize_identifier(std::string_view name);

}  // namespace gmc::backend
