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

#include "gmc/passes/pipeline.hpp"

namespace gmc::passes {

PipelineResult run_pipeline(const ir::Model& model, const TopologyConfig& config) {
  PipelineResult result;
  result.plan = plan_buffers(model);
  result.naive = schedule_naive(model, config);
  result.optimized = optimize_transfers(result.naive, model);
  for (const auto& step : result.naive.steps)
    if (step.kind == StepKind::Launch && step.topology) result.topologies[step.task] = *step.topology;
  return result;
}

}  // namespace gmc::passes
