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

#include "gmc/ir/model.hpp"
#include "gmc/passes/passes.hpp"

namespace gmc::passes {

using Topologies = std::map<std::string, LaunchTopology>;

/// Every artifact of the chain for one validated model.
struct PipelineResult {
  BufferPlan plan;
  Topologies topologies;  // device tasks only
  TransferSchedule naive;
  TransferSchedule optimized;
};

PipelineResult run_pipeline(const ir::Model& model, const TopologyConfig& config = {});

}  // namespace gmc::passes
