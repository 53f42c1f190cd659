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

#include <vector>

#include "gmc/ir/diagnostic.hpp"
#include "gmc/ir/model.hpp"

namespace gmc::ir {

/// Checks every structural invariant of the model. Returns an empty list iff
/// the model is well formed; warnings do not make a model invalid.
Diagnostics validate(const Model& model);

/// Producer-before-consumer order of the tasks, ties broken by declaration
/// order. Edges come from arrays (writer -> readers) and from task-to-task
/// connectors. Throws gmc::Error on a cycle.
std::vector<const RepetitiveTask*> toposort(const Model& model);

/// Tasks forming a dependency cycle, empty when the graph is acyclic.
std::vector<std::string> find_cycle(const Model& model);

}  // namespace gmc::ir
