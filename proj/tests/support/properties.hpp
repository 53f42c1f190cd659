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

// Property checks shared by the property tests and the acceptance runner.
// Each returns an empty string when the property holds, otherwise a
// description of the first counterexample.

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "gmc/ir/model.hpp"
#include "gmc/passes/passes.hpp"
#include "test_support.hpp"

namespace gmc::testing {

/// Brute-force hit count of every array element under a tiler, computed with
/// plain loops and its own index arithmetic (independent of the tiler module).
std::vector<int> hit_counts(const TilerCase& c);

/// In-bounds and linearity of element_index, agreement of check_coverage with
/// hit_counts, and write-then-extract identity when the coverage is exact.
std::string check_tiler_properties(const TilerCase& c, std::mt19937_64& rng);

/// Work-group limit, divisibility, coverage of the repetition space, guard
/// flag and the padding bound.
std::string check_topology_properties(const ir::Shape& multiplicity, const ir::Processor& device,
                                      const passes::TopologyConfig& config);

/// Runs `frames` frames of random inputs through the naive and the optimized
/// schedules and through the reference executor; all three must agree bit for
/// bit. Also checks the optimized schedule with verify_residency and that it
/// never transfers more than the naive one.
std::string check_schedule_equivalence(const ir::Model& model, std::mt19937_64& rng,
                                       int frames = 2);

}  // namespace gmc::testing
