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

#include "gmc/sim/frames.hpp"

namespace gmc::sim {

/// Downscales every plane with plain nested loops: each row in packets of 8
/// columns through hfilter_8to3, then each column of the result in packets
/// of 9 rows through vfilter_9to4. Planes are u8 [rows, columns] with columns
/// divisible by 8 and rows by 9; anything else throws gmc::Error.
Frame direct_downscale_oracle(const Frame& frame);

}  // namespace gmc::sim
