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

#include "gmc/sim/oracle.hpp"

#include "gmc/sim/builtins.hpp"

namespace gmc::sim {

Frame direct_downscale_oracle(const Frame& frame) {
  Frame out;
  for (const auto& plane : frame.planes) {
    if (plane.type != ir::ScalarType::U8 || plane.shape.rank() != 2)
      throw Error("oracle expects u8 planes of rank 2, got " + ir::to_string(plane.shape));
    const std::int64_t rows = plane.shape.extents[0];
    const std::int64_t cols = plane.shape.extents[1];
    if (cols % 8 != 0 || rows % 9 != 0)
      throw Error("plane " + ir::to_string(plane.shape) +
                  " is not divisible into 8-column and 9-row packets");

    const std::int64_t mid_cols = cols / 8 * 3;
    std::vector<std::uint8_t> mid(static_cast<std::size_t>(rows * mid_cols));
    for (std::int64_t y = 0; y < rows; ++y) {
      for (std::int64_t p = 0; p < cols / 8; ++p) {
        std::uint8_t packet[8];
        for (int k = 0; k < 8; ++k) packet[k] = plane.u8(y * cols + p * 8 + k);
        auto r = hfilter_8to3(packet);
        for (int k = 0; k < 3; ++k) mid[y * mid_cols + p * 3 + k] = r[k];
      }
    }

    const std::int64_t out_rows = rows / 9 * 4;
    ArrayData result = ArrayData::zeros(ir::ScalarType::U8, ir::Shape{{out_rows, mid_cols}});
    for (std::int64_t x = 0; x < mid_cols; ++x) {
      for (std::int64_t p = 0; p < rows / 9; ++p) {
        std::uint8_t packet[9];
        for (int k = 0; k < 9; ++k) packet[k] = mid[(p * 9 + k) * mid_cols + x];
        auto r = vfilter_9to4(packet);
        for (int k = 0; k < 4; ++k)
          result.bytes[(p * 4 + k) * mid_cols + x] = static_cast<std::byte>(r[k]);
      }
    }
    out.planes.push_back(std::move(result));
  }
  return out;
}

}  // namespace gmc::sim
