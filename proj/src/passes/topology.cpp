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

#include <algorithm>
#include <numeric>

#include "gmc/passes/passes.hpp"

namespace gmc::passes {
namespace {

std::int64_t product(const std::vector<std::int64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{1}, std::multiplies<>());
}

std::int64_t round_up(std::int64_t n, std::int64_t m) { return (n + m - 1) / m * m; }

std::vector<std::int64_t> padded(const std::vector<std::int64_t>& extents,
                                 const std::vector<std::int64_t>& local) {
  std::vector<std::int64_t> global(extents.size());
  for (std::size_t d = 0; d < extents.size(); ++d) global[d] = round_up(extents[d], local[d]);
  return global;
}

}  // namespace

LaunchTopology compute_topology(const ir::Shape& multiplicity, const ir::Processor& device,
                                const TopologyConfig& config) {
  if (device.kind != ir::ProcessorKind::Device)
    throw Error("processor '" + device.name + "' is not a device");
  if (device.max_workgroup_size < 1)
    throw Error("device '" + device.name + "' has no usable work-group size");
  if (config.max_wg < 1) throw Error("max work-group threshold must be positive");
  if (!multiplicity.valid()) throw Error("invalid multiplicity " + ir::to_string(multiplicity));

  const auto max_dims = static_cast<std::size_t>(std::clamp<std::int64_t>(device.max_dims, 1, 3));
  std::vector<std::int64_t> extents = multiplicity.extents;
  while (extents.size() > max_dims) {
    const std::int64_t last = extents.back();
    extents.pop_back();
    extents.back() *= last;
  }

  const std::int64_t total = product(extents);
  const std::int64_t limit = std::min(device.max_workgroup_size, config.max_wg);

  LaunchTopology topo;
  topo.multiplicity = multiplicity;

  if (total < config.min_items && total <= limit) {
    topo.local = extents;
    topo.global = extents;
    topo.guarded = false;
    return topo;
  }

  std::int64_t budget = 1;
  while (budget * 2 <= limit) budget *= 2;

  std::vector<std::size_t> order(extents.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return extents[a] > extents[b]; });

  std::vector<std::int64_t> local(extents.size(), 1);
  std::int64_t size = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (auto d : order) {
      if (local[d] < extents[d] && size * 2 <= budget) {
        local[d] *= 2;
        size *= 2;
        grew = true;
      }
    }
  }

  // Keep padding below one extra copy of the repetition space.
  while (product(padded(extents, local)) >= 2 * total) {
    std::size_t best = extents.size();
    std::int64_t best_waste = 0;
    for (std::size_t d = 0; d < extents.size(); ++d) {
      if (local[d] == 1) continue;
      auto trial = local;
      trial[d] /= 2;
      const std::int64_t waste = product(padded(extents, trial));
      if (best == extents.size() || waste < best_waste) {
        best = d;
        best_waste = waste;
      }
    }
    local[best] /= 2;
  }

  topo.local = local;
  topo.global = padded(extents, local);
  topo.guarded = product(topo.global) > total;
  return topo;
}

}  // namespace gmc::passes
