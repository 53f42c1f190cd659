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

#include "gmc/passes/passes.hpp"

namespace gmc::passes {

const BufferEntry* BufferPlan::find(std::string_view array) const {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const BufferEntry& e) { return e.array == array; });
  return it == entries.end() ? nullptr : &*it;
}

BufferPlan plan_buffers(const ir::Model& model) {
  BufferPlan plan;
  for (const auto& array : model.arrays) {
    const ir::RepetitiveTask* device_user = nullptr;
    bool device_writes = false;
    for (const auto& task : model.tasks) {
      if (!model.on_device(task)) continue;
      const bool reads = model.is_read_by(task, array.name);
      const bool writes = model.is_written_by(task, array.name);
      if (!reads && !writes) continue;
      if (!device_user) device_user = &task;
      device_writes = device_writes || writes;
    }
    if (!device_user) continue;

    const ir::MemorySpace* mem = model.memory_of(array.name);
    if (!mem) throw Error("array '" + array.name + "' is not allocated");
    if (mem->region == ir::Region::DeviceLocal || mem->region == ir::Region::DevicePrivate)
      throw Error("array '" + array.name + "' is allocated to unsupported region '" +
                  std::string(ir::to_string(mem->region)) + "'");

    BufferEntry entry;
    entry.array = array.name;
    entry.read_only = !device_writes;
    entry.byte_size = static_cast<std::int64_t>(ir::byte_width(array.element)) * array.shape.count();
    if (ir::is_device_region(mem->region)) {
      entry.memory = mem->name;
      entry.region = mem->region;
    } else {
      const ir::Processor* device = model.processor_of(*device_user);
      auto global = std::find_if(model.memories.begin(), model.memories.end(), [&](const auto& m) {
        return m.owner == device->name && m.region == ir::Region::DeviceGlobal;
      });
      if (global == model.memories.end())
        throw Error("array '" + array.name + "' is in host memory but device '" + device->name +
                    "' has no global memory to stage it");
      entry.memory = global->name;
      entry.region = ir::Region::DeviceGlobal;
      entry.staged = true;
    }
    plan.entries.push_back(std::move(entry));
  }
  return plan;
}

}  // namespace gmc::passes
