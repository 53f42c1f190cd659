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

#include "gmc/ir/model.hpp"

#include <algorithm>

namespace gmc::ir {

std::int64_t Shape::count() const {
  std::int64_t n = 1;
  for (auto e : extents) n *= e;
  return n;
}

bool Shape::valid() const {
  if (extents.empty() || extents.size() > kMaxRank) return false;
  return std::all_of(extents.begin(), extents.end(), [](auto e) { return e >= 1; });
}

std::string to_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.extents.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape.extents[i]);
  }
  return s + "]";
}

std::size_t byte_width(ScalarType type) {
  switch (type) {
    case ScalarType::U8: return 1;
    case ScalarType::I32: return 4;
    case ScalarType::F32: return 4;
  }
  return 0;
}

std::string_view to_string(ScalarType type) {
  switch (type) {
    case ScalarType::U8: return "u8";
    case ScalarType::I32: return "i32";
    case ScalarType::F32: return "f32";
  }
  return "?";
}

std::optional<ScalarType> scalar_type_from(std::string_view name) {
  if (name == "u8") return ScalarType::U8;
  if (name == "i32") return ScalarType::I32;
  if (name == "f32") return ScalarType::F32;
  return std::nullopt;
}

std::string_view to_string(Direction dir) {
  switch (dir) {
    case Direction::In: return "in";
    case Direction::Out: return "out";
    case Direction::InOut: return "inout";
  }
  return "?";
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::HostRam: return "ram";
    case Region::DeviceGlobal: return "global";
    case Region::DeviceConstant: return "constant";
    case Region::DeviceLocal: return "local";
    case Region::DevicePrivate: return "private";
  }
  return "?";
}

std::optional<Region> region_from(std::string_view name) {
  if (name == "ram") return Region::HostRam;
  if (name == "global") return Region::DeviceGlobal;
  if (name == "constant") return Region::DeviceConstant;
  if (name == "local") return Region::DeviceLocal;
  if (name == "private") return Region::DevicePrivate;
  return std::nullopt;
}

bool is_device_region(Region region) { return region != Region::HostRam; }

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(),
                         [&](const T& item) { return item.name == name; });
  return it == items.end() ? nullptr : &*it;
}

bool port_touches(const std::vector<Port>& ports, std::string_view array,
                  bool want_write) {
  return std::any_of(ports.begin(), ports.end(), [&](const Port& p) {
    if (p.tiler.array != array) return false;
    if (!want_write) return p.direction != Direction::Out;
    return p.direction != Direction::In;
  });
}

}  // namespace

const ArrayValue* Model::find_array(std::string_view name) const {
  return find_named(arrays, name);
}
const RepetitiveTask* Model::find_task(std::string_view name) const {
  return find_named(tasks, name);
}
const Processor* Model::find_processor(std::string_view name) const {
  return find_named(processors, name);
}
const MemorySpace* Model::find_memory(std::string_view name) const {
  return find_named(memories, name);
}

const Processor* Model::processor_of(const RepetitiveTask& task) const {
  auto it = allocation.task_map.find(task.name);
  return it == allocation.task_map.end() ? nullptr : find_processor(it->second);
}

const MemorySpace* Model::memory_of(std::string_view array) const {
  auto it = allocation.array_map.find(std::string(array));
  return it == allocation.array_map.end() ? nullptr : find_memory(it->second);
}

bool Model::on_device(const RepetitiveTask& task) const {
  const Processor* proc = processor_of(task);
  return proc && proc->kind == ProcessorKind::Device;
}

bool Model::is_read_by(const RepetitiveTask& task, std::string_view array) const {
  return port_touches(task.inputs, array, false);
}

bool Model::is_written_by(const RepetitiveTask& task, std::string_view array) const {
  return port_touches(task.outputs, array, true) || port_touches(task.inputs, array, true);
}

const RepetitiveTask* Model::producer_of(std::string_view array) const {
  for (const auto& t : tasks)
    if (is_written_by(t, array)) return &t;
  return nullptr;
}

std::vector<std::string> Model::input_arrays() const {
  std::vector<std::string> names;
  for (const auto& a : arrays) {
    const RepetitiveTask* producer = producer_of(a.name);
    if (!producer || is_read_by(*producer, a.name)) names.push_back(a.name);
  }
  return names;
}

std::vector<std::string> Model::output_arrays() const {
  std::vector<std::string> names;
  for (const auto& a : arrays) {
    const RepetitiveTask* producer = producer_of(a.name);
    if (!producer) continue;
    bool read_elsewhere = std::any_of(tasks.begin(), tasks.end(), [&](const auto& t) {
      return &t != producer && is_read_by(t, a.name);
    });
    if (!read_elsewhere) names.push_back(a.name);
  }
  return names;
}

SourceSpan Model::location(const std::string& path) const {
  auto it = locations.find(path);
  return it == locations.end() ? SourceSpan{} : it->second;
}

bool operator==(const Model& a, const Model& b) {
  return a.arrays == b.arrays && a.tasks == b.tasks && a.processors == b.processors &&
         a.memories == b.memories && a.connectors == b.connectors &&
         a.allocation == b.allocation;
}

std::string array_path(std::string_view array) { return "array " + std::string(array); }
std::string task_path(std::string_view task) { return "task " + std::string(task); }
std::string port_path(std::string_view task, std::string_view port) {
  return "task " + std::string(task) + "." + std::string(port);
}
std::string processor_path(std::string_view proc) {
  return "processor " + std::string(proc);
}
std::string memory_path(std::string_view mem) { return "memory " + std::string(mem); }
std::string allocation_path(std::string_view element) {
  return "allocate " + std::string(element);
}
std::string connector_path(std::size_t index) {
  return "connect #" + std::to_string(index);
}

}  // namespace gmc::ir
