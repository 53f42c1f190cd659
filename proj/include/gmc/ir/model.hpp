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

//===- model.hpp - Application/architecture/allocation IR ---------------===//
//
// The flat model every pass operates on: arrays, repetitive tasks with their
// tilers, host/device processors, memory spaces and the allocation maps.
// Names are the identity of every element; cross references are by name.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmc {

/// Thrown for contract violations that are not reported as diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmc

namespace gmc::ir {

inline constexpr std::size_t kMaxRank = 4;

struct Shape {
  std::vector<std::int64_t> extents;

  std::size_t rank() const { return extents.size(); }
  std::int64_t count() const;
  bool valid() const;

  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);

enum class ScalarType { U8, I32, F32 };

std::size_t byte_width(ScalarType type);
std::string_view to_string(ScalarType type);
std::optional<ScalarType> scalar_type_from(std::string_view name);

enum class Direction { In, Out, InOut };

std::string_view to_string(Direction dir);

enum class Region { HostRam, DeviceGlobal, DeviceConstant, DeviceLocal, DevicePrivate };

/// DSL spelling: ram, global, constant, local, private.
std::string_view to_string(Region region);
std::optional<Region> region_from(std::string_view name);
bool is_device_region(Region region);

enum class ProcessorKind { Host, Device };

/// Row-major integer matrix; rows index array dimensions.
using Matrix = std::vector<std::vector<std::int64_t>>;

struct Tiler {
  std::vector<std::int64_t> origin;
  Matrix paving;   // array rank x repetition rank
  Matrix fitting;  // array rank x pattern rank
  std::string array;
  Shape pattern;

  friend bool operator==(const Tiler&, const Tiler&) = default;
};

struct ArrayValue {
  std::string name;
  ScalarType element = ScalarType::U8;
  Shape shape;

  friend bool operator==(const ArrayValue&, const ArrayValue&) = default;
};

/// A task port together with the tiler that connects it to an array. The
/// port's element type is the element type of the tiled array and its
/// pattern shape is the tiler's pattern.
struct Port {
  std::string name;
  Direction direction = Direction::In;
  Tiler tiler;

  friend bool operator==(const Port&, const Port&) = default;
};

struct RepetitiveTask {
  std::string name;
  Shape repetition;
  std::string body;
  std::vector<Port> inputs;   // In and InOut ports, declaration order
  std::vector<Port> outputs;  // Out ports, declaration order

  friend bool operator==(const RepetitiveTask&, const RepetitiveTask&) = default;
};

struct Processor {
  std::string name;
  ProcessorKind kind = ProcessorKind::Host;
  std::int64_t max_workgroup_size = 0;  // device only
  std::int64_t max_dims = 3;            // device only

  friend bool operator==(const Processor&, const Processor&) = default;
};

struct MemorySpace {
  std::string name;
  Region region = Region::HostRam;
  std::string owner;

  friend bool operator==(const MemorySpace&, const MemorySpace&) = default;
};

struct Connector {
  std::string from;
  std::string to;

  friend bool operator==(const Connector&, const Connector&) = default;
};

struct Allocation {
  std::map<std::string, std::string> task_map;   // task -> processor
  std::map<std::string, std::string> array_map;  // array -> memory space

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct SourceSpan {
  std::string file;
  int line = 0;  // 1-based; 0 when the element was not parsed from text
  int column = 0;
  int length = 0;

  bool known() const { return line > 0; }
};

class Model {
 public:
  std::vector<ArrayValue> arrays;
  std::vector<RepetitiveTask> tasks;
  std::vector<Processor> processors;
  std::vector<MemorySpace> memories;
  std::vector<Connector> connectors;
  Allocation allocation;

  /// Source locations keyed by element path (see path helpers below).
  /// Excluded from equality.
  std::map<std::string, SourceSpan> locations;

  const ArrayValue* find_array(std::string_view name) const;
  const RepetitiveTask* find_task(std::string_view name) const;
  const Processor* find_processor(std::string_view name) const;
  const MemorySpace* find_memory(std::string_view name) const;

  /// Processor a task is allocated to, or nullptr.
  const Processor* processor_of(const RepetitiveTask& task) const;
  /// Memory space an array is allocated to, or nullptr.
  const MemorySpace* memory_of(std::string_view array) const;
  bool on_device(const RepetitiveTask& task) const;

  /// Task writing `array` (Out or InOut), or nullptr.
  const RepetitiveTask* producer_of(std::string_view array) const;
  bool is_read_by(const RepetitiveTask& task, std::string_view array) const;
  bool is_written_by(const RepetitiveTask& task, std::string_view array) const;

  /// Arrays the host supplies every frame: never written by a task, or
  /// updated in place through an InOut port. Declaration order.
  std::vector<std::string> input_arrays() const;
  /// Arrays a task writes that no other task reads. Declaration order.
  std::vector<std::string> output_arrays() const;

  SourceSpan location(const std::string& path) const;

  friend bool operator==(const Model& a, const Model& b);
};

// Element paths used in diagnostics and in Model::locations.
std::string array_path(std::string_view array);
std::string task_path(std::string_view task);
std::string port_path(std::string_view task, std::string_view port);
std::string processor_path(std::string_view proc);
std::string memory_path(std::string_view mem);
std::string allocation_path(std::string_view element);
std::string connector_path(std::size_t index);

}  // namespace gmc::ir
