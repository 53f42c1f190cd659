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

//===- frames.hpp - Frame streams ----------------------------------------===//
//
// A frame is one value for each of a list of model arrays. On disk frames are
// stored back to back with no header; within a frame the arrays follow each
// other in model declaration order, each row-major in native byte order. For
// the downscaler that is the luma plane followed by the two chroma planes.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gmc/ir/model.hpp"
#include "gmc/tiler/tiler.hpp"

namespace gmc::sim {

using tiler::ArrayData;
using ArrayMap = std::map<std::string, ArrayData>;

struct Frame {
  std::vector<ArrayData> planes;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Declared types and shapes of `arrays`, in order.
struct FrameLayout {
  std::vector<std::string> names;
  std::vector<ir::ScalarType> types;
  std::vector<ir::Shape> shapes;

  static FrameLayout inputs_of(const ir::Model& model);
  static FrameLayout outputs_of(const ir::Model& model);

  std::int64_t frame_bytes() const;
  Frame zeros() const;
  ArrayMap to_map(const Frame& frame) const;
  /// Throws gmc::Error if an array is missing from `arrays`.
  Frame from_map(const ArrayMap& arrays) const;
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  /// nullopt once the source is exhausted.
  virtual std::optional<Frame> next() = 0;
};

/// Reads raw frames; a trailing partial frame is an error.
class RawFileSource final : public FrameSource {
 public:
  /// Throws gmc::Error if the file cannot be opened.
  RawFileSource(const std::string& path, FrameLayout layout);
  std::optional<Frame> next() override;

 private:
  std::string path_;
  std::ifstream in_;
  FrameLayout layout_;
};

/// Deterministic pseudo-random frames from a seed. u8 planes take one byte of
/// generator output per sample; i32 and f32 samples are drawn in [0, 255].
class SyntheticSource final : public FrameSource {
 public:
  SyntheticSource(FrameLayout layout, std::uint64_t seed,
                  std::optional<std::int64_t> limit = std::nullopt);
  std::optional<Frame> next() override;

 private:
  FrameLayout layout_;
  std::mt19937_64 rng_;
  std::optional<std::int64_t> remaining_;
};

void write_frame(std::ostream& out, const Frame& frame);

}  // namespace gmc::sim
