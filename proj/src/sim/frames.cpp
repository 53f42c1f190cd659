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

#include "gmc/sim/frames.hpp"

#include <cstring>

namespace gmc::sim {
namespace {

FrameLayout layout_for(const ir::Model& model, const std::vector<std::string>& names) {
  FrameLayout layout;
  for (const auto& name : names) {
    const ir::ArrayValue* a = model.find_array(name);
    if (!a) throw Error("unknown array '" + name + "'");
    layout.names.push_back(a->name);
    layout.types.push_back(a->element);
    layout.shapes.push_back(a->shape);
  }
  return layout;
}

}  // namespace

FrameLayout FrameLayout::inputs_of(const ir::Model& model) {
  return layout_for(model, model.input_arrays());
}

FrameLayout FrameLayout::outputs_of(const ir::Model& model) {
  return layout_for(model, model.output_arrays());
}

std::int64_t FrameLayout::frame_bytes() const {
  std::int64_t bytes = 0;
  for (std::size_t i = 0; i < names.size(); ++i)
    bytes += static_cast<std::int64_t>(ir::byte_width(types[i])) * shapes[i].count();
  return bytes;
}

Frame FrameLayout::zeros() const {
  Frame f;
  for (std::size_t i = 0; i < names.size(); ++i)
    f.planes.push_back(ArrayData::zeros(types[i], shapes[i]));
  return f;
}

ArrayMap FrameLayout::to_map(const Frame& frame) const {
  if (frame.planes.size() != names.size())
    throw Error("frame has " + std::to_string(frame.planes.size()) + " planes, expected " +
                std::to_string(names.size()));
  ArrayMap map;
  for (std::size_t i = 0; i < names.size(); ++i) map[names[i]] = frame.planes[i];
  return map;
}

Frame FrameLayout::from_map(const ArrayMap& arrays) const {
  Frame f;
  for (const auto& name : names) {
    auto it = arrays.find(name);
    if (it == arrays.end()) throw Error("missing array '" + name + "'");
    f.planes.push_back(it->second);
  }
  return f;
}

RawFileSource::RawFileSource(const std::string& path, FrameLayout layout)
    : path_(path), in_(path, std::ios::binary), layout_(std::move(layout)) {
  if (!in_) throw Error("cannot open frame file '" + path + "'");
}

std::optional<Frame> RawFileSource::next() {
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;
  Frame f = layout_.zeros();
  for (auto& plane : f.planes) {
    in_.read(reinterpret_cast<char*>(plane.bytes.data()),
             static_cast<std::streamsize>(plane.bytes.size()));
    if (in_.gcount() != static_cast<std::streamsize>(plane.bytes.size()))
      throw Error("frame file '" + path_ + "' ends inside a frame");
  }
  return f;
}

SyntheticSource::SyntheticSource(FrameLayout layout, std::uint64_t seed,
                                 std::optional<std::int64_t> limit)
    : layout_(std::move(layout)), rng_(seed), remaining_(limit) {}

std::optional<Frame> SyntheticSource::next() {
  if (remaining_) {
    if (*remaining_ <= 0) return std::nullopt;
    --*remaining_;
  }
  Frame f = layout_.zeros();
  for (auto& plane : f.planes) {
    const std::int64_t n = plane.count();
    switch (plane.type) {
      case ir::ScalarType::U8:
        for (std::int64_t i = 0; i < n; i += 8) {
          std::uint64_t word = rng_();
          for (std::int64_t k = 0; k < 8 && i + k < n; ++k, word >>= 8)
            plane.bytes[i + k] = static_cast<std::byte>(word & 0xff);
        }
        break;
      case ir::ScalarType::I32:
        for (std::int64_t i = 0; i < n; ++i) {
          auto v = static_cast<std::int32_t>(rng_() & 0xff);
          std::memcpy(plane.bytes.data() + 4 * i, &v, 4);
        }
        break;
      case ir::ScalarType::F32:
        for (std::int64_t i = 0; i < n; ++i) {
          auto v = static_cast<float>(rng_() & 0xff);
          std::memcpy(plane.bytes.data() + 4 * i, &v, 4);
        }
        break;
    }
  }
  return f;
}

void write_frame(std::ostream& out, const Frame& frame) {
  for (const auto& plane : frame.planes)
    out.write(reinterpret_cast<const char*>(plane.bytes.data()),
              static_cast<std::streamsize>(plane.bytes.size()));
}

}  // namespace gmc::sim
