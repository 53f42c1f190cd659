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

//===- tiler.hpp - Tiler index algebra -----------------------------------===//
//
// A tiler maps a repetition index r and a pattern index f to an array element
//
//   e = (origin + paving * r + fitting * f) mod array_shape
//
// with a component-wise, always non-negative modulo. Arrays and patterns are
// stored densely in row-major order.
//
//===--------------------------------------------------------------------===//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gmc/ir/model.hpp"

namespace gmc::tiler {

using Index = std::vector<std::int64_t>;

/// Mathematical modulo: result in [0, m) for m > 0.
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Row-major linear offset of `index` within `shape`.
std::int64_t linearize(std::span<const std::int64_t> index, const ir::Shape& shape);
/// Inverse of linearize.
Index delinearize(std::int64_t linear, const ir::Shape& shape);

/// True when the fitting matrix has no columns (a one-element pattern).
bool has_empty_fitting(const ir::Tiler& tiler);

/// Empty when the tiler's origin, paving and fitting agree with the array
/// shape, the repetition space and the pattern shape; otherwise a message.
std::string check_dimensions(const ir::Tiler& tiler, const ir::Shape& array_shape,
                             const ir::Shape& repetition);

/// Throws gmc::Error on rank mismatch.
Index element_index(const ir::Tiler& tiler, const ir::Shape& array_shape,
                    std::span<const std::int64_t> r, std::span<const std::int64_t> f);

/// Dense array (or pattern) of scalars.
struct ArrayData {
  ir::ScalarType type = ir::ScalarType::U8;
  ir::Shape shape;
  std::vector<std::byte> bytes;

  static ArrayData zeros(ir::ScalarType type, ir::Shape shape);

  std::size_t width() const { return ir::byte_width(type); }
  std::int64_t count() const { return shape.count(); }

  /// Element `i` (row-major) widened for comparisons in tests and tools.
  std::uint8_t u8(std::int64_t i) const { return std::to_integer<std::uint8_t>(bytes[i]); }

  friend bool operator==(const ArrayData&, const ArrayData&) = default;
};

using Pattern = ArrayData;

/// Precomputed addressing for one tiler over one array shape. The hot path of
/// the simulator; extract_pattern and write_pattern are built on it. Holds
/// scratch buffers, so one instance must not be shared across threads.
class TileAccessor {
 public:
  TileAccessor(const ir::Tiler& tiler, const ir::Shape& array_shape);

  std::int64_t pattern_count() const { return pattern_count_; }

  /// Linear array offsets of every pattern element at repetition r.
  void offsets(std::span<const std::int64_t> r, std::span<std::int64_t> out) const;

  void gather(std::span<const std::byte> array, std::size_t width,
              std::span<const std::int64_t> r, std::span<std::byte> pattern) const;
  void scatter(std::span<std::byte> array, std::size_t width, std::span<const std::int64_t> r,
               std::span<const std::byte> pattern) const;

 private:
  std::size_t array_rank_ = 0;
  std::size_t rep_rank_ = 0;
  std::int64_t pattern_count_ = 0;
  std::vector<std::int64_t> extents_;
  std::vector<std::int64_t> strides_;
  std::vector<std::int64_t> origin_;
  std::vector<std::int64_t> paving_;        // array_rank x rep_rank
  std::vector<std::int64_t> fit_offsets_;   // pattern_count x array_rank
  mutable std::vector<std::int64_t> base_;     // scratch
  mutable std::vector<std::int64_t> scratch_;  // scratch
};

/// pattern[f] = array[element_index(tiler, r, f)], f row-major.
Pattern extract_pattern(const ArrayData& array, const ir::Tiler& tiler,
                        std::span<const std::int64_t> r);

/// array[element_index(tiler, r, f)] = pattern[f]; other elements untouched.
void write_pattern(ArrayData& array, const ir::Tiler& tiler, std::span<const std::int64_t> r,
                   const Pattern& pattern);

struct Coverage {
  enum class Kind { Exact, Overlaps, Gaps };
  Kind kind = Kind::Exact;
  /// Up to kMaxWitnesses array indices hit more than once (Overlaps) or never
  /// (Gaps).
  std::vector<Index> witnesses;

  static constexpr std::size_t kMaxWitnesses = 10;
};

std::string to_string(Coverage::Kind kind);

/// Exhaustive enumeration over every (r, f). Overlaps take precedence over
/// gaps when both occur.
Coverage check_coverage(const ir::Tiler& tiler, const ir::Shape& array_shape,
                        const ir::Shape& repetition);

/// Calls fn(r) for every repetition index in row-major order.
template <typename Fn>
void for_each_index(const ir::Shape& space, Fn&& fn) {
  Index idx(space.rank(), 0);
  const std::int64_t total = space.count();
  for (std::int64_t n = 0; n < total; ++n) {
    fn(std::span<const std::int64_t>(idx));
    for (std::size_t d = space.rank(); d-- > 0;) {
      if (++idx[d] < space.extents[d]) break;
      idx[d] = 0;
    }
  }
}

}  // namespace gmc::tiler
