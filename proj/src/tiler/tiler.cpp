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

#include "gmc/tiler/tiler.hpp"

#include <cstring>

namespace gmc::tiler {

std::int64_t linearize(std::span<const std::int64_t> index, const ir::Shape& shape) {
  std::int64_t linear = 0;
  for (std::size_t d = 0; d < shape.rank(); ++d) linear = linear * shape.extents[d] + index[d];
  return linear;
}

Index delinearize(std::int64_t linear, const ir::Shape& shape) {
  Index idx(shape.rank(), 0);
  for (std::size_t d = shape.rank(); d-- > 0;) {
    idx[d] = linear % shape.extents[d];
    linear /= shape.extents[d];
  }
  return idx;
}

bool has_empty_fitting(const ir::Tiler& tiler) {
  for (const auto& row : tiler.fitting)
    if (!row.empty()) return false;
  return true;
}

std::string check_dimensions(const ir::Tiler& tiler, const ir::Shape& array_shape,
                             const ir::Shape& repetition) {
  const std::size_t rank = array_shape.rank();
  auto dims = [](std::size_t n) { return std::to_string(n); };
  if (tiler.origin.size() != rank)
    return "origin has " + dims(tiler.origin.size()) + " entries, array '" + tiler.array +
           "' has rank " + dims(rank);
  if (tiler.paving.size() != rank)
    return "paving has " + dims(tiler.paving.size()) + " rows, array '" + tiler.array +
           "' has rank " + dims(rank);
  for (const auto& row : tiler.paving)
    if (row.size() != repetition.rank())
      return "paving has " + dims(row.size()) + " columns, repetition space " +
             ir::to_string(repetition) + " has rank " + dims(repetition.rank());
  if (has_empty_fitting(tiler)) {
    if (!tiler.fitting.empty() && tiler.fitting.size() != rank)
      return "fitting has " + dims(tiler.fitting.size()) + " rows, array has rank " + dims(rank);
    if (tiler.pattern.count() != 1)
      return "empty fitting requires a one-element pattern, pattern is " +
             ir::to_string(tiler.pattern);
    return {};
  }
  if (tiler.fitting.size() != rank)
    return "fitting has " + dims(tiler.fitting.size()) + " rows, array '" + tiler.array +
           "' has rank " + dims(rank);
  for (const auto& row : tiler.fitting)
    if (row.size() != tiler.pattern.rank())
      return "fitting has " + dims(row.size()) + " columns, pattern " +
             ir::to_string(tiler.pattern) + " has rank " + dims(tiler.pattern.rank());
  return {};
}

Index element_index(const ir::Tiler& tiler, const ir::Shape& array_shape,
                    std::span<const std::int64_t> r, std::span<const std::int64_t> f) {
  const std::size_t rank = array_shape.rank();
  const bool empty_fit = has_empty_fitting(tiler);
  if (tiler.origin.size() != rank || tiler.paving.size() != rank ||
      (!empty_fit && tiler.fitting.size() != rank))
    throw Error("tiler rank does not match array rank");
  Index e(rank);
  for (std::size_t d = 0; d < rank; ++d) {
    if (tiler.paving[d].size() != r.size())
      throw Error("repetition index rank does not match paving");
    std::int64_t v = tiler.origin[d];
    for (std::size_t k = 0; k < r.size(); ++k) v += tiler.paving[d][k] * r[k];
    if (!empty_fit) {
      if (tiler.fitting[d].size() != f.size())
        throw Error("pattern index rank does not match fitting");
      for (std::size_t k = 0; k < f.size(); ++k) v += tiler.fitting[d][k] * f[k];
    }
    e[d] = floor_mod(v, array_shape.extents[d]);
  }
  return e;
}

ArrayData ArrayData::zeros(ir::ScalarType type, ir::Shape shape) {
  ArrayData a{type, std::move(shape), {}};
  a.bytes.assign(static_cast<std::size_t>(a.count()) * a.width(), std::byte{0});
  return a;
}

TileAccessor::TileAccessor(const ir::Tiler& tiler, const ir::Shape& array_shape)
    : array_rank_(array_shape.rank()),
      rep_rank_(tiler.paving.empty() ? 0 : tiler.paving.front().size()),
      pattern_count_(tiler.pattern.count()),
      extents_(array_shape.extents),
      strides_(array_shape.rank(), 1),
      origin_(tiler.origin),
      base_(array_shape.rank()),
      scratch_(static_cast<std::size_t>(pattern_count_)) {
  for (std::size_t d = array_rank_; d-- > 1;) strides_[d - 1] = strides_[d] * extents_[d];
  for (const auto& row : tiler.paving) paving_.insert(paving_.end(), row.begin(), row.end());

  const bool empty_fit = has_empty_fitting(tiler);
  fit_offsets_.reserve(static_cast<std::size_t>(pattern_count_) * array_rank_);
  for_each_index(tiler.pattern, [&](std::span<const std::int64_t> f) {
    for (std::size_t d = 0; d < array_rank_; ++d) {
      std::int64_t v = 0;
      if (!empty_fit)
        for (std::size_t k = 0; k < f.size(); ++k) v += tiler.fitting[d][k] * f[k];
      fit_offsets_.push_back(v);
    }
  });
}

void TileAccessor::offsets(std::span<const std::int64_t> r, std::span<std::int64_t> out) const {
  for (std::size_t d = 0; d < array_rank_; ++d) {
    std::int64_t v = origin_[d];
    for (std::size_t k = 0; k < rep_rank_; ++k) v += paving_[d * rep_rank_ + k] * r[k];
    base_[d] = v;
  }
  const std::int64_t* fit = fit_offsets_.data();
  for (std::int64_t p = 0; p < pattern_count_; ++p) {
    std::int64_t linear = 0;
    for (std::size_t d = 0; d < array_rank_; ++d, ++fit)
      linear += floor_mod(base_[d] + *fit, extents_[d]) * strides_[d];
    out[p] = linear;
  }
}

void TileAccessor::gather(std::span<const std::byte> array, std::size_t width,
                          std::span<const std::int64_t> r, std::span<std::byte> pattern) const {
  offsets(r, scratch_);
  for (std::int64_t p = 0; p < pattern_count_; ++p)
    std::memcpy(pattern.data() + p * width, array.data() + scratch_[p] * width, width);
}

void TileAccessor::scatter(std::span<std::byte> array, std::size_t width,
                           std::span<const std::int64_t> r,
                           std::span<const std::byte> pattern) const {
  offsets(r, scratch_);
  for (std::int64_t p = 0; p < pattern_count_; ++p)
    std::memcpy(array.data() + scratch_[p] * width, pattern.data() + p * width, width);
}

namespace {

void require_shape(const ArrayData& array, const ir::Tiler& tiler) {
  if (tiler.origin.size() != array.shape.rank())
    throw Error("array shape " + ir::to_string(array.shape) + " does not match tiler of '" +
                tiler.array + "'");
}

void require_rank(const ir::Tiler& tiler, std::span<const std::int64_t> r) {
  for (const auto& row : tiler.paving)
    if (row.size() != r.size()) throw Error("repetition index rank does not match paving");
}

}  // namespace

Pattern extract_pattern(const ArrayData& array, const ir::Tiler& tiler,
                        std::span<const std::int64_t> r) {
  require_shape(array, tiler);
  require_rank(tiler, r);
  Pattern p = ArrayData::zeros(array.type, tiler.pattern);
  TileAccessor(tiler, array.shape).gather(array.bytes, array.width(), r, p.bytes);
  return p;
}

void write_pattern(ArrayData& array, const ir::Tiler& tiler, std::span<const std::int64_t> r,
                   const Pattern& pattern) {
  require_shape(array, tiler);
  require_rank(tiler, r);
  if (pattern.shape != tiler.pattern || pattern.type != array.type)
    throw Error("pattern shape " + ir::to_string(pattern.shape) + " does not match tiler pattern " +
                ir::to_string(tiler.pattern));
  TileAccessor(tiler, array.shape).scatter(array.bytes, array.width(), r, pattern.bytes);
}

std::string to_string(Coverage::Kind kind) {
  switch (kind) {
    case Coverage::Kind::Exact: return "exact";
    case Coverage::Kind::Overlaps: return "overlaps";
    case Coverage::Kind::Gaps: return "gaps";
  }
  return "?";
}

Coverage check_coverage(const ir::Tiler& tiler, const ir::Shape& array_shape,
                        const ir::Shape& repetition) {
  std::vector<std::uint32_t> hits(static_cast<std::size_t>(array_shape.count()), 0);
  TileAccessor access(tiler, array_shape);
  std::vector<std::int64_t> idx(access.pattern_count());
  for_each_index(repetition, [&](std::span<const std::int64_t> r) {
    access.offsets(r, idx);
    for (auto i : idx) ++hits[i];
  });

  Coverage result;
  for (std::size_t i = 0; i < hits.size() && result.witnesses.size() < Coverage::kMaxWitnesses; ++i)
    if (hits[i] > 1) result.witnesses.push_back(delinearize(static_cast<std::int64_t>(i), array_shape));
  if (!result.witnesses.empty()) {
    result.kind = Coverage::Kind::Overlaps;
    return result;
  }
  for (std::size_t i = 0; i < hits.size() && result.witnesses.size() < Coverage::kMaxWitnesses; ++i)
    if (hits[i] == 0) result.witnesses.push_back(delinearize(static_cast<std::int64_t>(i), array_shape));
  if (!result.witnesses.empty()) result.kind = Coverage::Kind::Gaps;
  return result;
}

}  // namespace gmc::tiler
