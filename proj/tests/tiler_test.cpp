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

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace gmc::tiler {
namespace {

using ir::Shape;
using testing::make_tiler;

// Input tiler of the luma horizontal filter: 8-column packets along a row.
ir::Tiler hfilter_input() {
  return make_tiler({0, 0}, {{1, 0}, {0, 8}}, {{0}, {1}}, "y_in", {8});
}

ir::Tiler hfilter_output() {
  return make_tiler({0, 0}, {{1, 0}, {0, 3}}, {{0}, {1}}, "y_mid", {3});
}

TEST(FloorModTest, AlwaysNonNegative) {
  EXPECT_EQ(floor_mod(7, 5), 2);
  EXPECT_EQ(floor_mod(-1, 5), 4);
  EXPECT_EQ(floor_mod(-5, 5), 0);
  EXPECT_EQ(floor_mod(-11, 5), 4);
}

TEST(LinearizeTest, RowMajor) {
  const Shape s{{3, 4, 5}};
  const Index idx = {2, 1, 3};
  EXPECT_EQ(linearize(idx, s), 2 * 20 + 1 * 5 + 3);
  EXPECT_EQ(delinearize(48, s), idx);
}

TEST(ElementIndexTest, PavingAndFitting) {
  const Index r = {0, 1}, f = {3};
  // 0 + 0 + 0 = 0; 0 + 8*1 + 1*3 = 11.
  EXPECT_EQ(element_index(hfilter_input(), Shape{{288, 352}}, r, f), (Index{0, 11}));
}

TEST(ElementIndexTest, IdentityPaving) {
  const ir::Tiler t = make_tiler({0, 0}, {{1, 0}, {0, 1}}, {{0, 0}, {0, 0}}, "a", {1, 1});
  const Index r = {5, 7}, f = {0, 0};
  EXPECT_EQ(element_index(t, Shape{{10, 10}}, r, f), (Index{5, 7}));
}

TEST(ElementIndexTest, WrapsAroundTheArray) {
  const ir::Tiler t = make_tiler({350}, {{0}}, {{1}}, "a", {8});
  const Index r = {0}, f = {5};
  // (350 + 5) mod 352 = 3.
  EXPECT_EQ(element_index(t, Shape{{352}}, r, f), (Index{3}));
}

TEST(ElementIndexTest, NegativeEntriesWrapToTheEnd) {
  const ir::Tiler t = make_tiler({0}, {{-2}}, {{1}}, "a", {2});
  const Index r = {1}, f = {0};
  EXPECT_EQ(element_index(t, Shape{{10}}, r, f), (Index{8}));
}

TEST(ElementIndexTest, RankMismatchThrows) {
  const Index r = {0}, f = {0};
  EXPECT_THROW(element_index(hfilter_input(), Shape{{288, 352}}, r, f), Error);
  const Index r2 = {0, 0};
  EXPECT_THROW(element_index(hfilter_input(), Shape{{288}}, r2, f), Error);
}

TEST(CheckDimensionsTest, ReportsInconsistentMatrices) {
  EXPECT_EQ(check_dimensions(hfilter_input(), Shape{{288, 352}}, Shape{{288, 44}}), "");
  EXPECT_NE(check_dimensions(hfilter_input(), Shape{{288, 352}}, Shape{{288}}), "");
  EXPECT_NE(check_dimensions(hfilter_input(), Shape{{352}}, Shape{{288, 44}}), "");
  ir::Tiler bad = hfilter_input();
  bad.fitting = {{0, 0}, {1, 0}};  // two columns for a rank-1 pattern
  EXPECT_NE(check_dimensions(bad, Shape{{288, 352}}, Shape{{288, 44}}), "");
}

TEST(CheckDimensionsTest, EmptyFittingOnlyForSingleElementPatterns) {
  ir::Tiler t = make_tiler({0}, {{1}}, {{}}, "a", {1});
  EXPECT_TRUE(has_empty_fitting(t));
  EXPECT_EQ(check_dimensions(t, Shape{{4}}, Shape{{4}}), "");
  t.pattern = Shape{{2}};
  EXPECT_NE(check_dimensions(t, Shape{{4}}, Shape{{4}}), "");
}

ArrayData column_ramp(const Shape& shape) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::U8, shape);
  for (std::int64_t i = 0; i < a.count(); ++i)
    a.bytes[i] = static_cast<std::byte>(i % shape.extents[1]);
  return a;
}

TEST(ExtractPatternTest, SelectsThePavedPacket) {
  const ArrayData a = column_ramp(Shape{{288, 352}});
  const Index r = {0, 1};
  const Pattern p = extract_pattern(a, hfilter_input(), r);
  ASSERT_EQ(p.shape, Shape{{8}});
  for (int i = 0; i < 8; ++i) EXPECT_EQ(p.u8(i), 8 + i);
}

TEST(ExtractPatternTest, ConstantArray) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::U8, Shape{{288, 352}});
  std::fill(a.bytes.begin(), a.bytes.end(), std::byte{42});
  for (Index r : {Index{0, 0}, Index{17, 43}, Index{287, 5}}) {
    const Pattern p = extract_pattern(a, hfilter_input(), r);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(p.u8(i), 42);
  }
}

TEST(ExtractPatternTest, SingleElementPattern) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::U8, Shape{{4, 5}});
  for (std::int64_t i = 0; i < 20; ++i) a.bytes[i] = static_cast<std::byte>(i);
  const ir::Tiler t = make_tiler({1, 1}, {{1, 0}, {0, 2}}, {{}, {}}, "a", {1});
  const Index r = {2, 1};
  const Pattern p = extract_pattern(a, t, r);
  ASSERT_EQ(p.count(), 1);
  EXPECT_EQ(p.u8(0), 3 * 5 + 3);  // element (1+2, 1+2)
}

TEST(ExtractPatternTest, WideElements) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::I32, Shape{{6}});
  for (std::int32_t i = 0; i < 6; ++i) std::memcpy(a.bytes.data() + 4 * i, &i, 4);
  const ir::Tiler t = make_tiler({4}, {{1}}, {{1}}, "a", {3});
  const Index r = {0};
  const Pattern p = extract_pattern(a, t, r);
  std::int32_t v[3];
  std::memcpy(v, p.bytes.data(), sizeof v);
  EXPECT_EQ(v[0], 4);
  EXPECT_EQ(v[1], 5);
  EXPECT_EQ(v[2], 0);
}

TEST(WritePatternTest, WritesThreeColumns) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::U8, Shape{{288, 132}});
  Pattern p = ArrayData::zeros(ir::ScalarType::U8, Shape{{3}});
  p.bytes = {std::byte{7}, std::byte{8}, std::byte{9}};
  const Index r = {0, 1};
  write_pattern(a, hfilter_output(), r, p);
  EXPECT_EQ(a.u8(3), 7);
  EXPECT_EQ(a.u8(4), 8);
  EXPECT_EQ(a.u8(5), 9);
  int nonzero = 0;
  for (std::int64_t i = 0; i < a.count(); ++i) nonzero += a.u8(i) != 0;
  EXPECT_EQ(nonzero, 3);
}

TEST(WritePatternTest, WriteThenExtractRoundTrips) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::U8, Shape{{288, 132}});
  Pattern p = ArrayData::zeros(ir::ScalarType::U8, Shape{{3}});
  p.bytes = {std::byte{1}, std::byte{2}, std::byte{3}};
  const Index r = {100, 40};
  write_pattern(a, hfilter_output(), r, p);
  EXPECT_EQ(extract_pattern(a, hfilter_output(), r), p);
}

TEST(WritePatternTest, PatternShapeMismatchThrows) {
  ArrayData a = ArrayData::zeros(ir::ScalarType::U8, Shape{{288, 132}});
  const Pattern p = ArrayData::zeros(ir::ScalarType::U8, Shape{{4}});
  const Index r = {0, 0};
  EXPECT_THROW(write_pattern(a, hfilter_output(), r, p), Error);
  const Pattern wrong_type = ArrayData::zeros(ir::ScalarType::I32, Shape{{3}});
  EXPECT_THROW(write_pattern(a, hfilter_output(), r, wrong_type), Error);
}

TEST(ExtractPatternTest, ArrayRankMismatchThrows) {
  const ArrayData a = ArrayData::zeros(ir::ScalarType::U8, Shape{{352}});
  const Index r = {0, 0};
  EXPECT_THROW(extract_pattern(a, hfilter_input(), r), Error);
}

TEST(CheckCoverageTest, DownscalerOutputIsExact) {
  const Coverage c = check_coverage(hfilter_output(), Shape{{288, 132}}, Shape{{288, 44}});
  EXPECT_EQ(c.kind, Coverage::Kind::Exact);
  EXPECT_TRUE(c.witnesses.empty());
}

TEST(CheckCoverageTest, StrideBelowTileOverlaps) {
  const ir::Tiler t = make_tiler({0}, {{4}}, {{1}}, "a", {8});
  const Coverage c = check_coverage(t, Shape{{352}}, Shape{{88}});
  EXPECT_EQ(c.kind, Coverage::Kind::Overlaps);
  EXPECT_FALSE(c.witnesses.empty());
  EXPECT_LE(c.witnesses.size(), Coverage::kMaxWitnesses);
}

TEST(CheckCoverageTest, StrideAboveTileLeavesGaps) {
  // Tiles {0,1,2}, {4,5,6}, {8,9,10}.
  const ir::Tiler t = make_tiler({0}, {{4}}, {{1}}, "a", {3});
  const Coverage c = check_coverage(t, Shape{{12}}, Shape{{3}});
  EXPECT_EQ(c.kind, Coverage::Kind::Gaps);
  EXPECT_EQ(c.witnesses, (std::vector<Index>{{3}, {7}, {11}}));
}

TEST(CheckCoverageTest, WitnessesAreCapped) {
  const ir::Tiler t = make_tiler({0}, {{2}}, {{1}}, "a", {1});
  const Coverage c = check_coverage(t, Shape{{100}}, Shape{{50}});
  EXPECT_EQ(c.kind, Coverage::Kind::Gaps);
  EXPECT_EQ(c.witnesses.size(), Coverage::kMaxWitnesses);
  EXPECT_EQ(c.witnesses.front(), Index{1});
}

TEST(CheckCoverageTest, OverlapsReportedBeforeGaps) {
  // Both tiles land on {0,1}; {2,3} are never hit.
  const ir::Tiler t = make_tiler({0}, {{0}}, {{1}}, "a", {2});
  EXPECT_EQ(check_coverage(t, Shape{{4}}, Shape{{2}}).kind, Coverage::Kind::Overlaps);
}

TEST(TileAccessorTest, OffsetsMatchElementIndex) {
  const Shape shape{{288, 352}};
  const TileAccessor acc(hfilter_input(), shape);
  ASSERT_EQ(acc.pattern_count(), 8);
  std::vector<std::int64_t> offs(8);
  const Index r = {3, 43};
  acc.offsets(r, offs);
  for (std::int64_t f = 0; f < 8; ++f) {
    const Index fi = {f};
    EXPECT_EQ(offs[f], linearize(element_index(hfilter_input(), shape, r, fi), shape));
  }
}

TEST(ForEachIndexTest, RowMajorOrder) {
  std::vector<Index> seen;
  for_each_index(Shape{{2, 3}}, [&](std::span<const std::int64_t> r) {
    seen.emplace_back(r.begin(), r.end());
  });
  EXPECT_EQ(seen, (std::vector<Index>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}));
}

}  // namespace
}  // namespace gmc::tiler
