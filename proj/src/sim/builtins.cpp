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

#include "gmc/sim/builtins.hpp"

#include <algorithm>
#include <cstring>
#include <memory>

namespace gmc::sim {
namespace {

using ir::ScalarType;
using ir::Shape;

std::string expect_arity(std::span<const PortSignature> ins,
                         std::span<const PortSignature> outs, std::size_t n_in,
                         std::size_t n_out) {
  if (ins.size() != n_in || outs.size() != n_out) {
    return "expects " + std::to_string(n_in) + " input(s) and " + std::to_string(n_out) +
           " output(s), task has " + std::to_string(ins.size()) + " and " +
           std::to_string(outs.size());
  }
  return {};
}

std::string expect_fixed(const PortSignature& port, const char* role, const Shape& shape) {
  if (port.type != ScalarType::U8)
    return std::string("expects u8 ") + role + ", port has " +
           std::string(ir::to_string(port.type));
  if (port.shape != shape)
    return std::string("expects ") + role + " pattern " + ir::to_string(shape) +
           ", port has " + ir::to_string(port.shape);
  return {};
}

// All ports share the type and element count of the first input.
std::string expect_uniform(std::span<const PortSignature> ins,
                           std::span<const PortSignature> outs) {
  const PortSignature& ref = ins.front();
  auto mismatch = [&](const PortSignature& p, const char* role) -> std::string {
    if (p.type != ref.type)
      return std::string("expects uniform element type, ") + role + " has " +
             std::string(ir::to_string(p.type)) + " but input 0 has " +
             std::string(ir::to_string(ref.type));
    if (p.shape.count() != ref.shape.count())
      return std::string("expects equal pattern sizes, ") + role + " pattern " +
             ir::to_string(p.shape) + " vs input pattern " + ir::to_string(ref.shape);
    return {};
  };
  for (const auto& p : ins)
    if (auto m = mismatch(p, "input"); !m.empty()) return m;
  for (const auto& p : outs)
    if (auto m = mismatch(p, "output"); !m.empty()) return m;
  return {};
}

template <std::size_t NIn, std::size_t NOut>
std::string check_uniform(std::span<const PortSignature> ins,
                          std::span<const PortSignature> outs) {
  if (auto m = expect_arity(ins, outs, NIn, NOut); !m.empty()) return m;
  return expect_uniform(ins, outs);
}

// hfilter_8to3 / vfilter_9to4

std::string check_hfilter(std::span<const PortSignature> ins,
                          std::span<const PortSignature> outs) {
  if (auto m = expect_arity(ins, outs, 1, 1); !m.empty()) return m;
  if (auto m = expect_fixed(ins[0], "input", Shape{{8}}); !m.empty()) return m;
  return expect_fixed(outs[0], "output", Shape{{3}});
}

std::string check_vfilter(std::span<const PortSignature> ins,
                          std::span<const PortSignature> outs) {
  if (auto m = expect_arity(ins, outs, 1, 1); !m.empty()) return m;
  if (auto m = expect_fixed(ins[0], "input", Shape{{9}}); !m.empty()) return m;
  return expect_fixed(outs[0], "output", Shape{{4}});
}

void run_hfilter(std::span<const PatternIn> ins, std::span<const PatternOut> outs) {
  auto in = reinterpret_cast<const std::uint8_t*>(ins[0].data.data());
  auto out = hfilter_8to3(std::span<const std::uint8_t, 8>(in, 8));
  std::memcpy(outs[0].data.data(), out.data(), out.size());
}

void run_vfilter(std::span<const PatternIn> ins, std::span<const PatternOut> outs) {
  auto in = reinterpret_cast<const std::uint8_t*>(ins[0].data.data());
  auto out = vfilter_9to4(std::span<const std::uint8_t, 9>(in, 9));
  std::memcpy(outs[0].data.data(), out.data(), out.size());
}

std::string_view hfilter_template(ScalarType type) {
  if (type != ScalarType::U8) return {};
  return "${out0}[0] = (uchar)(((uint)${in0}[0] + 5u * (uint)${in0}[1] + 3u) / 6u);\n"
         "${out0}[1] = (uchar)((3u * (uint)${in0}[3] + 3u * (uint)${in0}[4] + 3u) / 6u);\n"
         "${out0}[2] = (uchar)((5u * (uint)${in0}[6] + (uint)${in0}[7] + 3u) / 6u);\n";
}

std::string_view vfilter_template(ScalarType type) {
  if (type != ScalarType::U8) return {};
  return "${out0}[0] = (uchar)((3u * (uint)${in0}[0] + 5u * (uint)${in0}[1] + 4u) / 8u);\n"
         "${out0}[1] = (uchar)(((uint)${in0}[2] + 7u * (uint)${in0}[3] + 4u) / 8u);\n"
         "${out0}[2] = (uchar)((7u * (uint)${in0}[5] + (uint)${in0}[6] + 4u) / 8u);\n"
         "${out0}[3] = (uchar)((5u * (uint)${in0}[7] + 3u * (uint)${in0}[8] + 4u) / 8u);\n";
}

// copy / reverse / dup work on raw elements of any width.

void run_copy(std::span<const PatternIn> ins, std::span<const PatternOut> outs) {
  std::memcpy(outs[0].data.data(), ins[0].data.data(), ins[0].data.size());
}

void run_reverse(std::span<const PatternIn> ins, std::span<const PatternOut> outs) {
  const std::size_t width = ir::byte_width(ins[0].type);
  const auto n = static_cast<std::size_t>(ins[0].count);
  for (std::size_t i = 0; i < n; ++i)
    std::memcpy(outs[0].data.data() + i * width, ins[0].data.data() + (n - 1 - i) * width,
                width);
}

void run_dup(std::span<const PatternIn> ins, std::span<const PatternOut> outs) {
  for (const auto& out : outs) std::memcpy(out.data.data(), ins[0].data.data(), ins[0].data.size());
}

std::string_view copy_template(ScalarType) {
  return "for (int i = 0; i < ${n_out0}; ++i) ${out0}[i] = ${in0}[i];\n";
}

std::string_view reverse_template(ScalarType) {
  return "for (int i = 0; i < ${n_out0}; ++i) ${out0}[i] = ${in0}[${n_in0} - 1 - i];\n";
}

std::string_view dup_template(ScalarType) {
  return "for (int i = 0; i < ${n_in0}; ++i) {\n"
         "  ${out0}[i] = ${in0}[i];\n"
         "  ${out1}[i] = ${in0}[i];\n"
         "}\n";
}

// avg2: u8 rounds half up, i32 floors, f32 is exact-halved.

template <typename T>
T load(const std::byte* p) {
  T v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

template <typename T>
void store(std::byte* p, T v) {
  std::memcpy(p, &v, sizeof v);
}

void run_avg2(std::span<const PatternIn> ins, std::span<const PatternOut> outs) {
  const auto n = outs[0].count;
  const auto* a = ins[0].data.data();
  const auto* b = ins[1].data.data();
  auto* o = outs[0].data.data();
  switch (outs[0].type) {
    case ScalarType::U8:
      for (std::int64_t i = 0; i < n; ++i) {
        unsigned s = std::to_integer<unsigned>(a[i]) + std::to_integer<unsigned>(b[i]) + 1u;
        o[i] = static_cast<std::byte>(s >> 1);
      }
      break;
    case ScalarType::I32:
      for (std::int64_t i = 0; i < n; ++i) {
        auto x = load<std::int32_t>(a + 4 * i);
        auto y = load<std::int32_t>(b + 4 * i);
        store<std::int32_t>(o + 4 * i, (x >> 1) + (y >> 1) + (x & y & 1));
      }
      break;
    case ScalarType::F32:
      for (std::int64_t i = 0; i < n; ++i) {
        auto x = load<float>(a + 4 * i);
        auto y = load<float>(b + 4 * i);
        store<float>(o + 4 * i, (x + y) * 0.5f);
      }
      break;
  }
}

std::string_view avg2_template(ScalarType type) {
  switch (type) {
    case ScalarType::U8:
      return "for (int i = 0; i < ${n_out0}; ++i)\n"
             "  ${out0}[i] = (uchar)(((uint)${in0}[i] + (uint)${in1}[i] + 1u) >> 1);\n";
    case ScalarType::I32:
      return "for (int i = 0; i < ${n_out0}; ++i)\n"
             "  ${out0}[i] = (${in0}[i] >> 1) + (${in1}[i] >> 1) + (${in0}[i] & ${in1}[i] & 1);\n";
    case ScalarType::F32:
      return "for (int i = 0; i < ${n_out0}; ++i)\n"
             "  ${out0}[i] = (${in0}[i] + ${in1}[i]) * 0.5f;\n";
  }
  return {};
}

std::vector<Builtin>& registry() {
  static std::vector<Builtin> builtins = {
      {"hfilter_8to3", check_hfilter, run_hfilter, hfilter_template},
      {"vfilter_9to4", check_vfilter, run_vfilter, vfilter_template},
      {"copy", check_uniform<1, 1>, run_copy, copy_template},
      {"reverse", check_uniform<1, 1>, run_reverse, reverse_template},
      {"avg2", check_uniform<2, 1>, run_avg2, avg2_template},
      {"dup", check_uniform<1, 2>, run_dup, dup_template},
  };
  return builtins;
}

}  // namespace

const Builtin* find_builtin(std::string_view name) {
  const auto& all = registry();
  auto it = std::find_if(all.begin(), all.end(), [&](const Builtin& b) { return b.name == name; });
  return it == all.end() ? nullptr : &*it;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& b : registry()) names.push_back(b.name);
  return names;
}

void register_builtin(Builtin builtin) {
  if (find_builtin(builtin.name)) throw Error("builtin '" + builtin.name + "' already registered");
  registry().push_back(std::move(builtin));
}

std::array<std::uint8_t, 3> hfilter_8to3(std::span<const std::uint8_t, 8> in) {
  auto px = [&](int i) { return static_cast<unsigned>(in[i]); };
  auto clamp = [](unsigned v) { return static_cast<std::uint8_t>(std::min(v, 255u)); };
  return {clamp((1 * px(0) + 5 * px(1) + 3) / 6), clamp((3 * px(3) + 3 * px(4) + 3) / 6),
          clamp((5 * px(6) + 1 * px(7) + 3) / 6)};
}

std::array<std::uint8_t, 4> vfilter_9to4(std::span<const std::uint8_t, 9> in) {
  auto px = [&](int i) { return static_cast<unsigned>(in[i]); };
  auto clamp = [](unsigned v) { return static_cast<std::uint8_t>(std::min(v, 255u)); };
  return {clamp((3 * px(0) + 5 * px(1) + 4) / 8), clamp((1 * px(2) + 7 * px(3) + 4) / 8),
          clamp((7 * px(5) + 1 * px(6) + 4) / 8), clamp((5 * px(7) + 3 * px(8) + 4) / 8)};
}

}  // namespace gmc::sim
