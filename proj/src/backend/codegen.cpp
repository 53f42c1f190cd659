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

#include "codegen.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "gmc/backend/backend.hpp"
#include "gmc/sim/builtins.hpp"
#include "gmc/tiler/tiler.hpp"

namespace gmc::backend {
namespace {

const std::set<std::string, std::less<>>& reserved_words() {
  static const std::set<std::string, std::less<>> words = {
      // C / OpenCL C keywords and qualifiers
      "auto", "break", "case", "char", "const", "continue", "default", "do", "double", "else",
      "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long", "register",
      "restrict", "return", "short", "signed", "sizeof", "static", "struct", "switch", "typedef",
      "union", "unsigned", "void", "volatile", "while", "bool", "uchar", "ushort", "uint",
      "ulong", "half", "size_t", "ptrdiff_t", "intptr_t", "uintptr_t", "kernel", "global",
      "local", "constant", "private", "read_only", "write_only", "image2d_t", "image3d_t",
      "sampler_t", "event_t", "true", "false",
      // work-item functions
      "get_global_id", "get_global_size", "get_local_id", "get_local_size", "get_group_id",
      "get_num_groups", "get_work_dim", "barrier",
      // names used by the generated code itself
      "lin", "rem", "f", "i", "main", "argc", "argv", "queue", "context", "program", "device",
      "platform", "err", "frame", "in", "out", "max_frames", "h2d_bytes", "d2h_bytes", "source",
      "source_size", "global_size", "local_size", "build_log", "log_size"};
  return words;
}

bool reserved(std::string_view name) {
  static const std::regex generated(
      R"((r|f|in|out)[0-9]+|(char|uchar|short|ushort|int|uint|long|ulong|float|double|half)(2|3|4|8|16)|gmc_.*|cl_.*|CL_.*)");
  return reserved_words().count(name) > 0 ||
         std::regex_match(std::string(name), generated);
}

}  // namespace

std::string_view to_string(ScheduleMode mode) {
  return mode == ScheduleMode::Naive ? "naive" : "optimized";
}

std::string sanitize_identifier(std::string_view name) {
  std::string id;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    id += ok ? c : '_';
  }
  if (id.empty() || (id[0] >= '0' && id[0] <= '9')) id.insert(id.begin(), '_');
  // Leading double underscores are reserved in C.
  if (id.size() >= 2 && id[0] == '_' && id[1] == '_') id.insert(id.begin(), 'x');
  if (reserved(id)) id += '_';
  return id;
}

namespace detail {

std::string_view c_type(ir::ScalarType type) {
  switch (type) {
    case ir::ScalarType::U8: return "uchar";
    case ir::ScalarType::I32: return "int";
    case ir::ScalarType::F32: return "float";
  }
  return "?";
}

std::string substitute(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto open = text.find("${", i);
    if (open == std::string_view::npos) {
      out.append(text.substr(i));
      break;
    }
    auto close = text.find('}', open);
    if (close == std::string_view::npos) throw Error("unterminated placeholder in template");
    out.append(text.substr(i, open - i));
    const std::string key(text.substr(open + 2, close - open - 2));
    auto it = values.find(key);
    if (it == values.end()) throw Error("template placeholder '${" + key + "}' has no value");
    out += it->second;
    i = close + 1;
  }
  return out;
}

void append_indented(std::string& out, std::string_view text, std::string_view indent) {
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty()) {
      out += indent;
      out += line;
    }
    out += '\n';
    start = end + 1;
  }
}

std::vector<std::string> task_arrays(const ir::RepetitiveTask& task) {
  std::vector<std::string> names;
  for (const auto* list : {&task.inputs, &task.outputs})
    for (const auto& p : *list)
      if (std::find(names.begin(), names.end(), p.tiler.array) == names.end())
        names.push_back(p.tiler.array);
  return names;
}

Names make_names(const ir::Model& model) {
  Names names;
  std::map<std::string, std::string> taken;  // identifier -> original
  auto claim = [&](const std::string& original, const char* what) {
    std::string id = sanitize_identifier(original);
    auto [it, inserted] = taken.emplace(id, original);
    if (!inserted && it->second != original)
      throw Error(std::string(what) + " '" + original + "' and '" + it->second +
                  "' both map to generated identifier '" + id + "'");
    return id;
  };
  for (const auto& t : model.tasks) names.tasks[t.name] = claim(t.name, "task");
  for (const auto& a : model.arrays) names.arrays[a.name] = claim(a.name, "array");
  return names;
}

namespace {

std::string term(std::int64_t coeff, const std::string& var) {
  if (coeff == 1) return var;
  return std::to_string(coeff) + " * " + var;
}

// origin[d] + paving[d]·r + fitting[d]·f as C, omitting zero terms.
std::string affine(const ir::Tiler& t, std::size_t d) {
  std::vector<std::pair<std::int64_t, std::string>> terms;
  for (std::size_t k = 0; k < t.paving[d].size(); ++k)
    if (t.paving[d][k] != 0) terms.emplace_back(t.paving[d][k], "r" + std::to_string(k));
  if (!tiler::has_empty_fitting(t))
    for (std::size_t k = 0; k < t.fitting[d].size(); ++k)
      if (t.fitting[d][k] != 0) terms.emplace_back(t.fitting[d][k], "f" + std::to_string(k));

  std::string s;
  for (const auto& [c, v] : terms) {
    if (s.empty()) {
      s = c < 0 ? "-" + term(-c, v) : term(c, v);
    } else {
      s += c < 0 ? " - " + term(-c, v) : " + " + term(c, v);
    }
  }
  const std::int64_t o = t.origin[d];
  if (s.empty()) return std::to_string(o);
  if (o > 0) s += " + " + std::to_string(o);
  if (o < 0) s += " - " + std::to_string(-o);
  return s;
}

std::string address(const ir::Tiler& t, const ir::Shape& shape) {
  std::string s;
  std::int64_t stride = 1;
  std::vector<std::string> parts(shape.rank());
  for (std::size_t d = shape.rank(); d-- > 0;) {
    std::string idx = "gmc_mod(" + affine(t, d) + ", " + std::to_string(shape.extents[d]) + ")";
    parts[d] = stride == 1 ? idx : idx + " * " + std::to_string(stride);
    stride *= shape.extents[d];
  }
  for (std::size_t d = 0; d < parts.size(); ++d) s += (d ? " + " : "") + parts[d];
  return s;
}

// Pattern index variables used by a tiler's fitting.
std::vector<std::size_t> used_pattern_dims(const ir::Tiler& t) {
  std::vector<std::size_t> used;
  if (tiler::has_empty_fitting(t)) return used;
  for (std::size_t k = 0; k < t.pattern.rank(); ++k) {
    bool nonzero = false;
    for (const auto& row : t.fitting) nonzero = nonzero || row[k] != 0;
    if (nonzero) used.push_back(k);
  }
  return used;
}

std::string pattern_loop(const ir::Port& port, const ir::ArrayValue& array,
                         const std::string& param, const std::string& local, bool gather) {
  const ir::Tiler& t = port.tiler;
  std::string s = "for (int f = 0; f < " + std::to_string(t.pattern.count()) + "; ++f) {\n";
  std::int64_t stride = t.pattern.count();
  std::vector<std::int64_t> strides(t.pattern.rank());
  for (std::size_t k = 0; k < t.pattern.rank(); ++k) {
    stride /= t.pattern.extents[k];
    strides[k] = stride;
  }
  for (auto k : used_pattern_dims(t)) {
    std::string expr = strides[k] == 1 ? "f" : "f / " + std::to_string(strides[k]);
    if (k > 0) expr = "(" + expr + ") % " + std::to_string(t.pattern.extents[k]);
    if (k > 0 && strides[k] == 1) expr = "f % " + std::to_string(t.pattern.extents[k]);
    s += "  const int f" + std::to_string(k) + " = " + expr + ";\n";
  }
  const std::string element = param + "[" + address(t, array.shape) + "]";
  if (gather)
    s += "  " + local + "[f] = " + element + ";\n";
  else
    s += "  " + element + " = " + local + "[f];\n";
  return s + "}\n";
}

}  // namespace

std::string emit_repetition(const ir::Model& model, const ir::RepetitiveTask& task,
                            const Names& names, std::string_view indent) {
  const sim::Builtin* body = sim::find_builtin(task.body);
  if (!body) throw Error("task '" + task.name + "' has unknown body '" + task.body + "'");

  // Body inputs are the In/InOut ports; outputs the Out ports then InOut ports.
  std::vector<const ir::Port*> outs;
  for (const auto& p : task.outputs) outs.push_back(&p);
  for (const auto& p : task.inputs)
    if (p.direction == ir::Direction::InOut) outs.push_back(&p);

  auto array_of = [&](const ir::Port& p) -> const ir::ArrayValue& {
    const ir::ArrayValue* a = model.find_array(p.tiler.array);
    if (!a) throw Error("port '" + p.name + "' tiles unknown array '" + p.tiler.array + "'");
    return *a;
  };

  const ir::ScalarType type = array_of(task.inputs.front()).element;
  const std::string_view tmpl = body->kernel_template ? body->kernel_template(type) : std::string_view{};
  if (tmpl.empty())
    throw Error("body '" + task.body + "' has no kernel template for element type " +
                std::string(ir::to_string(type)));

  std::string s;
  // Repetition index, row-major over the multiplicity.
  const auto& ext = task.repetition.extents;
  if (ext.size() == 1) {
    s += "const int r0 = lin;\n";
  } else {
    s += "int rem = lin;\n";
    for (std::size_t d = ext.size(); d-- > 1;) {
      s += "const int r" + std::to_string(d) + " = rem % " + std::to_string(ext[d]) + ";\n";
      s += "rem /= " + std::to_string(ext[d]) + ";\n";
    }
    s += "const int r0 = rem;\n";
  }

  std::map<std::string, std::string> values{{"T", std::string(c_type(type))}};
  for (std::size_t i = 0; i < task.inputs.size(); ++i) {
    const auto& p = task.inputs[i];
    const auto n = std::to_string(p.tiler.pattern.count());
    const std::string local = "in" + std::to_string(i);
    s += std::string(c_type(array_of(p).element)) + " " + local + "[" + n + "];\n";
    values[local] = local;
    values["n_" + local] = n;
  }
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const auto n = std::to_string(outs[i]->tiler.pattern.count());
    const std::string local = "out" + std::to_string(i);
    s += std::string(c_type(array_of(*outs[i]).element)) + " " + local + "[" + n + "];\n";
    values[local] = local;
    values["n_" + local] = n;
  }
  for (std::size_t i = 0; i < task.inputs.size(); ++i) {
    const auto& p = task.inputs[i];
    s += pattern_loop(p, array_of(p), names.arrays.at(p.tiler.array), "in" + std::to_string(i), true);
  }
  s += "{\n";
  append_indented(s, substitute(tmpl, values), "  ");
  s += "}\n";
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const auto& p = *outs[i];
    s += pattern_loop(p, array_of(p), names.arrays.at(p.tiler.array), "out" + std::to_string(i), false);
  }

  std::string out;
  append_indented(out, s, indent);
  return out;
}

std::string support_functions(bool host_side) {
  return std::string(host_side ? "static " : "") +
         "int gmc_mod(int a, int m)\n"
         "{\n"
         "  const int r = a % m;\n"
         "  return r < 0 ? r + m : r;\n"
         "}\n";
}

}  // namespace detail
}  // namespace gmc::backend
