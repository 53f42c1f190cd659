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
#include <sstream>
#include <tuple>

#include "gmc/frontend/parser.hpp"

namespace gmc::frontend {
namespace {

std::string ivec(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string imat(const ir::Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ", ";
    s += ivec(m[i]);
  }
  return s + "]";
}

void print_port(std::ostream& os, const ir::Port& p) {
  os << "  " << ir::to_string(p.direction) << ' ' << p.name << " from " << p.tiler.array
     << " tiler {\n"
     << "    origin " << ivec(p.tiler.origin) << '\n'
     << "    paving " << imat(p.tiler.paving) << '\n'
     << "    fitting " << imat(p.tiler.fitting) << '\n'
     << "    pattern " << ivec(p.tiler.pattern.extents) << '\n'
     << "  }\n";
}

}  // namespace

std::string print_model(const ir::Model& model) {
  std::ostringstream os;
  for (const auto& proc : model.processors) {
    const bool device = proc.kind == ir::ProcessorKind::Device;
    os << (device ? "device " : "host ") << proc.name << " {\n";
    for (const auto& mem : model.memories) {
      if (mem.owner != proc.name) continue;
      os << "  memory " << mem.name;
      if (device) os << " kind " << ir::to_string(mem.region);
      os << '\n';
    }
    if (device) {
      os << "  maxwg " << proc.max_workgroup_size << '\n';
      if (proc.max_dims != 3) os << "  maxdims " << proc.max_dims << '\n';
    }
    os << "}\n\n";
  }

  for (const auto& a : model.arrays)
    os << "array " << a.name << " : " << ir::to_string(a.element) << ' ' << ivec(a.shape.extents)
       << '\n';
  if (!model.arrays.empty()) os << '\n';

  for (const auto& t : model.tasks) {
    os << "task " << t.name << " repeat " << ivec(t.repetition.extents) << " body " << t.body
       << " {\n";
    for (const auto& p : t.inputs) print_port(os, p);
    for (const auto& p : t.outputs) print_port(os, p);
    os << "}\n\n";
  }

  for (const auto& [task, proc] : model.allocation.task_map)
    os << "allocate " << task << " on " << proc << '\n';
  for (const auto& [array, mem] : model.allocation.array_map)
    os << "allocate " << array << " on " << mem << '\n';
  if (!model.allocation.task_map.empty() || !model.allocation.array_map.empty()) os << '\n';

  for (const auto& c : model.connectors) os << "connect " << c.from << " -> " << c.to << '\n';

  std::string text = os.str();
  while (text.size() >= 2 && text[text.size() - 1] == '\n' && text[text.size() - 2] == '\n')
    text.pop_back();
  return text;
}

std::string format_diagnostics(const Diagnostics& diags, std::string_view source) {
  std::vector<const Diagnostic*> located, unlocated;
  for (const auto& d : diags) (d.span.known() ? located : unlocated).push_back(&d);
  std::stable_sort(located.begin(), located.end(), [](const Diagnostic* a, const Diagnostic* b) {
    return std::tie(a->span.line, a->span.column) < std::tie(b->span.line, b->span.column);
  });

  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= source.size();) {
    auto end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    lines.push_back(source.substr(start, end - start));
    start = end + 1;
  }

  auto severity = [](Severity s) { return s == Severity::Error ? "error" : "warning"; };
  std::string out;
  for (const Diagnostic* d : located) {
    const auto& sp = d->span;
    out += sp.file + ":" + std::to_string(sp.line) + ":" + std::to_string(sp.column) + ": " +
           severity(d->severity) + "[" + d->code + "]: " + d->message + "\n";
    if (sp.line - 1 < static_cast<int>(lines.size())) {
      std::string_view text = lines[sp.line - 1];
      if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
      out += std::string(text) + "\n";
      // Keep tabs so the caret lines up with the echoed source line.
      std::string caret;
      for (int c = 1; c < sp.column; ++c) {
        auto i = static_cast<std::size_t>(c - 1);
        caret += i < text.size() && text[i] == '\t' ? '\t' : ' ';
      }
      caret += '^';
      if (sp.length > 1) caret += std::string(static_cast<std::size_t>(sp.length - 1), '~');
      out += caret + "\n";
    }
  }
  for (const Diagnostic* d : unlocated)
    out += (d->path.empty() ? std::string("model") : d->path) + ": " + severity(d->severity) +
           "[" + d->code + "]: " + d->message + "\n";
  return out;
}

}  // namespace gmc::frontend
