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

#include "gmc/ir/validate.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gmc/sim/builtins.hpp"
#include "gmc/tiler/tiler.hpp"

namespace gmc {

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace gmc

namespace gmc::ir {
namespace {

class Validator {
 public:
  explicit Validator(const Model& model) : m_(model) {}

  Diagnostics run() {
    check_names();
    check_architecture();
    check_arrays();
    check_tasks();
    check_allocation();
    check_connectors();
    check_cycles();
    return std::move(diags_);
  }

 private:
  void error(std::string code, const std::string& path, std::string message) {
    report(Severity::Error, std::move(code), path, std::move(message));
  }
  void warning(std::string code, const std::string& path, std::string message) {
    report(Severity::Warning, std::move(code), path, std::move(message));
  }
  void report(Severity sev, std::string code, const std::string& path, std::string message) {
    diags_.push_back({sev, std::move(code), path, std::move(message), m_.location(path)});
  }

  // Arrays, tasks, processors and memories share one namespace.
  void check_names() {
    std::set<std::string> seen;
    auto visit = [&](const std::string& name, const std::string& path) {
      if (!seen.insert(name).second) error("V102", path, "duplicate identifier '" + name + "'");
    };
    for (const auto& a : m_.arrays) visit(a.name, array_path(a.name));
    for (const auto& t : m_.tasks) visit(t.name, task_path(t.name));
    for (const auto& p : m_.processors) visit(p.name, processor_path(p.name));
    for (const auto& mem : m_.memories) visit(mem.name, memory_path(mem.name));
  }

  void check_architecture() {
    auto hosts = std::count_if(m_.processors.begin(), m_.processors.end(),
                               [](const Processor& p) { return p.kind == ProcessorKind::Host; });
    if (hosts != 1)
      error("V109", "model",
            "expected exactly one host processor, found " + std::to_string(hosts));
    for (const auto& p : m_.processors) {
      if (p.kind != ProcessorKind::Device) continue;
      if (p.max_workgroup_size < 1)
        error("V117", processor_path(p.name),
              "device max work-group size must be positive, got " +
                  std::to_string(p.max_workgroup_size));
      if (p.max_dims < 1 || p.max_dims > 3)
        error("V117", processor_path(p.name),
              "device max dimensions must be in 1..3, got " + std::to_string(p.max_dims));
    }
    for (const auto& mem : m_.memories) {
      const Processor* owner = m_.find_processor(mem.owner);
      if (!owner) {
        error("V103", memory_path(mem.name), "unresolved reference to processor '" + mem.owner + "'");
        continue;
      }
      const bool device_side = is_device_region(mem.region);
      if (device_side != (owner->kind == ProcessorKind::Device))
        error("V110", memory_path(mem.name),
              "region '" + std::string(to_string(mem.region)) + "' cannot be owned by " +
                  (owner->kind == ProcessorKind::Host ? "host" : "device") + " '" +
                  owner->name + "'");
    }
  }

  void check_arrays() {
    for (const auto& a : m_.arrays) {
      if (!a.shape.valid())
        error("V101", array_path(a.name),
              "invalid shape " + to_string(a.shape) + " (1 to 4 extents, each >= 1)");
      bool used = std::any_of(m_.tasks.begin(), m_.tasks.end(), [&](const RepetitiveTask& t) {
        return m_.is_read_by(t, a.name) || m_.is_written_by(t, a.name);
      });
      if (!used) warning("W202", array_path(a.name), "array '" + a.name + "' is never used");
      if (const RepetitiveTask* producer = m_.producer_of(a.name)) {
        for (const auto& t : m_.tasks)
          if (&t != producer && m_.is_written_by(t, a.name))
            error("V108", task_path(t.name),
                  "array '" + a.name + "' is already written by task '" + producer->name + "'");
      }
    }
  }

  void check_port(const RepetitiveTask& task, const Port& port, bool output,
                  std::vector<sim::PortSignature>& sigs, bool& complete) {
    const std::string path = port_path(task.name, port.name);
    const bool direction_ok = output ? port.direction == Direction::Out
                                     : port.direction != Direction::Out;
    if (!direction_ok)
      error("V118", path, "port '" + port.name + "' is listed with the wrong direction");
    if (!port.tiler.pattern.valid()) {
      error("V101", path, "invalid pattern shape " + to_string(port.tiler.pattern));
      complete = false;
      return;
    }
    const ArrayValue* array = m_.find_array(port.tiler.array);
    if (!array) {
      error("V103", path, "unresolved reference to array '" + port.tiler.array + "'");
      complete = false;
      return;
    }
    if (!array->shape.valid() || !task.repetition.valid()) {
      complete = false;
      return;
    }
    if (auto msg = tiler::check_dimensions(port.tiler, array->shape, task.repetition);
        !msg.empty()) {
      error("V104", path, "tiler of port '" + port.name + "': " + msg);
      complete = false;
      return;
    }
    sigs.push_back({array->element, port.tiler.pattern});
    if (output || port.direction == Direction::InOut) {
      auto cov = tiler::check_coverage(port.tiler, array->shape, task.repetition);
      if (cov.kind != tiler::Coverage::Kind::Exact)
        warning("W201", path,
                "output tiler of port '" + port.name + "' " + tiler::to_string(cov.kind) +
                    " on array '" + array->name + "'; result depends on write order");
    }
  }

  void check_tasks() {
    for (const auto& t : m_.tasks) {
      const std::string path = task_path(t.name);
      if (!t.repetition.valid())
        error("V101", path, "invalid repetition space " + to_string(t.repetition));
      const bool writes = !t.outputs.empty() ||
                          std::any_of(t.inputs.begin(), t.inputs.end(), [](const Port& p) {
                            return p.direction == Direction::InOut;
                          });
      if (t.inputs.empty() || !writes)
        error("V106", path, "task '" + t.name + "' needs at least one input and one output");

      std::set<std::string> ports;
      for (const auto* list : {&t.inputs, &t.outputs})
        for (const auto& p : *list)
          if (!ports.insert(p.name).second)
            error("V116", port_path(t.name, p.name), "duplicate port '" + p.name + "'");

      std::vector<sim::PortSignature> ins, outs;
      bool complete = true;
      for (const auto& p : t.inputs) check_port(t, p, false, ins, complete);
      for (const auto& p : t.outputs) check_port(t, p, true, outs, complete);
      // InOut ports also feed the body's outputs, after the Out ports.
      for (std::size_t i = 0; i < t.inputs.size() && complete; ++i)
        if (t.inputs[i].direction == Direction::InOut) outs.push_back(ins[i]);

      const sim::Builtin* body = sim::find_builtin(t.body);
      if (!body) {
        error("V103", path, "unresolved reference to body '" + t.body + "'");
        continue;
      }
      if (!complete) continue;
      if (auto msg = body->check(ins, outs); !msg.empty())
        error("V105", path, "body '" + t.body + "' " + msg);
    }
  }

  void check_allocation() {
    for (const auto& [element, target] : m_.allocation.task_map) {
      if (!m_.find_task(element))
        error("V103", allocation_path(element), "unresolved reference to task '" + element + "'");
      if (!m_.find_processor(target))
        error("V103", allocation_path(element),
              "unresolved reference to processor '" + target + "'");
    }
    for (const auto& [element, target] : m_.allocation.array_map) {
      if (!m_.find_array(element))
        error("V103", allocation_path(element), "unresolved reference to array '" + element + "'");
      if (!m_.find_memory(target))
        error("V103", allocation_path(element), "unresolved reference to memory '" + target + "'");
    }
    for (const auto& t : m_.tasks)
      if (!m_.allocation.task_map.count(t.name))
        error("V111", task_path(t.name), "task '" + t.name + "' is not allocated to a processor");
    for (const auto& a : m_.arrays) {
      if (!m_.allocation.array_map.count(a.name)) {
        error("V111", array_path(a.name), "array '" + a.name + "' is not allocated to a memory");
        continue;
      }
      const MemorySpace* mem = m_.memory_of(a.name);
      if (!mem) continue;
      if (mem->region == Region::DeviceLocal || mem->region == Region::DevicePrivate)
        error("V112", allocation_path(a.name),
              "array '" + a.name + "' allocated to unsupported region '" +
                  std::string(to_string(mem->region)) + "' of memory '" + mem->name + "'");
    }

    for (const auto& t : m_.tasks) {
      const Processor* proc = m_.processor_of(t);
      if (!proc || proc->kind != ProcessorKind::Device) continue;
      auto visit = [&](const Port& port, bool writes) {
        const MemorySpace* mem = m_.memory_of(port.tiler.array);
        if (!mem || !is_device_region(mem->region)) return;
        if (mem->owner != proc->name)
          error("V111", port_path(t.name, port.name),
                "array '" + port.tiler.array + "' lives in memory '" + mem->name +
                    "' of another device '" + mem->owner + "'");
        if (writes && mem->region == Region::DeviceConstant)
          error("V113", port_path(t.name, port.name),
                "task '" + t.name + "' writes constant-region array '" + port.tiler.array + "'");
      };
      for (const auto& p : t.inputs) visit(p, p.direction == Direction::InOut);
      for (const auto& p : t.outputs) visit(p, true);
    }
  }

  void check_connectors() {
    for (std::size_t i = 0; i < m_.connectors.size(); ++i) {
      const Connector& c = m_.connectors[i];
      const std::string path = connector_path(i);
      const RepetitiveTask* from_task = m_.find_task(c.from);
      const RepetitiveTask* to_task = m_.find_task(c.to);
      const bool from_array = m_.find_array(c.from) != nullptr;
      const bool to_array = m_.find_array(c.to) != nullptr;
      bool resolved = true;
      for (const auto* end : {&c.from, &c.to}) {
        if (!m_.find_task(*end) && !m_.find_array(*end)) {
          error("V103", path, "unresolved reference to '" + *end + "'");
          resolved = false;
        }
      }
      if (!resolved) continue;
      if (from_array && to_array)
        error("V114", path, "connector '" + c.from + " -> " + c.to + "' joins two arrays");
      else if (from_array && to_task && !m_.is_read_by(*to_task, c.from))
        error("V114", path, "task '" + c.to + "' has no input tiled from '" + c.from + "'");
      else if (from_task && to_array && !m_.is_written_by(*from_task, c.to))
        error("V114", path, "task '" + c.from + "' has no output tiled onto '" + c.to + "'");
    }
  }

  void check_cycles() {
    auto cycle = find_cycle(m_);
    if (cycle.empty()) return;
    std::string chain;
    for (const auto& name : cycle) chain += name + " -> ";
    chain += cycle.front();
    error("V107", task_path(cycle.front()), "cycle: " + chain);
  }

  const Model& m_;
  Diagnostics diags_;
};

// Adjacency over task indices, deduplicated, in declaration order.
std::vector<std::vector<std::size_t>> task_edges(const Model& model) {
  const std::size_t n = model.tasks.size();
  std::vector<std::set<std::size_t>> succ(n);
  auto index_of = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i)
      if (model.tasks[i].name == name) return i;
    return std::nullopt;
  };
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t r = 0; r < n; ++r) {
      if (w == r) continue;
      for (const auto& a : model.arrays)
        if (model.is_written_by(model.tasks[w], a.name) && model.is_read_by(model.tasks[r], a.name))
          succ[w].insert(r);
    }
  for (const auto& c : model.connectors) {
    auto from = index_of(c.from);
    auto to = index_of(c.to);
    if (from && to) succ[*from].insert(*to);
  }
  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t i = 0; i < n; ++i) edges[i].assign(succ[i].begin(), succ[i].end());
  return edges;
}

}  // namespace

Diagnostics validate(const Model& model) { return Validator(model).run(); }

std::vector<std::string> find_cycle(const Model& model) {
  const auto edges = task_edges(model);
  const std::size_t n = edges.size();
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::size_t> stack;
  std::vector<std::string> cycle;

  std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
    mark[u] = Mark::Grey;
    stack.push_back(u);
    for (auto v : edges[u]) {
      if (mark[v] == Mark::Grey) {
        auto it = std::find(stack.begin(), stack.end(), v);
        for (; it != stack.end(); ++it) cycle.push_back(model.tasks[*it].name);
        return true;
      }
      if (mark[v] == Mark::White && dfs(v)) return true;
    }
    stack.pop_back();
    mark[u] = Mark::Black;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (mark[i] == Mark::White && dfs(i)) break;
  return cycle;
}

std::vector<const RepetitiveTask*> toposort(const Model& model) {
  const auto edges = task_edges(model);
  const std::size_t n = edges.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& out : edges)
    for (auto v : out) ++indegree[v];
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.insert(i);

  std::vector<const RepetitiveTask*> order;
  while (!ready.empty()) {
    std::size_t u = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(&model.tasks[u]);
    for (auto v : edges[u])
      if (--indegree[v] == 0) ready.insert(v);
  }
  if (order.size() != n) throw Error("task graph has a cycle");
  return order;
}

}  // namespace gmc::ir
