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
#include <map>
#include <set>

#include "gmc/ir/validate.hpp"
#include "gmc/passes/passes.hpp"

namespace gmc::passes {
namespace {

// Distinct arrays a task reads (or writes), in port order.
std::vector<std::string> arrays_of(const ir::RepetitiveTask& task, bool writes) {
  std::vector<std::string> names;
  auto add = [&](const ir::Port& p) {
    if (std::find(names.begin(), names.end(), p.tiler.array) == names.end())
      names.push_back(p.tiler.array);
  };
  for (const auto& p : task.inputs)
    if (!writes || p.direction == ir::Direction::InOut) add(p);
  if (writes)
    for (const auto& p : task.outputs) add(p);
  return names;
}

const ir::RepetitiveTask& task_of(const ir::Model& model, const Step& step) {
  const ir::RepetitiveTask* task = model.find_task(step.task);
  if (!task) throw Error("schedule launches unknown task '" + step.task + "'");
  return *task;
}

}  // namespace

std::string to_string(const Step& step) {
  switch (step.kind) {
    case StepKind::HostToDevice: return "h2d " + step.array;
    case StepKind::DeviceToHost: return "d2h " + step.array;
    case StepKind::Launch: return (step.on_device() ? "launch " : "host ") + step.task;
  }
  return "?";
}

TransferSchedule schedule_naive(const ir::Model& model, const TopologyConfig& config) {
  TransferSchedule schedule;
  for (const ir::RepetitiveTask* task : ir::toposort(model)) {
    const ir::Processor* proc = model.processor_of(*task);
    if (!proc) throw Error("task '" + task->name + "' is not allocated");
    if (proc->kind == ir::ProcessorKind::Host) {
      schedule.steps.push_back({StepKind::Launch, {}, task->name, std::nullopt});
      continue;
    }
    for (const auto& a : arrays_of(*task, false)) schedule.steps.push_back(Step::h2d(a));
    schedule.steps.push_back(
        {StepKind::Launch, {}, task->name, compute_topology(task->repetition, *proc, config)});
    for (const auto& a : arrays_of(*task, true)) schedule.steps.push_back(Step::d2h(a));
  }
  return schedule;
}

TransferSchedule optimize_transfers(const TransferSchedule& schedule, const ir::Model& model) {
  struct Residency {
    bool host = true;  // every host copy is current at frame start
    bool device = false;
  };
  std::map<std::string, Residency> state;
  const auto outputs = model.output_arrays();
  const std::set<std::string> output_set(outputs.begin(), outputs.end());

  // Does the host observe the current value of `array` after step `i`?
  auto host_needs = [&](const std::string& array, std::size_t i) {
    for (std::size_t j = i + 1; j < schedule.steps.size(); ++j) {
      const Step& s = schedule.steps[j];
      if (s.kind != StepKind::Launch) continue;
      const auto& task = task_of(model, s);
      if (!s.on_device() && model.is_read_by(task, array)) return true;
      if (model.is_written_by(task, array)) return false;
    }
    return output_set.count(array) > 0;
  };

  TransferSchedule out;
  out.per_frame = schedule.per_frame;
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    const Step& s = schedule.steps[i];
    switch (s.kind) {
      case StepKind::HostToDevice: {
        auto& r = state[s.array];
        if (r.device) continue;
        r.device = true;
        break;
      }
      case StepKind::DeviceToHost: {
        auto& r = state[s.array];
        if (r.host || !host_needs(s.array, i)) continue;
        r.host = true;
        break;
      }
      case StepKind::Launch: {
        const auto& task = task_of(model, s);
        for (const auto& a : arrays_of(task, true)) {
          auto& r = state[a];
          r.host = !s.on_device();
          r.device = s.on_device();
        }
        break;
      }
    }
    out.steps.push_back(s);
  }
  return out;
}

std::vector<std::string> verify_residency(const TransferSchedule& schedule,
                                          const ir::Model& model, int frames) {
  // Version numbers of the value each side holds; -1 means never written.
  struct Copies {
    long latest = 0;
    long host = 0;
    long device = -1;
  };
  std::map<std::string, Copies> copies;
  for (const auto& a : model.arrays) copies[a.name] = {};
  const auto inputs = model.input_arrays();
  const auto outputs = model.output_arrays();

  std::vector<std::string> problems;
  auto where = [](int frame, std::size_t i) {
    return "frame " + std::to_string(frame) + " step " + std::to_string(i) + ": ";
  };

  for (int frame = 0; frame < frames; ++frame) {
    for (const auto& a : inputs) {
      auto& c = copies[a];
      c.host = ++c.latest;
    }
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
      const Step& s = schedule.steps[i];
      if (s.kind == StepKind::HostToDevice || s.kind == StepKind::DeviceToHost) {
        auto it = copies.find(s.array);
        if (it == copies.end()) {
          problems.push_back(where(frame, i) + "transfer of unknown array '" + s.array + "'");
          continue;
        }
        auto& c = it->second;
        const bool to_device = s.kind == StepKind::HostToDevice;
        long& src = to_device ? c.host : c.device;
        long& dst = to_device ? c.device : c.host;
        if (src != c.latest)
          problems.push_back(where(frame, i) + to_string(s) + " copies a stale value");
        dst = src;
        continue;
      }
      const ir::RepetitiveTask* task = model.find_task(s.task);
      if (!task) {
        problems.push_back(where(frame, i) + "launch of unknown task '" + s.task + "'");
        continue;
      }
      for (const auto& p : task->inputs) {
        auto& c = copies[p.tiler.array];
        const long have = s.on_device() ? c.device : c.host;
        if (have != c.latest)
          problems.push_back(where(frame, i) + "task '" + task->name + "' reads stale '" +
                             p.tiler.array + "' on the " + (s.on_device() ? "device" : "host"));
      }
      for (const auto& a : arrays_of(*task, true)) {
        auto& c = copies[a];
        (s.on_device() ? c.device : c.host) = ++c.latest;
      }
    }
    for (const auto& a : outputs)
      if (copies[a].host != copies[a].latest)
        problems.push_back("frame " + std::to_string(frame) + " end: output '" + a +
                           "' is not current on the host");
  }
  return problems;
}

TransferStats transfer_stats(const TransferSchedule& schedule, const BufferPlan& plan) {
  TransferStats stats;
  for (const auto& s : schedule.steps) {
    if (s.kind == StepKind::Launch) continue;
    const BufferEntry* entry = plan.find(s.array);
    if (!entry) throw Error("schedule transfers unplanned array '" + s.array + "'");
    if (s.kind == StepKind::HostToDevice) {
      ++stats.h2d_count;
      stats.h2d_bytes += entry->byte_size;
    } else {
      ++stats.d2h_count;
      stats.d2h_bytes += entry->byte_size;
    }
  }
  return stats;
}

}  // namespace gmc::passes
