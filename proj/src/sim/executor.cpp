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

#include "gmc/sim/executor.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gmc/ir/validate.hpp"
#include "gmc/sim/builtins.hpp"

namespace gmc::sim {
namespace {

struct BoundPort {
  ArrayData* array;
  tiler::TileAccessor access;
  std::vector<std::byte> pattern;
};

BoundPort bind(ArrayMap& arrays, const ir::Port& port) {
  auto it = arrays.find(port.tiler.array);
  if (it == arrays.end()) throw Error("array '" + port.tiler.array + "' is not bound");
  ArrayData& a = it->second;
  return {&a, tiler::TileAccessor(port.tiler, a.shape),
          std::vector<std::byte>(static_cast<std::size_t>(port.tiler.pattern.count()) * a.width())};
}

std::vector<std::int64_t> visit_order(std::int64_t total, const ExecOptions& options) {
  std::vector<std::int64_t> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  if (options.order == Order::Reverse) std::reverse(order.begin(), order.end());
  if (options.order == Order::Shuffled) {
    std::mt19937_64 rng(options.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

ArrayMap fresh_arrays(const ir::Model& model) {
  ArrayMap arrays;
  for (const auto& a : model.arrays) arrays[a.name] = ArrayData::zeros(a.element, a.shape);
  return arrays;
}

void load_inputs(const ir::Model& model, const ArrayMap& inputs, ArrayMap& arrays) {
  for (const auto& name : model.input_arrays()) {
    auto it = inputs.find(name);
    if (it == inputs.end()) throw Error("missing input array '" + name + "'");
    ArrayData& dst = arrays.at(name);
    if (it->second.shape != dst.shape || it->second.type != dst.type)
      throw Error("input '" + name + "' has shape " + ir::to_string(it->second.shape) + " " +
                  std::string(ir::to_string(it->second.type)) + ", model declares " +
                  ir::to_string(dst.shape) + " " + std::string(ir::to_string(dst.type)));
    dst.bytes = it->second.bytes;
  }
}

ArrayMap collect_outputs(const ir::Model& model, const ArrayMap& arrays) {
  ArrayMap out;
  for (const auto& name : model.output_arrays()) out[name] = arrays.at(name);
  return out;
}

}  // namespace

void run_task(const ir::RepetitiveTask& task, ArrayMap& arrays, const ExecOptions& options) {
  const Builtin* body = find_builtin(task.body);
  if (!body) throw Error("task '" + task.name + "' has unknown body '" + task.body + "'");

  std::vector<BoundPort> ins, outs;
  for (const auto& p : task.inputs) ins.push_back(bind(arrays, p));
  for (const auto& p : task.outputs) outs.push_back(bind(arrays, p));
  // InOut ports are body outputs too; they write back through their own tiler.
  std::vector<std::size_t> inout;
  for (std::size_t i = 0; i < task.inputs.size(); ++i)
    if (task.inputs[i].direction == ir::Direction::InOut) inout.push_back(i);
  for (auto i : inout) outs.push_back(bind(arrays, task.inputs[i]));

  std::vector<PatternIn> in_views;
  for (auto& b : ins) in_views.push_back({b.array->type, b.access.pattern_count(), b.pattern});
  std::vector<PatternOut> out_views;
  for (auto& b : outs) out_views.push_back({b.array->type, b.access.pattern_count(), b.pattern});

  const std::int64_t total = task.repetition.count();
  std::vector<std::int64_t> r(task.repetition.rank());
  auto step = [&](std::int64_t linear) {
    for (std::size_t d = r.size(); d-- > 0;) {
      r[d] = linear % task.repetition.extents[d];
      linear /= task.repetition.extents[d];
    }
    for (auto& b : ins) b.access.gather(b.array->bytes, b.array->width(), r, b.pattern);
    body->run(in_views, out_views);
    for (auto& b : outs) b.access.scatter(b.array->bytes, b.array->width(), r, b.pattern);
  };

  if (options.order == Order::RowMajor) {
    for (std::int64_t n = 0; n < total; ++n) step(n);
  } else {
    for (auto n : visit_order(total, options)) step(n);
  }
}

ArrayMap execute(const ir::Model& model, const ArrayMap& inputs, const ExecOptions& options) {
  ArrayMap arrays = fresh_arrays(model);
  load_inputs(model, inputs, arrays);
  for (const ir::RepetitiveTask* task : ir::toposort(model)) run_task(*task, arrays, options);
  return collect_outputs(model, arrays);
}

ScheduledExecutor::ScheduledExecutor(const ir::Model& model, passes::TransferSchedule schedule)
    : model_(model),
      schedule_(std::move(schedule)),
      host_(fresh_arrays(model)),
      device_(fresh_arrays(model)) {
  for (const auto& s : schedule_.steps) {
    if (s.kind != passes::StepKind::Launch) continue;
    if (!model_.find_task(s.task)) throw Error("schedule launches unknown task '" + s.task + "'");
    auto seen = std::find_if(task_times_.begin(), task_times_.end(),
                             [&](const auto& t) { return t.first == s.task; });
    if (seen == task_times_.end()) task_times_.emplace_back(s.task, std::chrono::nanoseconds{0});
  }
}

ArrayMap ScheduledExecutor::run_frame(const ArrayMap& inputs) {
  load_inputs(model_, inputs, host_);
  for (const auto& s : schedule_.steps) {
    switch (s.kind) {
      case passes::StepKind::HostToDevice:
      case passes::StepKind::DeviceToHost: {
        const bool to_device = s.kind == passes::StepKind::HostToDevice;
        auto src = (to_device ? host_ : device_).find(s.array);
        if (src == (to_device ? host_ : device_).end())
          throw Error("schedule transfers unknown array '" + s.array + "'");
        (to_device ? device_ : host_)[s.array].bytes = src->second.bytes;
        const auto bytes = static_cast<std::int64_t>(src->second.bytes.size());
        if (to_device) {
          ++totals_.h2d_count;
          totals_.h2d_bytes += bytes;
        } else {
          ++totals_.d2h_count;
          totals_.d2h_bytes += bytes;
        }
        break;
      }
      case passes::StepKind::Launch: {
        const ir::RepetitiveTask& task = *model_.find_task(s.task);
        auto start = std::chrono::steady_clock::now();
        run_task(task, s.on_device() ? device_ : host_);
        auto elapsed = std::chrono::steady_clock::now() - start;
        for (auto& [name, time] : task_times_)
          if (name == s.task) time += std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed);
        break;
      }
    }
  }
  ++frames_;
  return collect_outputs(model_, host_);
}

ExecutionTrace bench(const ir::Model& model, const passes::TransferSchedule& schedule,
                     std::int64_t frames, FrameSource& source) {
  ScheduledExecutor exec(model, schedule);
  const FrameLayout layout = FrameLayout::inputs_of(model);
  auto start = std::chrono::steady_clock::now();
  for (std::int64_t i = 0; i < frames; ++i) {
    auto frame = source.next();
    if (!frame) throw Error("frame source exhausted at frame " + std::to_string(i));
    exec.run_frame(layout.to_map(*frame));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ExecutionTrace trace;
  trace.frames = frames;
  for (const auto& [name, time] : exec.task_times())
    trace.task_seconds.emplace_back(name, frames ? std::chrono::duration<double>(time).count() : 0.0);
  trace.total = exec.totals();
  if (frames > 0) {
    trace.per_frame = {trace.total.h2d_count / frames, trace.total.d2h_count / frames,
                       trace.total.h2d_bytes / frames, trace.total.d2h_bytes / frames};
    trace.seconds = seconds;
    trace.frames_per_second = seconds > 0 ? static_cast<double>(frames) / seconds : 0.0;
  }
  return trace;
}

}  // namespace gmc::sim
