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

#include <json.hpp>

#include "codegen.hpp"
#include "gmc/backend/backend.hpp"

namespace gmc::backend {

namespace {

using json = nlohmann::ordered_json;

json stats_json(const passes::TransferStats& s) {
  json j;
  j["h2d_count"] = s.h2d_count;
  j["d2h_count"] = s.d2h_count;
  j["h2d_bytes"] = s.h2d_bytes;
  j["d2h_bytes"] = s.d2h_bytes;
  return j;
}

std::string_view kind_name(passes::StepKind kind) {
  switch (kind) {
    case passes::StepKind::HostToDevice: return "h2d";
    case passes::StepKind::DeviceToHost: return "d2h";
    case passes::StepKind::Launch: return "launch";
  }
  return "?";
}

json step_json(const passes::Step& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  if (s.kind == passes::StepKind::Launch) {
    j["task"] = s.task;
    j["device"] = s.on_device();
  } else {
    j["array"] = s.array;
  }
  return j;
}

json arrays_json(const ir::Model& model, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& name : names) {
    const ir::ArrayValue& a = *model.find_array(name);
    json j;
    j["name"] = a.name;
    j["type"] = ir::to_string(a.element);
    j["shape"] = a.shape.extents;
    j["byte_size"] = static_cast<std::int64_t>(ir::byte_width(a.element)) * a.shape.count();
    out.push_back(std::move(j));
  }
  return out;
}

// Steps of `naive` that the optimizer dropped, matched in order.
json elided(const passes::TransferSchedule& naive, const passes::TransferSchedule& optimized) {
  json out = json::array();
  std::size_t k = 0;
  for (std::size_t i = 0; i < naive.steps.size(); ++i) {
    if (k < optimized.steps.size() && optimized.steps[k] == naive.steps[i]) {
      ++k;
      continue;
    }
    json j = step_json(naive.steps[i]);
    j["naive_index"] = i;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

std::string emit_report(const ir::Model& model, const passes::PipelineResult& pipeline,
                        ScheduleMode mode, std::string_view model_name) {
  const passes::TransferSchedule& chosen =
      mode == ScheduleMode::Naive ? pipeline.naive : pipeline.optimized;
  const detail::Names names = detail::make_names(model);

  json doc;
  doc["model"] = model_name;
  doc["schedule_mode"] = to_string(mode);
  doc["inputs"] = arrays_json(model, model.input_arrays());
  doc["outputs"] = arrays_json(model, model.output_arrays());

  json tasks = json::array();
  for (const auto& task : model.tasks) {
    json t;
    t["name"] = task.name;
    t["kernel"] = model.on_device(task) ? json(names.tasks.at(task.name)) : json(nullptr);
    const ir::Processor* proc = model.processor_of(task);
    t["processor"] = proc ? json(proc->name) : json(nullptr);
    t["body"] = task.body;
    t["multiplicity"] = task.repetition.extents;
    auto topo = pipeline.topologies.find(task.name);
    if (topo != pipeline.topologies.end()) {
      t["global"] = topo->second.global;
      t["local"] = topo->second.local;
      t["guarded"] = topo->second.guarded;
    }
    tasks.push_back(std::move(t));
  }
  doc["tasks"] = std::move(tasks);

  json buffers = json::array();
  for (const auto& e : pipeline.plan.entries) {
    json b;
    b["array"] = e.array;
    b["memory"] = e.memory;
    b["region"] = ir::to_string(e.region);
    b["read_only"] = e.read_only;
    b["byte_size"] = e.byte_size;
    b["staged"] = e.staged;
    buffers.push_back(std::move(b));
  }
  doc["buffers"] = std::move(buffers);

  json steps = json::array();
  for (const auto& s : chosen.steps) steps.push_back(step_json(s));
  doc["schedule"] = {{"per_frame", chosen.per_frame}, {"steps", std::move(steps)}};
  doc["elided"] = elided(pipeline.naive, chosen);  // relative to what was emitted
  doc["stats"] = {
      {"naive", stats_json(passes::transfer_stats(pipeline.naive, pipeline.plan))},
      {"optimized", stats_json(passes::transfer_stats(pipeline.optimized, pipeline.plan))}};
  return doc.dump(2) + "\n";
}

GeneratedArtifact generate(const ir::Model& model, const passes::PipelineResult& pipeline,
                           ScheduleMode mode, std::string_view model_name) {
  const passes::TransferSchedule& chosen =
      mode == ScheduleMode::Naive ? pipeline.naive : pipeline.optimized;
  GeneratedArtifact a;
  a.kernel_source = emit_kernels(model, pipeline.topologies, pipeline.plan, model_name);
  a.host_source = emit_host(model, chosen, pipeline.plan, pipeline.topologies, model_name);
  a.report = emit_report(model, pipeline, mode, model_name);
  return a;
}

}  // namespace gmc::backend
