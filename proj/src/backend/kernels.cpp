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
#include "gmc/backend/backend.hpp"

namespace gmc::backend {

using detail::c_type;

std::string emit_kernels(const ir::Model& model, const passes::Topologies& topologies,
                         const passes::BufferPlan& plan, std::string_view model_name) {
  const detail::Names names = detail::make_names(model);
  std::string out;
  out += "// Kernels for model '" + std::string(model_name) + "', generated by gmc.\n";
  out += "// OpenCL C 1.0. Do not edit.\n\n";
  out += detail::support_functions(false);

  for (const auto& task : model.tasks) {
    if (!model.on_device(task)) continue;
    auto topo = topologies.find(task.name);
    if (topo == topologies.end()) throw Error("no launch topology for task '" + task.name + "'");
    const passes::LaunchTopology& t = topo->second;

    std::string params;
    for (const auto& array_name : detail::task_arrays(task)) {
      const ir::ArrayValue* array = model.find_array(array_name);
      const passes::BufferEntry* buffer = plan.find(array_name);
      if (!array || !buffer) throw Error("array '" + array_name + "' has no planned buffer");
      if (!params.empty()) params += ",\n    ";
      const bool constant = buffer->region == ir::Region::DeviceConstant;
      const bool read_only = !model.is_written_by(task, array_name);
      params += constant ? "__constant " : (read_only ? "__global const " : "__global ");
      params += std::string(c_type(array->element)) + "* " + names.arrays.at(array_name);
    }

    out += "\n// " + task.name + ": body " + task.body + ", multiplicity " +
           ir::to_string(task.repetition) + ", global " + ir::to_string(ir::Shape{t.global}) +
           ", local " + ir::to_string(ir::Shape{t.local}) + "\n";
    out += "__kernel void " + names.tasks.at(task.name) + "(\n    " + params + ")\n{\n";

    // Row-major linear id over the padded NDRange.
    std::string lin = "(int)get_global_id(0)";
    for (std::size_t d = 1; d < t.global.size(); ++d)
      lin = (d == 1 ? lin : "(" + lin + ")") + " * " + std::to_string(t.global[d]) +
            " + (int)get_global_id(" + std::to_string(d) + ")";
    out += "  const int lin = " + lin + ";\n";
    if (t.guarded)
      out += "  if (lin >= " + std::to_string(task.repetition.count()) + ")\n    return;\n";
    out += detail::emit_repetition(model, task, names, "  ");
    out += "}\n";
  }
  return out;
}

}  // namespace gmc::backend
