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

#include "codegen.hpp"
#include "gmc/backend/backend.hpp"

namespace gmc::backend {

using detail::c_type;

namespace {

constexpr std::string_view kPrologue = R"(#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#ifdef __APPLE__
#include <OpenCL/opencl.h>
#else
#include <CL/cl.h>
#endif

#define uchar unsigned char
#define uint unsigned int

#define CHECK(call)                                                     \
  do {                                                                  \
    cl_int status_ = (call);                                            \
    if (status_ != CL_SUCCESS) {                                        \
      fprintf(stderr, "%s:%d: %s failed (%d)\n", __FILE__, __LINE__,    \
              #call, (int)status_);                                     \
      exit(1);                                                          \
    }                                                                   \
  } while (0)

static char* read_source(const char* path, size_t* size)
{
  FILE* f = fopen(path, "rb");
  char* text;
  long n;
  if (!f) {
    fprintf(stderr, "cannot open %s\n", path);
    exit(2);
  }
  fseek(f, 0, SEEK_END);
  n = ftell(f);
  fseek(f, 0, SEEK_SET);
  text = (char*)malloc((size_t)n + 1);
  if (!text || fread(text, 1, (size_t)n, f) != (size_t)n) {
    fprintf(stderr, "cannot read %s\n", path);
    exit(2);
  }
  text[n] = '\0';
  fclose(f);
  *size = (size_t)n;
  return text;
}

static void* alloc_zeroed(size_t bytes)
{
  void* p = calloc(bytes ? bytes : 1, 1);
  if (!p) {
    fprintf(stderr, "out of memory\n");
    exit(1);
  }
  return p;
}

static cl_mem create_buffer(cl_context context, cl_command_queue queue, cl_mem_flags flags,
                            size_t bytes)
{
  cl_int err;
  void* zeros = alloc_zeroed(bytes);
  cl_mem buffer = clCreateBuffer(context, flags, bytes, NULL, &err);
  CHECK(err);
  CHECK(clEnqueueWriteBuffer(queue, buffer, CL_TRUE, 0, bytes, zeros, 0, NULL, NULL));
  free(zeros);
  return buffer;
}

static void gmc_h2d(cl_command_queue queue, cl_mem dst, const void* src, size_t bytes,
                    unsigned long long* counter)
{
  CHECK(clEnqueueWriteBuffer(queue, dst, CL_TRUE, 0, bytes, src, 0, NULL, NULL));
  *counter += bytes;
}

static void gmc_d2h(cl_command_queue queue, void* dst, cl_mem src, size_t bytes,
                    unsigned long long* counter)
{
  CHECK(clEnqueueReadBuffer(queue, src, CL_TRUE, 0, bytes, dst, 0, NULL, NULL));
  *counter += bytes;
}

/* 1 on a full read, 0 at end of file, exits on a truncated frame. */
static int read_plane(FILE* in, void* dst, size_t bytes, int first)
{
  size_t got = fread(dst, 1, bytes, in);
  if (got == bytes)
    return 1;
  if (got == 0 && first && feof(in))
    return 0;
  fprintf(stderr, "input ends inside a frame\n");
  exit(2);
}
)";

std::string bytes_of(const ir::ArrayValue& a) {
  return std::to_string(static_cast<std::int64_t>(ir::byte_width(a.element)) * a.shape.count());
}

std::string csv(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::string emit_host(const ir::Model& model, const passes::TransferSchedule& schedule,
                      const passes::BufferPlan& plan, const passes::Topologies& topologies,
                      std::string_view model_name) {
  const bool any_device = std::any_of(model.tasks.begin(), model.tasks.end(),
                                      [&](const auto& t) { return model.on_device(t); });
  if (!any_device) throw Error("nothing to generate: model has no device task");

  const detail::Names names = detail::make_names(model);
  auto h = [&](const std::string& array) { return "h_" + names.arrays.at(array); };
  auto d = [&](const std::string& array) { return "d_" + names.arrays.at(array); };
  auto k = [&](const std::string& task) { return "k_" + names.tasks.at(task); };

  for (const auto& s : schedule.steps)
    if (s.kind != passes::StepKind::Launch && !plan.find(s.array))
      throw Error("schedule transfers unplanned array '" + s.array + "'");

  std::string out;
  out += "/* Host driver for model '" + std::string(model_name) + "', generated by gmc.\n";
  out += " * usage: driver KERNELS.cl INPUT.raw OUTPUT.raw [FRAMES]\n";
  out += " * Do not edit. */\n\n";
  out += kPrologue;
  const bool any_host = std::any_of(model.tasks.begin(), model.tasks.end(),
                                    [&](const auto& t) { return !model.on_device(t); });
  if (any_host) out += "\n" + detail::support_functions(true);

  // Host-allocated tasks run inline on the host arrays.
  for (const auto& task : model.tasks) {
    if (model.on_device(task)) continue;
    std::string params;
    for (const auto& array_name : detail::task_arrays(task)) {
      const ir::ArrayValue& a = *model.find_array(array_name);
      if (!params.empty()) params += ", ";
      if (!model.is_written_by(task, array_name)) params += "const ";
      params += std::string(c_type(a.element)) + "* " + names.arrays.at(array_name);
    }
    out += "\n/* " + task.name + ": body " + task.body + ", multiplicity " +
           ir::to_string(task.repetition) + ", runs on the host */\n";
    out += "static void host_" + names.tasks.at(task.name) + "(" + params + ")\n{\n";
    out += "  int lin;\n";
    out += "  for (lin = 0; lin < " + std::to_string(task.repetition.count()) + "; ++lin) {\n";
    out += detail::emit_repetition(model, task, names, "    ");
    out += "  }\n}\n";
  }

  const auto inputs = model.input_arrays();
  const auto outputs = model.output_arrays();

  out += R"(
int main(int argc, char** argv)
{
  cl_platform_id platform;
  cl_device_id device;
  cl_context context;
  cl_command_queue queue;
  cl_program program;
  cl_int err;
  char* source;
  size_t source_size;
  FILE* in;
  FILE* out;
  long max_frames = -1;
  long frame;
  unsigned long long h2d_bytes = 0;
  unsigned long long d2h_bytes = 0;
)";
  for (const auto& a : model.arrays)
    out += "  " + std::string(c_type(a.element)) + "* " + h(a.name) + ";\n";
  for (const auto& e : plan.entries) out += "  cl_mem " + d(e.array) + ";\n";
  for (const auto& t : model.tasks)
    if (model.on_device(t)) out += "  cl_kernel " + k(t.name) + ";\n";

  out += R"(
  if (argc < 4) {
    fprintf(stderr, "usage: %s KERNELS.cl INPUT.raw OUTPUT.raw [FRAMES]\n", argv[0]);
    return 2;
  }
  if (argc > 4)
    max_frames = atol(argv[4]);

  CHECK(clGetPlatformIDs(1, &platform, NULL));
  if (clGetDeviceIDs(platform, CL_DEVICE_TYPE_GPU, 1, &device, NULL) != CL_SUCCESS)
    CHECK(clGetDeviceIDs(platform, CL_DEVICE_TYPE_ALL, 1, &device, NULL));
  context = clCreateContext(NULL, 1, &device, NULL, NULL, &err);
  CHECK(err);
  queue = clCreateCommandQueue(context, device, 0, &err);
  CHECK(err);

  source = read_source(argv[1], &source_size);
  program = clCreateProgramWithSource(context, 1, (const char**)&source, &source_size, &err);
  CHECK(err);
  if (clBuildProgram(program, 1, &device, "", NULL, NULL) != CL_SUCCESS) {
    size_t log_size = 0;
    char* build_log;
    clGetProgramBuildInfo(program, device, CL_PROGRAM_BUILD_LOG, 0, NULL, &log_size);
    build_log = (char*)alloc_zeroed(log_size + 1);
    clGetProgramBuildInfo(program, device, CL_PROGRAM_BUILD_LOG, log_size, build_log, NULL);
    fprintf(stderr, "kernel build failed:\n%s\n", build_log);
    return 1;
  }

)";
  for (const auto& t : model.tasks) {
    if (!model.on_device(t)) continue;
    out += "  " + k(t.name) + " = clCreateKernel(program, \"" + names.tasks.at(t.name) +
           "\", &err);\n  CHECK(err);\n";
  }
  out += "\n";
  for (const auto& a : model.arrays)
    out += "  " + h(a.name) + " = (" + std::string(c_type(a.element)) + "*)alloc_zeroed(" +
           bytes_of(a) + ");\n";
  out += "\n";
  for (const auto& e : plan.entries) {
    const std::string flags = e.read_only ? "CL_MEM_READ_ONLY" : "CL_MEM_READ_WRITE";
    out += "  " + d(e.array) + " = create_buffer(context, queue, " + flags + ", " +
           std::to_string(e.byte_size) + ");\n";
  }
  out += "\n";
  for (const auto& t : model.tasks) {
    if (!model.on_device(t)) continue;
    const auto arrays = detail::task_arrays(t);
    for (std::size_t i = 0; i < arrays.size(); ++i)
      out += "  CHECK(clSetKernelArg(" + k(t.name) + ", " + std::to_string(i) +
             ", sizeof(cl_mem), &" + d(arrays[i]) + "));\n";
  }

  out += R"(
  in = fopen(argv[2], "rb");
  out = fopen(argv[3], "wb");
  if (!in || !out) {
    fprintf(stderr, "cannot open frame files\n");
    return 2;
  }

  for (frame = 0; max_frames < 0 || frame < max_frames; ++frame) {
)";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const ir::ArrayValue& a = *model.find_array(inputs[i]);
    out += "    if (!read_plane(in, " + h(a.name) + ", " + bytes_of(a) + ", " +
           (i == 0 ? "1" : "0") + "))\n      break;\n";
  }
  out += "\n";

  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    const passes::Step& s = schedule.steps[i];
    out += "    /* step " + std::to_string(i) + ": " + passes::to_string(s) + " */\n";
    switch (s.kind) {
      case passes::StepKind::HostToDevice:
        out += "    gmc_h2d(queue, " + d(s.array) + ", " + h(s.array) + ", " +
               std::to_string(plan.find(s.array)->byte_size) + ", &h2d_bytes);\n";
        break;
      case passes::StepKind::DeviceToHost:
        out += "    gmc_d2h(queue, " + h(s.array) + ", " + d(s.array) + ", " +
               std::to_string(plan.find(s.array)->byte_size) + ", &d2h_bytes);\n";
        break;
      case passes::StepKind::Launch: {
        const ir::RepetitiveTask& task = *model.find_task(s.task);
        if (!s.on_device()) {
          std::string args;
          for (const auto& a : detail::task_arrays(task)) args += (args.empty() ? "" : ", ") + h(a);
          out += "    host_" + names.tasks.at(task.name) + "(" + args + ");\n";
          break;
        }
        auto topo = topologies.find(s.task);
        const passes::LaunchTopology& t = topo != topologies.end() ? topo->second : *s.topology;
        const std::string dims = std::to_string(t.global.size());
        out += "    {\n";
        out += "      const size_t global_size[" + dims + "] = {" + csv(t.global) + "};\n";
        out += "      const size_t local_size[" + dims + "] = {" + csv(t.local) + "};\n";
        out += "      CHECK(clEnqueueNDRangeKernel(queue, " + k(s.task) + ", " + dims +
               ", NULL, global_size, local_size, 0, NULL, NULL));\n";
        out += "    }\n";
        break;
      }
    }
  }
  out += "    CHECK(clFinish(queue));\n\n";
  for (const auto& name : outputs) {
    const ir::ArrayValue& a = *model.find_array(name);
    out += "    if (fwrite(" + h(name) + ", 1, " + bytes_of(a) + ", out) != " + bytes_of(a) +
           ") {\n      fprintf(stderr, \"cannot write output\\n\");\n      return 2;\n    }\n";
  }
  out += "  }\n\n";

  out += "  printf(\"h2d_bytes=%llu d2h_bytes=%llu\\n\", h2d_bytes, d2h_bytes);\n\n";
  out += "  fclose(in);\n  fclose(out);\n";
  for (const auto& t : model.tasks)
    if (model.on_device(t)) out += "  clReleaseKernel(" + k(t.name) + ");\n";
  for (const auto& e : plan.entries) out += "  clReleaseMemObject(" + d(e.array) + ");\n";
  for (const auto& a : model.arrays) out += "  free(" + h(a.name) + ");\n";
  out += "  free(source);\n";
  out += "  clReleaseProgram(program);\n  clReleaseCommandQueue(queue);\n  clReleaseContext(context);\n";
  out += "  return 0;\n}\n";
  return out;
}

}  // namespace gmc::backend
