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

#include "gmc/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "gmc/frontend/parser.hpp"
#include "gmc/ir/validate.hpp"
#include "gmc/passes/pipeline.hpp"
#include "gmc/sim/executor.hpp"
#include "gmc/sim/frames.hpp"

namespace gmc::cli {

namespace fs = std::filesystem;

namespace {

/// Failure that maps straight to an exit code.
struct Exit {
  int code;
};

struct Loaded {
  ir::Model model;
  std::string name;  // file stem
};

std::string read_text(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "gmc: cannot open '" << path << "'\n";
    throw Exit{kIoError};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    err << "gmc: cannot write '" << path.string() << "'\n";
    throw Exit{kIoError};
  }
}

// Parses and, unless `parse_only`, validates. Diagnostics go to `err`.
Loaded load(const std::string& path, bool parse_only, std::ostream& err) {
  const std::string source = read_text(path, err);
  frontend::ParseResult parsed = frontend::parse(source, path);
  Diagnostics diags = parsed.diagnostics;
  if (parsed.model && !parse_only) {
    Diagnostics more = ir::validate(*parsed.model);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  if (!diags.empty()) err << frontend::format_diagnostics(diags, source);
  if (!parsed.model || has_errors(diags)) throw Exit{kModelError};
  return {std::move(*parsed.model), fs::path(path).stem().string()};
}

std::string stats_line(backend::ScheduleMode mode, const passes::TransferSchedule& schedule,
                       const passes::TransferStats& s) {
  const auto launches = std::count_if(schedule.steps.begin(), schedule.steps.end(), [](auto& st) {
    return st.kind == passes::StepKind::Launch;
  });
  std::ostringstream os;
  os << "schedule=" << backend::to_string(mode) << " h2d=" << s.h2d_count
     << " h2d_bytes=" << s.h2d_bytes << " d2h=" << s.d2h_count << " d2h_bytes=" << s.d2h_bytes
     << " launches=" << launches;
  return os.str();
}

const passes::TransferSchedule& chosen(const passes::PipelineResult& p,
                                       backend::ScheduleMode mode) {
  return mode == backend::ScheduleMode::Naive ? p.naive : p.optimized;
}

std::unique_ptr<sim::FrameSource> open_source(const InvocationConfig& c, const ir::Model& model,
                                              std::int64_t synthetic_frames, std::ostream& err) {
  sim::FrameLayout layout = sim::FrameLayout::inputs_of(model);
  if (!c.input)
    return std::make_unique<sim::SyntheticSource>(layout, c.seed, c.frames.value_or(synthetic_frames));
  try {
    return std::make_unique<sim::RawFileSource>(*c.input, layout);
  } catch (const Error& e) {
    err << "gmc: " << e.what() << "\n";
    throw Exit{kIoError};
  }
}

int cmd_check(const InvocationConfig& c, std::ostream& out, std::ostream& err) {
  Loaded m = load(c.model_path, false, err);
  out << c.model_path << ": ok, " << m.model.tasks.size() << " tasks, " << m.model.arrays.size()
      << " arrays\n";
  return kOk;
}

int cmd_dump(const InvocationConfig& c, std::ostream& out, std::ostream& err) {
  Loaded m = load(c.model_path, true, err);
  out << frontend::print_model(m.model);
  return kOk;
}

int cmd_compile(const InvocationConfig& c, std::ostream& out, std::ostream& err) {
  Loaded m = load(c.model_path, false, err);
  const passes::PipelineResult p = passes::run_pipeline(m.model, c.topology);
  const backend::GeneratedArtifact a = backend::generate(m.model, p, c.schedule, m.name);

  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "gmc: cannot create '" << dir.string() << "': " << ec.message() << "\n";
    throw Exit{kIoError};
  }
  const fs::path files[] = {dir / (m.name + ".cl"), dir / (m.name + "_host.c"),
                            dir / (m.name + "_report.json")};
  write_text(files[0], a.kernel_source, err);
  write_text(files[1], a.host_source, err);
  write_text(files[2], a.report, err);
  for (const auto& f : files) out << "wrote " << f.string() << "\n";
  const auto& schedule = chosen(p, c.schedule);
  out << stats_line(c.schedule, schedule, passes::transfer_stats(schedule, p.plan)) << "\n";
  return kOk;
}

int cmd_simulate(const InvocationConfig& c, std::ostream& out, std::ostream& err) {
  Loaded m = load(c.model_path, false, err);
  const passes::PipelineResult p = passes::run_pipeline(m.model, c.topology);
  auto source = open_source(c, m.model, 1, err);

  const fs::path output =
      c.output ? fs::path(*c.output) : fs::path(c.output_dir) / (m.name + "_out.raw");
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    err << "gmc: cannot write '" << output.string() << "'\n";
    throw Exit{kIoError};
  }

  const sim::FrameLayout in_layout = sim::FrameLayout::inputs_of(m.model);
  const sim::FrameLayout out_layout = sim::FrameLayout::outputs_of(m.model);
  sim::ScheduledExecutor exec(m.model, chosen(p, c.schedule));
  std::int64_t n = 0;
  while (!c.frames || n < *c.frames) {
    std::optional<sim::Frame> frame;
    try {
      frame = source->next();
    } catch (const Error& e) {
      err << "gmc: " << e.what() << "\n";
      throw Exit{kIoError};
    }
    if (!frame) {
      if (c.frames) {
        err << "gmc: input ends after " << n << " of " << *c.frames << " frames\n";
        throw Exit{kIoError};
      }
      break;
    }
    sim::write_frame(file, out_layout.from_map(exec.run_frame(in_layout.to_map(*frame))));
    ++n;
  }
  file.flush();
  if (!file) {
    err << "gmc: cannot write '" << output.string() << "'\n";
    throw Exit{kIoError};
  }
  out << "frames=" << n << " output=" << output.string() << "\n";
  out << stats_line(c.schedule, chosen(p, c.schedule),
                    n ? passes::transfer_stats(chosen(p, c.schedule), p.plan)
                      : passes::TransferStats{})
      << "\n";
  return kOk;
}

int cmd_bench(const InvocationConfig& c, std::ostream& out, std::ostream& err) {
  Loaded m = load(c.model_path, false, err);
  const passes::PipelineResult p = passes::run_pipeline(m.model, c.topology);
  const std::int64_t frames = c.frames.value_or(200);
  auto source = open_source(c, m.model, frames, err);
  sim::ExecutionTrace t;
  try {
    t = sim::bench(m.model, chosen(p, c.schedule), frames, *source);
  } catch (const Error& e) {
    err << "gmc: " << e.what() << "\n";
    throw Exit{kIoError};
  }
  out << std::fixed << std::setprecision(6);
  out << "frames=" << t.frames << " seconds=" << t.seconds
      << " fps=" << std::setprecision(2) << t.frames_per_second << "\n"
      << std::setprecision(6);
  for (const auto& [task, seconds] : t.task_seconds)
    out << "task " << task << " seconds=" << seconds << "\n";
  out << stats_line(c.schedule, chosen(p, c.schedule), t.per_frame) << "\n";
  return kOk;
}

}  // namespace

ParsedArgs parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gmc: compiles repetitive task models to OpenCL", "gmc"};
  app.require_subcommand(1);

  InvocationConfig c;
  std::string schedule = "optimized";
  std::int64_t frames = -1;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("model", c.model_path, "model file (.gm)")->required();
  };
  auto add_passes = [&](CLI::App* sub) {
    sub->add_option("--schedule", schedule, "transfer schedule")
        ->check(CLI::IsMember({"naive", "optimized"}))
        ->capture_default_str();
    sub->add_option("--min-items", c.topology.min_items,
                    "repetition count below which a task runs as one work-group")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-wg", c.topology.max_wg, "work-group size limit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_frames = [&](CLI::App* sub) {
    sub->add_option("--frames", frames, "number of frames")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "seed of the synthetic frame generator")
        ->capture_default_str();
    sub->add_option("--input", c.input, "raw input frames (default: synthetic)");
  };

  CLI::App* check = app.add_subcommand("check", "parse and validate a model");
  add_model(check);
  CLI::App* dump = app.add_subcommand("dump", "print a model in canonical form");
  add_model(dump);
  CLI::App* compile = app.add_subcommand("compile", "generate kernels, host driver and report");
  add_model(compile);
  add_passes(compile);
  compile->add_option("--out", c.output_dir, "output directory")->capture_default_str();
  CLI::App* simulate = app.add_subcommand("simulate", "run a model on the CPU");
  add_model(simulate);
  add_passes(simulate);
  add_frames(simulate);
  simulate->add_option("--output", c.output, "raw output frames");
  simulate->add_option("--out", c.output_dir, "directory of the default output file")
      ->capture_default_str();
  CLI::App* bench = app.add_subcommand("bench", "time the CPU simulation of a schedule");
  add_model(bench);
  add_passes(bench);
  add_frames(bench);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kOk : kUsageError};
  }

  if (check->parsed()) c.command = Command::Check;
  if (dump->parsed()) c.command = Command::Dump;
  if (compile->parsed()) c.command = Command::Compile;
  if (simulate->parsed()) c.command = Command::Simulate;
  if (bench->parsed()) c.command = Command::Bench;
  c.schedule = schedule == "naive" ? backend::ScheduleMode::Naive : backend::ScheduleMode::Optimized;
  if (frames >= 0) c.frames = frames;
  return {c, kOk};
}

int run(const InvocationConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Check: return cmd_check(config, out, err);
      case Command::Dump: return cmd_dump(config, out, err);
      case Command::Compile: return cmd_compile(config, out, err);
      case Command::Simulate: return cmd_simulate(config, out, err);
      case Command::Bench: return cmd_bench(config, out, err);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "gmc: " << e.what() << "\n";
    return kModelError;
  }
  return kUsageError;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace gmc::cli
