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

// Acceptance checks for the downscaler toolchain. Prints one line per
// criterion and exits non-zero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gmc/cli/cli.hpp"
#include "gmc/passes/pipeline.hpp"
#include "gmc/sim/executor.hpp"
#include "gmc/sim/oracle.hpp"
#include "gmc/tiler/tiler.hpp"
#include "properties.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace gmc;
using testing::read_file;
using testing::source_path;

/// Thrown by a check to fail its criterion with a reason.
struct Failed {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

struct Cli {
  int code;
  std::string out;
  std::string err;
};

Cli gmc_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gmc_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const std::string kModel = source_path("models/downscaler.gm");

std::string stats_line(const passes::TransferStats& s) {
  return "h2d=" + std::to_string(s.h2d_count) + " h2d_bytes=" + std::to_string(s.h2d_bytes) +
         " d2h=" + std::to_string(s.d2h_count) + " d2h_bytes=" + std::to_string(s.d2h_bytes);
}

// 1. simulate vs the direct oracle on 100 seeded frames.
std::string downscaler_correctness() {
  const fs::path dir = scratch("c1");
  const std::string out = (dir / "out.raw").string();
  const Cli r = gmc_cli({"simulate", kModel, "--frames", "100", "--seed", "2026", "--output", out});
  require(r.code == 0, "simulate exited " + std::to_string(r.code) + ": " + r.err);

  const ir::Model m = testing::load_model(kModel);
  const auto in = sim::FrameLayout::inputs_of(m);
  const auto outl = sim::FrameLayout::outputs_of(m);
  require(in.shapes[0] == ir::Shape{{288, 352}}, "luma input is not 352x288");
  require(in.shapes[1] == ir::Shape{{144, 176}}, "chroma input is not 4:2:0");
  require(outl.shapes[0] == ir::Shape{{128, 132}}, "luma output is " + ir::to_string(outl.shapes[0]));

  sim::SyntheticSource src(in, 2026);
  std::ostringstream expect;
  for (int i = 0; i < 100; ++i) {
    const sim::Frame o = sim::direct_downscale_oracle(*src.next());
    require(o.planes[0].shape == ir::Shape{{128, 132}}, "oracle luma shape");
    sim::write_frame(expect, o);
  }
  const std::string got = read_file(out);
  require(got.size() == expect.str().size(), "output has " + std::to_string(got.size()) + " bytes");
  if (got != expect.str()) {
    const auto pos = std::mismatch(got.begin(), got.end(), expect.str().begin()).first - got.begin();
    throw Failed{"first mismatch at byte " + std::to_string(pos)};
  }
  fs::remove_all(dir);
  return "100 frames bit-identical, luma 132x128";
}

// 2. yhfk multiplicity and exact coverage of all of its tilers.
std::string repetition_space() {
  const ir::Model m = testing::load_model(kModel);
  const ir::RepetitiveTask* t = m.find_task("yhfk");
  require(t, "no task yhfk");
  require(t->repetition == ir::Shape{{288, 44}}, "multiplicity " + ir::to_string(t->repetition));
  int checked = 0;
  for (const auto* ports : {&t->inputs, &t->outputs})
    for (const auto& p : *ports) {
      const ir::ArrayValue* a = m.find_array(p.tiler.array);
      const auto cov = tiler::check_coverage(p.tiler, a->shape, t->repetition);
      require(cov.kind == tiler::Coverage::Kind::Exact, "port '" + p.name + "' is not exact");
      ++checked;
    }
  return "multiplicity [288,44], " + std::to_string(checked) + " tilers exact";
}

// 3. 12 transfers naive, 6 optimized, intermediates never transferred.
std::string transfer_elimination() {
  const ir::Model m = testing::load_model(kModel);
  const auto p = passes::run_pipeline(m);
  auto transfers = [](const passes::TransferSchedule& s) {
    int n = 0;
    for (const auto& step : s.steps) n += step.kind != passes::StepKind::Launch;
    return n;
  };
  const int naive = transfers(p.naive), opt = transfers(p.optimized);
  require(naive == 12, "naive has " + std::to_string(naive) + " transfers");
  require(opt == 6, "optimized has " + std::to_string(opt) + " transfers");
  for (const auto& step : p.optimized.steps)
    for (const char* mid : {"y_mid", "u_mid", "v_mid"})
      require(step.array != mid, std::string(mid) + " is transferred");
  require(passes::verify_residency(p.optimized, m).empty(), "optimized schedule reads stale data");
  return "naive 12, optimized 6, *_mid never transferred";
}

// 4. naive and optimized schedules agree on fuzzed models.
std::string semantic_preservation() {
  std::mt19937_64 rng(4);
  int host_tasks = 0;
  for (int i = 0; i < 25; ++i) {
    const ir::Model m = testing::random_model(rng);
    require(m.tasks.size() <= 6, "fuzzer made too many tasks");
    for (const auto& a : m.arrays) require(a.shape.count() <= 64 * 64, "fuzzer array too big");
    for (const auto& t : m.tasks)
      host_tasks += m.processor_of(t)->kind == ir::ProcessorKind::Host;
    const std::string why = testing::check_schedule_equivalence(m, rng, 3);
    require(why.empty(), "model " + std::to_string(i) + ": " + why);
  }
  return "25 models x 3 frames bit-identical (" + std::to_string(host_tasks) + " host tasks)";
}

// 5. tiler algebra on 1000 random tilers.
std::string tiler_algebra() {
  std::mt19937_64 rng(5);
  int exact = 0;
  for (int i = 0; i < 1000; ++i) {
    // Half are built to partition their array so the write/extract identity
    // gets exercised; the other half are arbitrary.
    const testing::TilerCase c =
        i % 2 ? testing::random_tiler(rng) : testing::random_exact_tiler(rng);
    require(c.array.count() <= 4096, "array too big");
    const std::string why = testing::check_tiler_properties(c, rng);
    require(why.empty(), "tiler " + std::to_string(i) + ": " + why);
    exact += tiler::check_coverage(c.tiler, c.array, c.repetition).kind ==
             tiler::Coverage::Kind::Exact;
  }
  return "1000 tilers, " + std::to_string(exact) + " exact";
}

// 6. topology invariants on 1000 random multiplicities and devices.
std::string topology_invariants() {
  std::mt19937_64 rng(6);
  const std::int64_t limits[] = {1, 2, 16, 64, 100, 128, 256, 512, 1024};
  for (int i = 0; i < 1000; ++i) {
    ir::Shape s;
    const auto rank = 1 + rng() % 4;
    for (std::size_t d = 0; d < rank; ++d) s.extents.push_back(1 + rng() % 400);
    const ir::Processor dev{"gpu", ir::ProcessorKind::Device, limits[rng() % 9],
                            static_cast<std::int64_t>(1 + rng() % 3)};
    passes::TopologyConfig cfg;
    cfg.min_items = 1 + rng() % 256;
    cfg.max_wg = limits[rng() % 9];
    const std::string why = testing::check_topology_properties(s, dev, cfg);
    require(why.empty(), ir::to_string(s) + ": " + why);
  }
  return "1000 topologies";
}

// 7. six named kernels, read-only inputs, deterministic golden output, and
// optionally a real OpenCL front end.
std::string codegen_structure() {
  const fs::path a = scratch("c7a"), b = scratch("c7b");
  for (const fs::path& d : {a, b}) {
    const Cli r = gmc_cli({"compile", kModel, "--out", d.string()});
    require(r.code == 0, "compile exited " + std::to_string(r.code) + ": " + r.err);
  }
  for (const char* f : {"downscaler.cl", "downscaler_host.c", "downscaler_report.json"}) {
    const std::string first = read_file((a / f).string());
    require(first == read_file((b / f).string()), std::string(f) + " differs between runs");
    require(first == read_file(source_path(std::string("tests/golden/") + f)),
            std::string(f) + " differs from golden");
  }

  const std::string cl = read_file((a / "downscaler.cl").string());
  const std::regex kernel(R"(__kernel void (\w+)\()");
  std::vector<std::string> names;
  for (auto it = std::sregex_iterator(cl.begin(), cl.end(), kernel); it != std::sregex_iterator();
       ++it)
    names.push_back((*it)[1]);
  require(names == std::vector<std::string>{"yhfk", "uhfk", "vhfk", "yvfk", "uvfk", "vvfk"},
          std::to_string(names.size()) + " kernels");

  const ir::Model m = testing::load_model(kModel);
  const auto report = nlohmann::json::parse(read_file((a / "downscaler_report.json").string()));
  int read_only = 0;
  for (const auto& buf : report["buffers"]) {
    const std::string name = buf["array"];
    bool written = false;
    for (const auto& t : m.tasks)
      for (const auto& p : t.outputs) written |= p.tiler.array == name;
    require(buf["read_only"] == !written, name + " read_only flag is wrong");
    read_only += !written;
  }
  require(read_only == 3, std::to_string(read_only) + " read-only buffers");

  std::string note = "opencl check skipped";
  std::string checker;
#ifdef GMC_OPENCL_CHECKER
  checker = GMC_OPENCL_CHECKER;
#endif
  if (const char* env = std::getenv("GMC_OPENCL_CHECKER")) checker = env;
  if (!checker.empty()) {
    const std::string cmd = "\"" + checker +
                            "\" -x cl -cl-std=CL1.0 -Xclang -finclude-default-header "
                            "-fsyntax-only -Wall -Werror \"" +
                            (a / "downscaler.cl").string() + "\" 2>&1";
    require(std::system(cmd.c_str()) == 0, "OpenCL front end rejected the kernels");
    note = "opencl check passed";
  }
  fs::remove_all(a);
  fs::remove_all(b);
  return "6 kernels, 3 read-only inputs, golden-identical twice, " + note;
}

// 8. bench over 200 frames, per-task times and TransferStats.
std::string benchmark_harness() {
  const auto start = std::chrono::steady_clock::now();
  const Cli r = gmc_cli({"bench", kModel, "--frames", "200"});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(r.code == 0, "bench exited " + std::to_string(r.code) + ": " + r.err);
  require(secs < 60, "took " + std::to_string(secs) + " s");
  require(r.out.rfind("frames=200 ", 0) == 0, "unexpected header: " + r.out.substr(0, 40));

  const ir::Model m = testing::load_model(kModel);
  for (const auto& t : m.tasks)
    require(r.out.find("task " + t.name + " seconds=") != std::string::npos,
            "no time for " + t.name);
  const auto p = passes::run_pipeline(m);
  const std::string expect = stats_line(passes::transfer_stats(p.optimized, p.plan));
  require(r.out.find("schedule=optimized " + expect + " launches=6") != std::string::npos,
          "stats line does not match transfer_stats");
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "200 frames in " << secs << " s, " << expect;
  return s.str();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 means no budget
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "downscaler correctness", 30, downscaler_correctness},
      {2, "repetition space", 5, repetition_space},
      {3, "transfer elimination", 0, transfer_elimination},
      {4, "semantic preservation", 0, semantic_preservation},
      {5, "tiler algebra", 60, tiler_algebra},
      {6, "topology invariants", 0, topology_invariants},
      {7, "codegen structure", 0, codegen_structure},
      {8, "benchmark harness", 60, benchmark_harness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failed& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_seconds > 0 && secs >= c.budget_seconds) {
      ok = false;
      detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    failed += !ok;
    std::printf("[%s] %d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, detail.c_str(),
                secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed ? 1 : 0;
}
