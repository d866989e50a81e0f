#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "dxsim/engine/baseline.hpp"
#include "dxsim/frontend/config_file.hpp"
#include "dxsim/frontend/sweep.hpp"
#include "helpers.hpp"
#include "random_program.hpp"

using namespace dxsim;
using namespace dxsim::frontend;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / ("dxsim_unit_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("frontend") {
  TEST_CASE("gather program parses to SLD, ILD, WAIT") {
    const auto r = parse(R"(
# gather
array A f32 1024
array B u32 256
init B iota
reg r0 = 0
reg r1 = 256
reg r2 = 1
SLD u32 B -> t0, r0, r1, r2
ILD f32 A -> t1, t0
WAIT t1
)");
    REQUIRE(r.ok());
    const auto& steps = r.program.steps;
    std::vector<std::string> kinds;
    for (const auto& s : steps) {
      if (const auto* in = std::get_if<isa::Instruction>(&s)) kinds.emplace_back(isa::name(in->opcode));
      if (std::holds_alternative<isa::Wait>(s)) kinds.emplace_back("WAIT");
    }
    CHECK(kinds == std::vector<std::string>{"SLD", "ILD", "WAIT"});
  }

  TEST_CASE("diagnostics carry line numbers") {
    const auto r = parse("array A f32 4\n\nFROB t1\nILD f32 Q -> t1, t0\n");
    REQUIRE(r.diagnostics.size() == 2);
    CHECK(r.diagnostics[0].line == 3);
    CHECK(r.diagnostics[0].message.find("unknown opcode") != std::string::npos);
    CHECK(r.diagnostics[1].line == 4);
    CHECK_THROWS_WITH_AS(parse_or_throw("nope\n", "x.dx"), doctest::Contains("x.dx:1:"), ParseError);
  }

  TEST_CASE("print then parse round-trips") {
    std::mt19937_64 rng(8);
    const auto cfg = testing::corpus_config();
    for (int k = 0; k < 200; ++k) {
      const auto rp = testing::random_program(rng, cfg);
      const std::string text = print(rp.program);
      const auto again = parse(text);
      REQUIRE(again.ok());
      REQUIRE(again.program == rp.program);
      REQUIRE(print(again.program) == text);
    }
  }

  TEST_CASE("strict config needs every key") {
    const std::string full = SimConfig{}.to_text();
    const SimConfig back = config_from_text(full, true, "full");
    CHECK(back.to_text() == full);

    const std::string key = "dram.tccd_l_ns";
    std::string cut;
    std::istringstream in(full);
    for (std::string line; std::getline(in, line);)
      if (line.rfind(key, 0) != 0) cut += line + "\n";
    CHECK_THROWS_WITH_AS(config_from_text(cut, true, "cut.cfg"), doctest::Contains(key.c_str()), ConfigError);
    CHECK_NOTHROW(config_from_text(cut, false, "cut.cfg"));
    CHECK_THROWS_WITH_AS(config_from_text("dram.bogus = 1\n", false, "b"),
                         doctest::Contains("dram.bogus"), ConfigError);
    CHECK_THROWS_AS(config_from_text("dram.channels = two\n", false, "b"), ConfigError);
  }

  TEST_CASE("partial config changes only the named keys") {
    const SimConfig c = config_from_text("dram.channels = 4\nbaseline.max_outstanding = 3\n", false, "p");
    CHECK(c.dram.channels == 4);
    CHECK(c.baseline.max_outstanding == 3);
    CHECK(c.dram.trcd == SimConfig{}.dram.trcd);
  }

  TEST_CASE("DX_SIM_SEED overrides the seed") {
    SimConfig c;
    ::setenv("DX_SIM_SEED", "77", 1);
    apply_env_overrides(c);
    ::unsetenv("DX_SIM_SEED");
    CHECK(c.seed == 77);
    SimConfig d;
    apply_env_overrides(d);
    CHECK(d.seed == 1);
  }

  TEST_CASE("sweep spec") {
    const auto s = sweep_spec_from_text("kind = gather_spd\nunique_indices = 8192\ncells = 0:off:off; 1:on:on\n", "s");
    CHECK(s.kind == workloads::Kind::GatherSpd);
    CHECK(s.workload.pattern.unique_indices == 8192);
    CHECK(s.cells == std::vector<SweepCell>{{0, false, false}, {1, true, true}});
    CHECK(sweep_spec_from_text("", "s").cells.size() == 8);
    CHECK_THROWS_AS(sweep_spec_from_text("cells = 0:maybe:off\n", "s"), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_text("kind = csr\n", "s"), ConfigError);
  }

  TEST_CASE("sweep emits two rows per cell, deterministic across jobs") {
    SweepSpec spec;
    spec.workload.pattern.unique_indices = 4096;
    spec.cells = {{0, false, false}, {1, true, true}};
    const SimConfig cfg;
    const std::string one = sweep_csv(run_sweep(spec, cfg, 1));
    const std::string two = sweep_csv(run_sweep(spec, cfg, 2));
    CHECK(one == two);
    CHECK(std::count(one.begin(), one.end(), '\n') == 1 + 4);
    CHECK(one.rfind(engine::csv_header(), 0) == 0);
  }

  TEST_CASE("memory image file round trip") {
    const auto prog = parse_or_throw("array A f64 10\narray Bee i32 3\ninit A iota\n");
    MemoryImage img = MemoryImage::from_program(prog);
    img.at(1).set(2, isa::from_int(-5, isa::DType::I32));
    const fs::path p = scratch_dir() / "m.img";
    img.save(p);
    CHECK(MemoryImage::load(p) == img);
    {
      std::ofstream bad(p, std::ios::binary);
      bad << "NOPE";
    }
    CHECK_THROWS_AS(MemoryImage::load(p), Error);
  }

  TEST_CASE("init file resolves relative to the program") {
    const fs::path dir = scratch_dir();
    const auto src = parse_or_throw("array V u32 4\ninit V iota\n");
    MemoryImage::from_program(src).save(dir / "v.img");
    const auto prog = parse_or_throw("array V u32 4\ninit V file v.img\n");
    CHECK(MemoryImage::from_program(prog, dir).at(0).get(3) == 3);
  }

  TEST_CASE("trace JSON round trip") {
    TraceEvent e;
    e.kind = TraceKind::Drain;
    e.time = 123456;
    e.instr = 4;
    e.slice = 7;
    e.rows = 3;
    e.columns = 11;
    e.reason = DrainReason::Capacity;
    const TraceEvent back = trace_event_from_json(to_json(e));
    CHECK(back.kind == e.kind);
    CHECK(back.time == e.time);
    CHECK(back.instr == e.instr);
    CHECK(back.slice == e.slice);
    CHECK(back.rows == e.rows);
    CHECK(back.columns == e.columns);
    CHECK(back.reason == e.reason);
  }

  TEST_CASE("baseline trace file") {
    const fs::path p = scratch_dir() / "t.baseline";
    const std::vector<engine::BaselineAccess> acc{{0x40, false}, {0xdeadbe00, true}};
    engine::save_baseline_trace(p, acc);
    CHECK(engine::load_baseline_trace(p) == acc);
    {
      std::ofstream bad(p);
      bad << "R 40\nX 12\n";
    }
    CHECK_THROWS_WITH_AS(engine::load_baseline_trace(p), doctest::Contains(":2:"), ConfigError);
  }
}
