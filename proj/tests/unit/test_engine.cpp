#include <doctest.h>

#include <map>

#include "dxsim/engine/baseline.hpp"
#include "dxsim/oracle/compare.hpp"
#include "dxsim/workloads/patterns.hpp"
#include "dxsim/workloads/programs.hpp"
#include "helpers.hpp"

using namespace dxsim;
using dxsim::testing::events_of;
using dxsim::testing::run_text;

namespace {

const char* kGather = R"(
array A f32 65536
array B u32 4096
init A iota
init B iota
reg r0 = 0
reg r1 = 4096
reg r2 = 1
reg r3 = 16
SLD u32 B -> t0, r0, r1, r2
ALUS u32 MUL t1 <- t0, r3
ILD f32 A -> t2, t1
WAIT t2
)";

std::vector<engine::BaselineAccess> lines(std::uint64_t n, std::uint64_t step) {
  std::vector<engine::BaselineAccess> out;
  for (std::uint64_t k = 0; k < n; ++k) out.push_back({k * step * 64, false});
  return out;
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("empty program") {
    const auto run = run_text("");
    CHECK(run.result.stats.cycles == 0);
    CHECK(run.result.stats.total_requests() == 0);
    CHECK(run.result.stats.dram.reads == 0);
  }

  TEST_CASE("gather matches the oracle") {
    const auto run = run_text(kGather);
    const auto want = testing::oracle_text(kGather);
    CHECK(oracle::differences(want, run.result.memory, run.result.tiles, run.result.registers).empty());
    CHECK(isa::as_float(run.result.tiles.tile(2).elements[3], isa::DType::F32) == 48.0);
  }

  TEST_CASE("second writer of a tile waits for the first to retire") {
    const std::string text = std::string(kGather) + "ILD f32 A -> t2, t0\nWAIT t2\n";
    const auto run = run_text(text);
    const auto first_retire = events_of(run.events, TraceKind::Retire, 2);
    const auto second_fill = events_of(run.events, TraceKind::Fill, 3);
    REQUIRE(first_retire.size() == 1);
    REQUIRE_FALSE(second_fill.empty());
    CHECK(second_fill.front().time >= first_retire.front().time);
  }

  TEST_CASE("no two in-flight instructions share a destination") {
    const auto run = run_text(std::string(kGather) + "ILD f32 A -> t2, t0\nALUS f32 ADD t2 <- t0, r2\n");
    std::map<std::int64_t, std::pair<Tick, Tick>> life;
    for (const auto& e : run.events) {
      if (e.instr < 0) continue;
      auto [it, fresh] = life.try_emplace(e.instr, e.time, e.time);
      it->second.first = std::min(it->second.first, e.time);
      it->second.second = std::max(it->second.second, e.time);
    }
    CHECK(life.at(3).first >= life.at(2).second);
    CHECK(life.at(4).first >= life.at(3).second);
  }

  TEST_CASE("cold indirect accesses bypass the LLC") {
    const auto run = run_text(kGather);
    const auto& s = run.result.stats;
    CHECK(s.direct_dram == s.indirect_requests);
    CHECK(s.llc_hits + s.llc_misses == s.stream_requests);
    CHECK(s.llc_hits + s.llc_misses + s.direct_dram == s.total_requests());
  }

  TEST_CASE("warm lines are served by the LLC") {
    const std::string text = std::string(kGather) + "warm A\nwarm B\n";
    const auto run = run_text(text);
    const auto& s = run.result.stats;
    CHECK(s.direct_dram == 0);
    CHECK(s.llc_misses == 0);
    CHECK(events_of(run.events, TraceKind::Command).empty());
    for (const auto& f : events_of(run.events, TraceKind::Fill, 2))
      if (f.new_column) CHECK(f.hit);
  }

  TEST_CASE("stream loads always go through the LLC") {
    const auto run = run_text(kGather);
    for (const auto& e : events_of(run.events, TraceKind::Command))
      if (e.instr == 0) CHECK(e.origin != dram::Origin::Indirect);
    CHECK(run.result.stats.stream_requests > 0);
    CHECK(run.result.stats.llc_misses > 0);
  }

  TEST_CASE("WAIT on a tile nobody produces is a deadlock") {
    CHECK_THROWS_AS(run_text("array A f32 16\nWAIT t5\n"), DeadlockError);
  }

  TEST_CASE("out-of-bounds index") {
    const char* text = R"(
array A f32 16
array B u32 4
init B iota
reg r0 = 0
reg r1 = 4
reg r2 = 1
reg r3 = 9
SLD u32 B -> t0, r0, r1, r2
ALUS u32 MUL t1 <- t0, r3
ILD f32 A -> t2, t1
WAIT t2
)";
    CHECK_THROWS_WITH_AS(run_text(text), doctest::Contains("out of bounds"), BoundsError);
    CHECK_THROWS_AS(testing::oracle_text(text), BoundsError);
  }

  TEST_CASE("runs are deterministic") {
    const auto a = run_text(kGather);
    const auto b = run_text(kGather);
    CHECK(engine::csv_row(a.result.stats) == engine::csv_row(b.result.stats));
    CHECK(a.result.memory == b.result.memory);
    CHECK(a.result.tiles.dump() == b.result.tiles.dump());
    CHECK(a.events.size() == b.events.size());
  }

  TEST_CASE("arrays are placed on disjoint row-stripe boundaries") {
    const auto prog = frontend::parse_or_throw("array A f32 100\narray B u64 3000000\narray C u32 1\n");
    const dram::DramConfig cfg;
    const auto arrays = engine::place_arrays(prog, cfg);
    REQUIRE(arrays.size() == 3);
    const std::uint64_t stripe = std::uint64_t{cfg.total_banks()} * cfg.columns_per_row * 64;
    for (std::size_t k = 0; k < arrays.size(); ++k) {
      CHECK(arrays[k].base % stripe == 0);
      CHECK(arrays[k].base % (2u << 20) == 0);
      if (k) CHECK(arrays[k].base >= arrays[k - 1].base + arrays[k - 1].length * isa::width(arrays[k - 1].dtype));
    }
  }

  TEST_CASE("baseline single access latency") {
    SimConfig cfg;
    const auto s = engine::baseline_run(lines(1, 1), cfg);
    const Tick floor = 2 * cfg.baseline.one_way_latency + cfg.dram.trcd + cfg.dram.burst_time();
    CHECK(s.elapsed >= floor);
    CHECK(s.elapsed <= floor + 2 * cfg.dram.tck + cfg.maa.cycle_time(2));
    CHECK(s.dram.reads == 1);
  }

  TEST_CASE("baseline utilization grows with outstanding accesses") {
    SimConfig one;
    one.baseline.cores = 1;
    one.baseline.max_outstanding = 1;
    SimConfig ten = one;
    ten.baseline.max_outstanding = 10;
    const auto trace = lines(4096, 1);
    CHECK(engine::baseline_run(trace, one).dram.bw_util <
          engine::baseline_run(trace, ten).dram.bw_util);
  }

  TEST_CASE("independent core lists") {
    SimConfig cfg;
    const engine::BaselineTrace per_core{lines(100, 1), lines(50, 3)};
    const auto s = engine::baseline_run(per_core, cfg);
    CHECK(s.direct_dram == 150);
    CHECK(s.dram.reads == 150);
  }

  TEST_CASE("baseline stays below the accelerator on the best ordering") {
    SimConfig cfg;
    workloads::WorkloadSpec spec;
    spec.pattern.unique_indices = 16384;
    spec.pattern.rbh_target = 1.0;
    spec.pattern.chi = true;
    spec.pattern.bgi = true;
    const auto wl = workloads::gen_program(workloads::Kind::GatherFull, spec, cfg);
    const auto dx = engine::run(wl.program, wl.image, cfg);
    const auto base = engine::baseline_run(wl.baseline, cfg);
    CHECK(base.dram.bw_util_steady < dx.stats.dram.bw_util_steady);
    CHECK(base.elapsed > dx.stats.elapsed);
  }

  TEST_CASE("CSV schema") {
    CHECK(engine::csv_header() ==
          "run,mode,cycles,elapsed_ps,dram_reads,dram_writes,dram_acts,dram_pres,row_hits,rbh,"
          "bytes,bw_util,bw_util_steady,avg_occupancy,llc_hits,llc_misses,direct_dram,"
          "indirect_requests,stream_requests,stream_stalls,capacity_drains");
    engine::StatReport empty;
    CHECK(engine::csv_row(empty).find(",,") != std::string::npos);
  }
}
