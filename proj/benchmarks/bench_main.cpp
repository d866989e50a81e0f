#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dxsim/compute/alu.hpp"
#include "dxsim/compute/range_fuser.hpp"
#include "dxsim/dram/address_map.hpp"
#include "dxsim/engine/baseline.hpp"
#include "dxsim/engine/engine.hpp"
#include "dxsim/isa/encoding.hpp"
#include "dxsim/oracle/oracle.hpp"
#include "dxsim/sim_config.hpp"
#include "dxsim/workloads/patterns.hpp"
#include "dxsim/workloads/programs.hpp"

namespace {

using namespace dxsim;

void BM_MapAddress(benchmark::State& state) {
  const dram::DramConfig cfg;
  std::mt19937_64 rng(1);
  std::vector<Addr> addrs(4096);
  for (auto& a : addrs) a = rng() & ((Addr{1} << 33) - 1);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::map_address(addrs[k], cfg));
    k = (k + 1) & 4095;
  }
}
BENCHMARK(BM_MapAddress);

void BM_AluApply(benchmark::State& state) {
  const auto t = static_cast<isa::DType>(state.range(0));
  isa::Word a = isa::from_int(12345, t), b = isa::from_int(7, t);
  for (auto _ : state) {
    a = compute::alu_apply(isa::AluOp::ADD, t, a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_AluApply)->DenseRange(0, 5);

void BM_RangeFuse(benchmark::State& state) {
  const std::size_t rows = 4096;
  std::vector<std::int64_t> lo(rows), hi(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    lo[i] = static_cast<std::int64_t>(i * 4);
    hi[i] = lo[i] + static_cast<std::int64_t>(i % 9);
  }
  for (auto _ : state) {
    auto out = compute::range_fuse(lo, hi, {}, 1, {}, 16384);
    benchmark::DoNotOptimize(out.inner.data());
  }
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_RangeFuse);

void BM_EncodeDecode(benchmark::State& state) {
  isa::Instruction in{isa::Opcode::IRMW};
  in.dtype = isa::DType::F64;
  in.op = isa::AluOp::ADD;
  in.base = 3;
  in.ts1 = 1;
  in.ts2 = 2;
  in.tc = 4;
  for (auto _ : state) benchmark::DoNotOptimize(isa::decode(isa::encode(in)));
}
BENCHMARK(BM_EncodeDecode);

void BM_GenAllMiss(benchmark::State& state) {
  workloads::PatternSpec spec;
  spec.unique_indices = static_cast<std::uint64_t>(state.range(0));
  const dram::DramConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(workloads::gen_allmiss(spec, cfg).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenAllMiss)->Arg(16384)->Arg(65536);

workloads::Workload gather(std::uint64_t unique, const SimConfig& cfg) {
  workloads::WorkloadSpec spec;
  spec.pattern.unique_indices = unique;
  return workloads::gen_program(workloads::Kind::GatherSpd, spec, cfg);
}

void BM_EngineGather(benchmark::State& state) {
  const SimConfig cfg;
  const auto wl = gather(static_cast<std::uint64_t>(state.range(0)), cfg);
  for (auto _ : state) {
    auto r = engine::run(wl.program, wl.image, cfg);
    benchmark::DoNotOptimize(r.stats.cycles);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineGather)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_BaselineGather(benchmark::State& state) {
  const SimConfig cfg;
  const auto wl = gather(static_cast<std::uint64_t>(state.range(0)), cfg);
  for (auto _ : state) {
    auto r = engine::baseline_run(wl.baseline, cfg);
    benchmark::DoNotOptimize(r.cycles);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BaselineGather)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_OracleGather(benchmark::State& state) {
  const SimConfig cfg;
  const auto wl = gather(static_cast<std::uint64_t>(state.range(0)), cfg);
  for (auto _ : state) {
    auto r = oracle::oracle_run(wl.program, wl.image, cfg.maa);
    benchmark::DoNotOptimize(&r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OracleGather)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
