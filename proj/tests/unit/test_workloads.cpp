#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dxsim/engine/baseline.hpp"
#include "dxsim/isa/validate.hpp"
#include "dxsim/workloads/patterns.hpp"
#include "dxsim/workloads/programs.hpp"
#include "helpers.hpp"

using namespace dxsim;
using namespace dxsim::workloads;

namespace {

PatternSpec small(double rbh, bool chi, bool bgi) {
  PatternSpec p;
  p.unique_indices = 16384;
  p.rbh_target = rbh;
  p.chi = chi;
  p.bgi = bgi;
  return p;
}

// Measured on the in-order, one-at-a-time issuer.
double measured_rbh(const PatternSpec& p) {
  SimConfig cfg;
  cfg.baseline.cores = 1;
  cfg.baseline.max_outstanding = 1;
  const auto idx = gen_allmiss(p, cfg.dram);
  isa::Program prog;
  prog.arrays = {{"A", isa::DType::F32, allmiss_array_length(p, cfg.dram)}};
  const auto a = engine::place_arrays(prog, cfg.dram).at(0);
  return *engine::baseline_run(index_trace(idx, a, 64), cfg).dram.rbh;
}

std::vector<dram::DramCoord> coords(const std::vector<std::uint64_t>& idx) {
  const dram::AddressMapper m{dram::DramConfig{}};
  std::vector<dram::DramCoord> out;
  for (auto i : idx) out.push_back(m.map(i * 4));
  return out;
}

}  // namespace

TEST_SUITE("workloads") {
  TEST_CASE("extreme orderings reach their row hit rates") {
    CHECK(measured_rbh(small(1.0, true, true)) >= 0.95);
    CHECK(measured_rbh(small(0.0, false, false)) <= 0.05);
    CHECK(measured_rbh(small(0.5, false, false)) == doctest::Approx(0.5).epsilon(0.04));
  }

  TEST_CASE("orderings permute one index set") {
    const dram::DramConfig cfg;
    auto base = gen_allmiss(small(0, false, false), cfg);
    std::sort(base.begin(), base.end());
    CHECK(std::adjacent_find(base.begin(), base.end()) == base.end());
    for (auto [rbh, chi, bgi] : {std::tuple{0.4, false, false}, {1.0, true, false}, {1.0, true, true}}) {
      auto other = gen_allmiss(small(rbh, chi, bgi), cfg);
      std::sort(other.begin(), other.end());
      CHECK(other == base);
    }
  }

  TEST_CASE("channel and bank-group interleaving") {
    const dram::DramConfig cfg;
    auto alternation = [](const std::vector<dram::DramCoord>& c, auto differs) {
      std::size_t n = 0;
      for (std::size_t k = 1; k < c.size(); ++k) n += differs(c[k - 1], c[k]);
      return static_cast<double>(n) / static_cast<double>(c.size() - 1);
    };
    const auto ch = [](const dram::DramCoord& a, const dram::DramCoord& b) { return a.channel != b.channel; };
    CHECK(alternation(coords(gen_allmiss(small(1, true, true), cfg)), ch) == 1.0);
    CHECK(alternation(coords(gen_allmiss(small(1, false, false), cfg)), ch) < 0.01);

    auto same_channel_bg_changes = [&](const PatternSpec& p) {
      const auto c = coords(gen_allmiss(p, cfg));
      std::vector<dram::DramCoord> ch0;
      std::copy_if(c.begin(), c.end(), std::back_inserter(ch0), [](auto& x) { return x.channel == 0; });
      return alternation(ch0, [](auto& a, auto& b) { return a.bank_group != b.bank_group; });
    };
    CHECK(same_channel_bg_changes(small(1, true, true)) == 1.0);
    CHECK(same_channel_bg_changes(small(1, true, false)) < 0.02);
  }

  TEST_CASE("generation is a pure function of the spec") {
    const dram::DramConfig cfg;
    CHECK(gen_allmiss(small(0.6, false, false), cfg) == gen_allmiss(small(0.6, false, false), cfg));
    PatternSpec other = small(0.6, false, false);
    other.seed = 2;
    CHECK(gen_allmiss(other, cfg) != gen_allmiss(small(0.6, false, false), cfg));
  }

  TEST_CASE("infeasible specs name the constraint") {
    const dram::DramConfig cfg;
    PatternSpec p = small(0.5, false, false);
    p.rbh_target = 1.5;
    CHECK_THROWS_AS(gen_allmiss(p, cfg), ConfigError);
    p = small(0.5, false, false);
    p.rows_per_bank = 0;
    CHECK_THROWS_AS(gen_allmiss(p, cfg), ConfigError);
  }

  TEST_CASE("generated programs validate and agree with their oracle") {
    SimConfig cfg;
    WorkloadSpec spec;
    spec.pattern.unique_indices = 16384;
    for (Kind k : kAllKinds) {
      CAPTURE(name(k));
      const auto wl = gen_program(k, spec, cfg);
      CHECK(isa::validate_program(wl.program).empty());
      CHECK_FALSE(wl.baseline.empty());
      CHECK(parse_kind(name(k)) == k);
    }
  }

  TEST_CASE("gather_full over identity indices copies A") {
    SimConfig cfg;
    WorkloadSpec spec;
    spec.pattern.unique_indices = 16384;
    auto wl = gen_program(Kind::GatherFull, spec, cfg);
    auto& b = *wl.image.find("B");
    for (std::uint64_t i = 0; i < b.length(); ++i) b.set(i, i);
    const auto out = oracle::oracle_run(wl.program, wl.image, cfg.maa);
    const auto& a = *out.memory.find("A");
    const auto& c = *out.memory.find("C");
    for (std::uint64_t i = 0; i < c.length(); i += 97) CHECK(c.get(i) == a.get(i));
  }

  TEST_CASE("rmw with one repeated index adds N times") {
    SimConfig cfg;
    WorkloadSpec spec;
    spec.pattern.unique_indices = 16384;
    auto wl = gen_program(Kind::Rmw, spec, cfg);
    auto& b = *wl.image.find("B");
    auto& c = *wl.image.find("C");
    for (std::uint64_t i = 0; i < b.length(); ++i) {
      b.set(i, 5);
      c.set(i, isa::from_float(1.0, c.dtype));
    }
    const double before = isa::as_float(wl.image.find("A")->get(5), isa::DType::F32);
    const auto out = oracle::oracle_run(wl.program, wl.image, cfg.maa);
    CHECK(isa::as_float(out.memory.find("A")->get(5), isa::DType::F32) ==
          before + static_cast<double>(b.length()));
    const auto timed = engine::run(wl.program, wl.image, cfg);
    CHECK(timed.memory == out.memory);
  }

  TEST_CASE("scatter with duplicates keeps the last write") {
    SimConfig cfg;
    WorkloadSpec spec;
    spec.pattern.unique_indices = 16384;
    auto wl = gen_program(Kind::Scatter, spec, cfg);
    auto& b = *wl.image.find("B");
    for (std::uint64_t i = 0; i < b.length(); ++i) b.set(i, i % 100);
    const auto out = oracle::oracle_run(wl.program, wl.image, cfg.maa);
    const auto& a = *out.memory.find("A");
    const auto& c = *wl.image.find("C");
    for (std::uint64_t k = 0; k < 100; ++k) {
      const std::uint64_t last = (b.length() - 1 - k) / 100 * 100 + k;
      CHECK(a.get(k) == c.get(last));
    }
    CHECK(engine::run(wl.program, wl.image, cfg).memory == out.memory);
  }
}
