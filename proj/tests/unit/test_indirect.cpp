#include <doctest.h>

#include <cmath>
#include <set>

#include "dxsim/dram/address_map.hpp"
#include "dxsim/indirect/row_table.hpp"
#include "helpers.hpp"

using namespace dxsim;
using namespace dxsim::indirect;
using dxsim::testing::events_of;
using dxsim::testing::run_text;

namespace {

const auto no_snoop = [] { return false; };

engine::RunResult run_with(const std::string& text,
                           const std::function<void(MemoryImage&)>& setup,
                           VectorTrace* trace = nullptr, const SimConfig& cfg = {}) {
  const isa::Program prog = frontend::parse_or_throw(text);
  MemoryImage img = MemoryImage::from_program(prog);
  setup(img);
  return engine::run(prog, img, cfg, trace);
}

// Index array B (u32) is filled by the caller; A is the target.
std::string single(const std::string& op, const std::string& a_decl, std::uint64_t n,
                   const std::string& extra = "") {
  return a_decl + "\narray B u32 " + std::to_string(n) + "\narray C i32 " + std::to_string(n) +
         "\n" + extra + "reg r0 = 0\nreg r1 = " + std::to_string(n) +
         "\nreg r2 = 1\nSLD u32 B -> t0, r0, r1, r2\nSLD i32 C -> t1, r0, r1, r2\n" + op +
         "\nWAIT t0\nWAIT t1\n";
}

}  // namespace

TEST_SUITE("indirect") {
  TEST_CASE("row table groups words by column and row") {
    RowTable rt(4, 64, 8, 64);
    for (std::uint32_t i = 0; i < 16; ++i) {
      const auto r = rt.insert(0, 9, 2, i, i, no_snoop);
      CHECK(r.status == RowTable::Status::Inserted);
      CHECK(r.new_column == (i == 0));
    }
    CHECK(rt.valid_rows(0) == 1);
    const auto cols = rt.drain_slice(0);
    REQUIRE(cols.size() == 1);
    const auto words = rt.respond(0, 9, 2);
    REQUIRE(words.size() == 16);
    for (std::uint32_t i = 0; i < 16; ++i) CHECK(words[i].iteration == i);
    CHECK(rt.empty());
  }

  TEST_CASE("duplicate index builds a linked list") {
    RowTable rt(1, 64, 8, 16);
    for (std::uint32_t i : {1u, 4u, 11u}) rt.insert(0, 0, 0, i, 3, no_snoop);
    const auto& col = rt.slice(0)[0].columns[0];
    CHECK(col.tail == 11);
    std::vector<std::int32_t> chain;
    for (std::int32_t k = col.tail; k >= 0; k = rt.word(static_cast<std::uint32_t>(k)).previous)
      chain.push_back(k);
    CHECK(chain == std::vector<std::int32_t>{11, 4, 1});
    rt.drain_slice(0);
    const auto words = rt.respond(0, 0, 0);
    REQUIRE(words.size() == 3);
    CHECK(words[0].iteration == 1);
    CHECK(words[2].iteration == 11);
  }

  TEST_CASE("snoop runs once per new column") {
    RowTable rt(1, 64, 8, 16);
    int calls = 0;
    const auto snoop = [&] {
      ++calls;
      return true;
    };
    CHECK(rt.insert(0, 0, 0, 0, 0, snoop).hit);
    CHECK(rt.insert(0, 0, 0, 1, 1, snoop).hit);
    rt.insert(0, 0, 1, 2, 0, snoop);
    CHECK(calls == 2);
  }

  TEST_CASE("capacity limits") {
    RowTable rt(1, 64, 8, 1024);
    std::uint32_t it = 0;
    for (std::uint32_t row = 0; row < 64; ++row)
      CHECK(rt.insert(0, row, 0, it++, 0, no_snoop).status == RowTable::Status::Inserted);
    CHECK(rt.insert(0, 64, 0, it++, 0, no_snoop).status == RowTable::Status::RowsFull);
    for (std::uint32_t c = 1; c < 8; ++c) rt.insert(0, 5, c, it++, 0, no_snoop);
    CHECK(rt.insert(0, 5, 8, it++, 0, no_snoop).status == RowTable::Status::ColumnsFull);
  }

  TEST_CASE("response without a sent column is a consistency error") {
    RowTable rt(1, 64, 8, 16);
    rt.insert(0, 0, 0, 0, 0, no_snoop);
    CHECK_THROWS_AS(rt.respond(0, 0, 0), ConsistencyError);
    CHECK_THROWS_AS(rt.respond(0, 3, 3), ConsistencyError);
  }

  TEST_CASE("one cacheline of indices is one request") {
    const auto r = run_with(single("ILD f32 A -> t2, t0", "array A f32 1024", 16), [](MemoryImage& m) {
      for (std::uint64_t i = 0; i < 16; ++i) m.at(1).set(i, i);
    });
    CHECK(r.stats.indirect_requests == 1);
  }

  TEST_CASE("coalescing counts unique lines") {
    const std::uint64_t n = 16384;
    for (std::uint64_t dup : {1, 2}) {
      CAPTURE(dup);
      const auto r = run_with(single("ILD f32 A -> t2, t0", "array A f32 " + std::to_string(n * 16), n),
                              [&](MemoryImage& m) {
                                for (std::uint64_t i = 0; i < n; ++i) m.at(1).set(i, (i / dup) * 16);
                              });
      CHECK(r.stats.indirect_requests == n / dup);
    }
  }

  TEST_CASE("capacity drain at the 65th row of a bank") {
    const dram::DramConfig dcfg;
    const std::uint64_t stripe_words = std::uint64_t{dcfg.total_banks()} * dcfg.columns_per_row *
                                       dcfg.cacheline_bytes / 4;
    const std::uint64_t rows = 65;
    VectorTrace trace;
    const auto r = run_with(single("ILD f32 A -> t2, t0", "array A f32 " + std::to_string(rows * stripe_words), rows),
                            [&](MemoryImage& m) {
                              for (std::uint64_t i = 0; i < rows; ++i) m.at(1).set(i, i * stripe_words);
                            },
                            &trace);
    const auto drains = events_of(trace.events, TraceKind::Drain, 2);
    REQUIRE_FALSE(drains.empty());
    CHECK(drains.front().reason == DrainReason::Capacity);
    CHECK(r.stats.capacity_drains == 1);
    std::uint64_t acts = 0;
    std::set<std::uint32_t> banks;
    for (const auto& e : events_of(trace.events, TraceKind::Command, 2))
      if (e.cmd == dram::Command::ACT) {
        ++acts;
        banks.insert(e.coord.channel * 100 + e.coord.bank_group * 10 + e.coord.bank);
      }
    CHECK(acts == rows);
    CHECK(banks.size() == 1);
  }

  TEST_CASE("requests alternate channels and bank groups") {
    VectorTrace trace;
    run_with(single("ILD f32 A -> t2, t0", "array A f32 1024", 8), [](MemoryImage& m) {
      for (std::uint64_t i = 0; i < 8; ++i) m.at(1).set(i, i * 16);
    }, &trace);
    const dram::AddressMapper mapper{dram::DramConfig{}};
    const auto reqs = events_of(trace.events, TraceKind::Request, 2);
    REQUIRE(reqs.size() == 8);
    std::set<std::uint32_t> groups;
    for (std::size_t k = 0; k < reqs.size(); ++k) {
      const auto c = mapper.map(reqs[k].line);
      CHECK(c.channel == k % 2);
      groups.insert(c.bank_group);
      if (k >= 2) CHECK(c.bank_group != mapper.map(reqs[k - 2].line).bank_group);
    }
    CHECK(groups.size() == 4);
  }

  TEST_CASE("ILD scatters words by iteration") {
    const auto r = run_with(single("ILD i32 A -> t2, t0", "array A i32 64\ninit A iota", 8),
                            [](MemoryImage& m) {
                              const std::uint64_t idx[] = {9, 1, 5, 9, 40, 3, 7, 1};
                              for (std::uint64_t i = 0; i < 8; ++i) m.at(1).set(i, idx[i]);
                            });
    CHECK(testing::tile_words(r.tiles, 2) == std::vector<isa::Word>{9, 1, 5, 9, 40, 3, 7, 1});
  }

  TEST_CASE("IRMW folds duplicates") {
    const auto r = run_with(single("IRMW i32 ADD A <- t0, t1", "array A i32 64", 2), [](MemoryImage& m) {
      m.at(0).set(4, 10);
      m.at(1).set(0, 4);
      m.at(1).set(1, 4);
      m.at(2).set(0, 2);
      m.at(2).set(1, 3);
    });
    CHECK(r.memory.at(0).get(4) == 15);
  }

  TEST_CASE("IST applies duplicates in iteration order") {
    const auto r = run_with(single("IST i32 A <- t0, t1", "array A i32 64", 10), [](MemoryImage& m) {
      for (std::uint64_t i = 0; i < 10; ++i) {
        m.at(1).set(i, i == 4 || i == 9 ? 6 : 20 + i);
        m.at(2).set(i, 100 + i);
      }
    });
    CHECK(r.memory.at(0).get(6) == 109);
    CHECK(r.memory.at(0).get(25) == 105);
  }

  TEST_CASE("all-false condition") {
    const std::string text = R"(
array A i32 64
array B u32 8
init A iota
init B iota
reg r0 = 0
reg r1 = 8
reg r2 = 1
reg r3 = 0
SLD u32 B -> t0, r0, r1, r2
ALUS u32 LT t1 <- t0, r3
ILD i32 A -> t2, t0 cond t1
WAIT t2
)";
    const auto run = run_text(text);
    CHECK(events_of(run.events, TraceKind::Fill, 2).empty());
    CHECK(run.result.stats.indirect_requests == 0);
    CHECK(testing::tile_words(run.result.tiles, 2) == std::vector<isa::Word>(8, 0));
    CHECK(run.result.tiles.tile(2).ready);
  }

  TEST_CASE("f64 IRMW ADD stays within reassociation tolerance") {
    const std::string f64 = "array A f64 64\narray B u32 512\narray C f64 512\nreg r0 = 0\nreg r1 = 512\n"
                            "reg r2 = 1\nSLD u32 B -> t0, r0, r1, r2\nSLD f64 C -> t1, r0, r1, r2\n"
                            "IRMW f64 ADD A <- t0, t1\nWAIT t0\nWAIT t1\n";
    const isa::Program prog = frontend::parse_or_throw(f64);
    MemoryImage img = MemoryImage::from_program(prog);
    for (std::uint64_t i = 0; i < 512; ++i) {
      img.at(1).set(i, i % 3);
      img.at(2).set(i, isa::from_float(1.0 / static_cast<double>(i + 1), isa::DType::F64));
    }
    const auto want = oracle::oracle_run(prog, img);
    const auto got = engine::run(prog, img, SimConfig{});
    for (std::uint64_t k = 0; k < 3; ++k) {
      const double w = isa::as_float(want.memory.at(0).get(k), isa::DType::F64);
      const double g = isa::as_float(got.memory.at(0).get(k), isa::DType::F64);
      CHECK(std::fabs(g - w) <= 1e-9 * std::fabs(w));
    }
  }
}
