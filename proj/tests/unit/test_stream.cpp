#include <doctest.h>

#include "helpers.hpp"

using namespace dxsim;
using dxsim::testing::events_of;
using dxsim::testing::run_text;
using dxsim::testing::tile_words;

namespace {

std::string sld(const std::string& decl, const std::string& dtype, int lo, int hi, int stride,
                const std::string& extra = "") {
  return decl + "\nreg r0 = " + std::to_string(lo) + "\nreg r1 = " + std::to_string(hi) +
         "\nreg r2 = " + std::to_string(stride) + "\n" + extra + "SLD " + dtype +
         " A -> t0, r0, r1, r2\nWAIT t0\n";
}

}  // namespace

TEST_SUITE("stream") {
  TEST_CASE("sixteen contiguous f32 words are one line") {
    const auto run = run_text(sld("array A f32 64\ninit A iota", "f32", 0, 16, 1));
    CHECK(run.result.stats.stream_requests == 1);
    CHECK(run.result.tiles.tile(0).size == 16);
  }

  TEST_CASE("a one-line stride touches one line per iteration") {
    const auto run = run_text(sld("array A u32 4096\ninit A iota", "u32", 0, 1024, 16));
    CHECK(run.result.stats.stream_requests == 64);
    std::vector<isa::Word> want;
    for (isa::Word v = 0; v < 1024; v += 16) want.push_back(v);
    CHECK(tile_words(run.result.tiles, 0) == want);
  }

  TEST_CASE("condition skips odd iterations") {
    const std::string text = R"(
array A u64 64
array M u32 64
init A iota
reg r0 = 0
reg r1 = 64
reg r2 = 1
reg r3 = 1
SLD u32 M -> t1, r0, r1, r2
SLD u64 A -> t0, r0, r1, r2 cond t1
WAIT t0
)";
    const isa::Program prog = frontend::parse_or_throw(text);
    MemoryImage img = MemoryImage::from_program(prog);
    for (std::uint64_t i = 0; i < 64; ++i) img.at(1).set(i, i % 2 == 0);
    const auto r = engine::run(prog, img, SimConfig{});
    const auto words = tile_words(r.tiles, 0);
    REQUIRE(words.size() == 64);
    for (std::uint64_t i = 0; i < 64; ++i) CHECK(words[i] == (i % 2 == 0 ? i : 0));
  }

  TEST_CASE("SST writes back through the LLC") {
    const std::string text = R"(
array A i64 256
array B i64 256
init A iota
reg r0 = 0
reg r1 = 256
reg r2 = 1
SLD i64 A -> t0, r0, r1, r2
SST i64 B <- t0, r0, r1, r2
WAIT t0
)";
    const auto run = run_text(text);
    for (std::uint64_t i = 0; i < 256; ++i) CHECK(run.result.memory.at(1).get(i) == i);
    const auto& s = run.result.stats;
    CHECK(s.stream_requests == 64);
    CHECK(s.direct_dram == 0);
    CHECK(s.llc_hits + s.llc_misses == s.stream_requests);
  }

  TEST_CASE("too many iterations is a dispatch error") {
    SimConfig cfg;
    cfg.maa.tile_size = 64;
    CHECK_THROWS_AS(run_text(sld("array A f32 256", "f32", 0, 65, 1), cfg), DispatchError);
    CHECK_NOTHROW(run_text(sld("array A f32 256", "f32", 0, 64, 1), cfg));
  }

  TEST_CASE("request table bounds outstanding lines") {
    SimConfig cfg;
    cfg.maa.request_table_size = 4;
    const auto run = run_text(sld("array A u32 16384\ninit A iota", "u32", 0, 16384, 1), cfg);
    CHECK(run.result.stats.stream_stalls > 0);
    CHECK(tile_words(run.result.tiles, 0).back() == 16383);
  }

  TEST_CASE("results match the oracle for every dtype") {
    for (const char* t : {"u32", "i32", "f32", "u64", "i64", "f64"}) {
      CAPTURE(t);
      const std::string text = sld(std::string("array A ") + t + " 5000\ninit A iota", t, 7, 4999, 3);
      const auto want = testing::oracle_text(text);
      CHECK(tile_words(run_text(text).result.tiles, 0) == want.tiles[0].elements);
    }
  }
}
