#include <doctest.h>

#include <cstring>

#include "dxsim/scratchpad/scratchpad.hpp"
#include "helpers.hpp"

using namespace dxsim;
using namespace dxsim::spd;
using dxsim::testing::events_of;
using dxsim::testing::run_text;

TEST_SUITE("scratchpad") {
  TEST_CASE("write then read") {
    Scratchpad spd(4, 16);
    CHECK_FALSE(spd.finished(2, 5));
    spd.write_word(2, 5, 0xABCD);
    CHECK(spd.finished(2, 5));
    CHECK(spd.read_word(2, 5) == 0xABCD);
    CHECK(spd.core_read(2, 5) == 0xABCD);
  }

  TEST_CASE("core read of an unfinished element is a deadlock") {
    Scratchpad spd(2, 8);
    CHECK_THROWS_AS(spd.core_read(1, 3), DeadlockError);
  }

  TEST_CASE("dispatch and retire marks") {
    Scratchpad spd(4, 8);
    for (TileId t = 0; t < 4; ++t) {
      spd.tile(t).ready = true;
      for (std::uint32_t i = 0; i < 8; ++i) spd.write_word(t, i, i);
    }
    isa::Instruction ild{isa::Opcode::ILD};
    ild.dtype = isa::DType::F32;
    ild.base = 0;
    ild.td = 1;
    ild.ts1 = 0;
    spd.dispatch_mark(ild);
    CHECK_FALSE(spd.tile(0).ready);
    CHECK_FALSE(spd.tile(1).ready);
    CHECK(spd.tile(2).ready);
    CHECK(spd.finished(0, 3));
    for (std::uint32_t i = 0; i < 8; ++i) CHECK_FALSE(spd.finished(1, i));

    const TileId retired[] = {0, 1};
    spd.retire_mark(retired);
    CHECK(spd.tile(0).ready);
    CHECK(spd.tile(1).ready);
  }

  TEST_CASE("register file") {
    RegisterFile r;
    CHECK(r.size() == 32);
    r.write(31, ~0ull);
    CHECK(r.read(31) == ~0ull);
    CHECK_THROWS(r.read(32));
  }

  TEST_CASE("tile dump layout") {
    Scratchpad spd(2, 4);
    spd.tile(1).size = 2;
    spd.tile(1).ready = true;
    spd.tile(1).dtype = isa::DType::I64;
    spd.write_word(1, 0, 7);
    spd.write_word(1, 1, 0x0102030405060708ull);
    const auto bytes = spd.dump();
    REQUIRE(bytes.size() == 16 + 8 + 8 + 2 * 8);
    CHECK(std::memcmp(bytes.data(), "DXTL", 4) == 0);
    CHECK(bytes[4] == 1);
    CHECK(bytes[8] == 2);
    CHECK(bytes[12] == 4);
    CHECK(bytes[24] == 2);
    CHECK(bytes[28] == 1);
    CHECK(bytes[29] == static_cast<std::uint8_t>(isa::DType::I64));
    CHECK(bytes[32] == 7);
    CHECK(bytes[40] == 0x08);
    CHECK(bytes[47] == 0x01);
  }

  TEST_CASE("sizes propagate and tiles end ready") {
    const auto run = run_text(R"(
array A f32 4096
array B u32 300
init A iota
init B iota
reg r0 = 0
reg r1 = 300
reg r2 = 1
SLD u32 B -> t0, r0, r1, r2
ILD f32 A -> t1, t0
ALUS f32 ADD t2 <- t1, r2
WAIT t2
)");
    const auto& spd = run.result.tiles;
    CHECK(spd.tile(0).size == 300);
    CHECK(spd.tile(1).size == 300);
    CHECK(spd.tile(2).size == 300);
    for (TileId t : {0, 1, 2}) CHECK(spd.tile(t).ready);
  }

  TEST_CASE("indirect fill starts before the index load retires") {
    const auto run = run_text(R"(
array A f32 65536
array B u32 8192
init B iota
reg r0 = 0
reg r1 = 8192
reg r2 = 1
SLD u32 B -> t0, r0, r1, r2
ILD f32 A -> t1, t0
WAIT t1
)");
    const auto fills = events_of(run.events, TraceKind::Fill, 1);
    const auto sld_retire = events_of(run.events, TraceKind::Retire, 0);
    REQUIRE_FALSE(fills.empty());
    REQUIRE(sld_retire.size() == 1);
    CHECK(fills.front().time < sld_retire.front().time);
  }
}
