#pragma once

#include <cstdint>
#include <vector>

#include "dxsim/isa/program.hpp"
#include "dxsim/memory_image.hpp"
#include "dxsim/sim_config.hpp"

namespace dxsim::oracle {

struct OracleTile {
  std::vector<isa::Word> elements;  // exactly `size` entries
  isa::DType dtype = isa::DType::U32;
  bool produced = false;
};

/// Element indices an indirect instruction touched (condition-true
/// iterations, in iteration order).
struct IndirectTouch {
  std::size_t instr = 0;
  isa::ArrayId array = 0;
  std::vector<std::uint64_t> indices;
};

struct OracleResult {
  MemoryImage memory;
  std::vector<OracleTile> tiles;
  std::vector<std::uint64_t> registers;
  std::vector<IndirectTouch> touches;
};

/// Executes the program as plain sequential loops, one instruction at a time.
/// Only the architectural limits of `maa` matter (tile count and size,
/// register count, RNG cursor register); timing fields are ignored.
OracleResult oracle_run(const isa::Program& prog, MemoryImage image, const MaaConfig& maa = {});

}  // namespace dxsim::oracle
