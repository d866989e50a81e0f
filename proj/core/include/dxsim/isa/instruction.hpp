#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dxsim/isa/types.hpp"

namespace dxsim::isa {

using TileId = std::uint8_t;
using RegId = std::uint8_t;
using ArrayId = std::uint16_t;

/// One accelerator instruction. Operand presence per opcode:
///
///   ILD   dtype base td  ts1          [tc]
///   IST   dtype base ts1 ts2          [tc]
///   IRMW  dtype base op  ts1 ts2      [tc]
///   SLD   dtype base td  rs1 rs2 rs3  [tc]
///   SST   dtype base ts1 rs1 rs2 rs3  [tc]   (ts1 is the value tile)
///   ALUV  dtype op   td  ts1 ts2      [tc]
///   ALUS  dtype op   td  ts1 rs1      [tc]
///   RNG   td  td2 ts1 ts2 rs1         [tc]   (outer, inner <- min, max, stride)
struct Instruction {
  Opcode opcode = Opcode::ILD;
  std::optional<DType> dtype;
  std::optional<AluOp> op;
  std::optional<ArrayId> base;
  std::optional<TileId> td, td2, ts1, ts2, tc;
  std::optional<RegId> rs1, rs2, rs3;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Required operands per opcode. Operands not required are forbidden, except
/// the condition tile, which is always optional.
struct OperandRules {
  bool dtype, op, base, td, td2, ts1, ts2, rs1, rs2, rs3;
};

const OperandRules& operand_rules(Opcode op);

/// Names of operands that are missing or present against the rules, formatted
/// as "missing ts2" / "unexpected rs1". Empty when well-formed.
std::vector<std::string> operand_problems(const Instruction& i);

/// Throws EncodeError naming the first operand problem, or when IRMW carries a
/// non-associative op.
void check_well_formed(const Instruction& i);

/// Tiles written by the instruction.
std::vector<TileId> destination_tiles(const Instruction& i);
/// Tiles read by the instruction, including the condition tile.
std::vector<TileId> source_tiles(const Instruction& i);
std::vector<RegId> source_registers(const Instruction& i);

}  // namespace dxsim::isa
