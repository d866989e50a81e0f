#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "dxsim/isa/instruction.hpp"

namespace dxsim::isa {

/// 192-bit instruction image, three little-endian 64-bit words.
///
///   word0  [7:0] opcode  [11:8] dtype  [19:12] op  [35:20] base   rest 0
///   word1  [7:0] td  [15:8] td2  [23:16] ts1  [31:24] ts2  [39:32] tc
///          [40] tc valid                                          rest 0
///   word2  [7:0] rs1  [15:8] rs2  [23:16] rs3                      rest 0
///
/// dtype codes follow DType order (u32=0 .. f64=5); op codes follow AluOp
/// order (ADD=0 .. EQ=14). Operands an opcode does not use are zero.
struct EncodedInstruction {
  std::array<std::uint64_t, 3> words{};
  friend bool operator==(const EncodedInstruction&, const EncodedInstruction&) = default;
};

/// Throws EncodeError for a malformed operand set.
EncodedInstruction encode(const Instruction& i);

/// Throws DecodeError on a short input, unknown opcode/dtype/op codes, or
/// nonzero bits in unused fields.
Instruction decode(std::span<const std::uint64_t> words);
inline Instruction decode(const EncodedInstruction& e) { return decode(std::span(e.words)); }

}  // namespace dxsim::isa
