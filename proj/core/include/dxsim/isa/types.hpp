#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace dxsim::isa {

/// Raw element bits. 4-byte types occupy the low 32 bits.
using Word = std::uint64_t;

enum class DType : std::uint8_t { U32, I32, F32, U64, I64, F64 };

inline constexpr DType kAllDTypes[] = {DType::U32, DType::I32, DType::F32,
                                       DType::U64, DType::I64, DType::F64};

constexpr std::uint32_t width(DType t) {
  return (t == DType::U32 || t == DType::I32 || t == DType::F32) ? 4 : 8;
}
constexpr bool is_float(DType t) { return t == DType::F32 || t == DType::F64; }
constexpr bool is_integer(DType t) { return !is_float(t); }
constexpr bool is_signed(DType t) { return t == DType::I32 || t == DType::I64; }
constexpr Word width_mask(DType t) { return width(t) == 4 ? 0xFFFF'FFFFull : ~0ull; }

/// Unsigned integer type of the same width; the type of comparison results.
constexpr DType unsigned_of(DType t) { return width(t) == 4 ? DType::U32 : DType::U64; }

std::string_view name(DType t);
std::optional<DType> parse_dtype(std::string_view s);

enum class AluOp : std::uint8_t { ADD, SUB, MUL, MIN, MAX, AND, OR, XOR, SHR, SHL, LT, LE, GT, GE, EQ };

inline constexpr AluOp kAllAluOps[] = {AluOp::ADD, AluOp::SUB, AluOp::MUL, AluOp::MIN, AluOp::MAX,
                                       AluOp::AND, AluOp::OR,  AluOp::XOR, AluOp::SHR, AluOp::SHL,
                                       AluOp::LT,  AluOp::LE,  AluOp::GT,  AluOp::GE,  AluOp::EQ};

std::string_view name(AluOp op);
std::optional<AluOp> parse_alu_op(std::string_view s);

constexpr bool is_comparison(AluOp op) { return op >= AluOp::LT; }
constexpr bool is_bitwise(AluOp op) {
  return op == AluOp::AND || op == AluOp::OR || op == AluOp::XOR || op == AluOp::SHR ||
         op == AluOp::SHL;
}
/// Associative and commutative: the only operations IRMW accepts.
constexpr bool is_rmw_eligible(AluOp op) {
  return op == AluOp::ADD || op == AluOp::MIN || op == AluOp::MAX || op == AluOp::AND ||
         op == AluOp::OR || op == AluOp::XOR;
}
/// Bitwise and shift operations are undefined on floating-point types.
constexpr bool op_defined_for(AluOp op, DType t) { return !(is_bitwise(op) && is_float(t)); }

/// Result type of `op` applied to `t` operands.
constexpr DType result_dtype(AluOp op, DType t) { return is_comparison(op) ? unsigned_of(t) : t; }

enum class Opcode : std::uint8_t { ILD = 1, IST, IRMW, SLD, SST, ALUV, ALUS, RNG };

inline constexpr Opcode kAllOpcodes[] = {Opcode::ILD,  Opcode::IST,  Opcode::IRMW, Opcode::SLD,
                                         Opcode::SST,  Opcode::ALUV, Opcode::ALUS, Opcode::RNG};

std::string_view name(Opcode op);
std::optional<Opcode> parse_opcode(std::string_view s);

constexpr bool is_indirect(Opcode op) {
  return op == Opcode::ILD || op == Opcode::IST || op == Opcode::IRMW;
}
constexpr bool is_stream(Opcode op) { return op == Opcode::SLD || op == Opcode::SST; }
constexpr bool is_memory(Opcode op) { return is_indirect(op) || is_stream(op); }
constexpr bool writes_memory(Opcode op) {
  return op == Opcode::IST || op == Opcode::IRMW || op == Opcode::SST;
}

// Typed views of raw words.
std::int64_t as_int(Word w, DType t);
std::uint64_t as_uint(Word w, DType t);
double as_float(Word w, DType t);
Word from_int(std::int64_t v, DType t);
Word from_float(double v, DType t);
/// Condition words are true when any of their `width(t)` bytes is nonzero.
constexpr bool truthy(Word w, DType t) { return (w & width_mask(t)) != 0; }

}  // namespace dxsim::isa
