#include "dxsim/isa/types.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

namespace dxsim::isa {

namespace {
constexpr std::string_view kDTypeNames[] = {"u32", "i32", "f32", "u64", "i64", "f64"};
constexpr std::string_view kOpNames[] = {"ADD", "SUB", "MUL", "MIN", "MAX", "AND", "OR", "XOR",
                                         "SHR", "SHL", "LT",  "LE",  "GT",  "GE",  "EQ"};
constexpr std::string_view kOpcodeNames[] = {"ILD", "IST", "IRMW", "SLD",
                                             "SST", "ALUV", "ALUS", "RNG"};
}  // namespace

std::string_view name(DType t) { return kDTypeNames[static_cast<std::size_t>(t)]; }

std::optional<DType> parse_dtype(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kDTypeNames); ++i)
    if (s == kDTypeNames[i]) return static_cast<DType>(i);
  return std::nullopt;
}

std::string_view name(AluOp op) { return kOpNames[static_cast<std::size_t>(op)]; }

std::optional<AluOp> parse_alu_op(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kOpNames); ++i)
    if (s == kOpNames[i]) return static_cast<AluOp>(i);
  return std::nullopt;
}

std::string_view name(Opcode op) { return kOpcodeNames[static_cast<std::size_t>(op) - 1]; }

std::optional<Opcode> parse_opcode(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kOpcodeNames); ++i)
    if (s == kOpcodeNames[i]) return static_cast<Opcode>(i + 1);
  return std::nullopt;
}

std::int64_t as_int(Word w, DType t) {
  switch (t) {
    case DType::U32: return static_cast<std::int64_t>(w & 0xFFFF'FFFFull);
    case DType::I32: return static_cast<std::int32_t>(static_cast<std::uint32_t>(w));
    case DType::U64:
    case DType::I64: return static_cast<std::int64_t>(w);
    case DType::F32:
    case DType::F64: return static_cast<std::int64_t>(as_float(w, t));
  }
  return 0;
}

std::uint64_t as_uint(Word w, DType t) { return w & width_mask(t); }

double as_float(Word w, DType t) {
  switch (t) {
    case DType::F32: return std::bit_cast<float>(static_cast<std::uint32_t>(w));
    case DType::F64: return std::bit_cast<double>(w);
    default: return static_cast<double>(as_int(w, t));
  }
}

Word from_int(std::int64_t v, DType t) {
  switch (t) {
    case DType::F32:
    case DType::F64: return from_float(static_cast<double>(v), t);
    default: return static_cast<Word>(v) & width_mask(t);
  }
}

Word from_float(double v, DType t) {
  if (std::isnan(v)) v = std::numeric_limits<double>::quiet_NaN();
  switch (t) {
    case DType::F32: return std::bit_cast<std::uint32_t>(static_cast<float>(v));
    case DType::F64: return std::bit_cast<std::uint64_t>(v);
    default: return from_int(static_cast<std::int64_t>(v), t);
  }
}

}  // namespace dxsim::isa
