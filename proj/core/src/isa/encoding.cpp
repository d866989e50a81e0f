#include "dxsim/isa/encoding.hpp"

#include "dxsim/common.hpp"

namespace dxsim::isa {

namespace {

//                                dtype   op     base   td     td2    ts1    ts2    rs1    rs2    rs3
constexpr OperandRules kILD{true, false, true, true, false, true, false, false, false, false};
constexpr OperandRules kIST{true, false, true, false, false, true, true, false, false, false};
constexpr OperandRules kIRMW{true, true, true, false, false, true, true, false, false, false};
constexpr OperandRules kSLD{true, false, true, true, false, false, false, true, true, true};
constexpr OperandRules kSST{true, false, true, false, false, true, false, true, true, true};
constexpr OperandRules kALUV{true, true, false, true, false, true, true, false, false, false};
constexpr OperandRules kALUS{true, true, false, true, false, true, false, true, false, false};
constexpr OperandRules kRNG{false, false, false, true, true, true, true, true, false, false};

constexpr std::uint64_t kTcValid = 1ull << 40;

template <typename T>
void check(std::vector<std::string>& out, bool required, const std::optional<T>& v,
           const char* label) {
  if (required && !v) out.push_back(std::string("missing ") + label);
  if (!required && v) out.push_back(std::string("unexpected ") + label);
}

std::uint64_t field(std::uint64_t word, unsigned lo, unsigned bits) {
  return (word >> lo) & ((1ull << bits) - 1);
}

}  // namespace

const OperandRules& operand_rules(Opcode op) {
  switch (op) {
    case Opcode::ILD: return kILD;
    case Opcode::IST: return kIST;
    case Opcode::IRMW: return kIRMW;
    case Opcode::SLD: return kSLD;
    case Opcode::SST: return kSST;
    case Opcode::ALUV: return kALUV;
    case Opcode::ALUS: return kALUS;
    case Opcode::RNG: return kRNG;
  }
  throw EncodeError("unknown opcode");
}

std::vector<std::string> operand_problems(const Instruction& i) {
  std::vector<std::string> out;
  const OperandRules& r = operand_rules(i.opcode);
  check(out, r.dtype, i.dtype, "dtype");
  check(out, r.op, i.op, "op");
  check(out, r.base, i.base, "base");
  check(out, r.td, i.td, "td");
  check(out, r.td2, i.td2, "td2");
  check(out, r.ts1, i.ts1, "ts1");
  check(out, r.ts2, i.ts2, "ts2");
  check(out, r.rs1, i.rs1, "rs1");
  check(out, r.rs2, i.rs2, "rs2");
  check(out, r.rs3, i.rs3, "rs3");
  return out;
}

void check_well_formed(const Instruction& i) {
  const auto problems = operand_problems(i);
  if (!problems.empty())
    throw EncodeError(std::string(name(i.opcode)) + ": " + problems.front());
  if (i.opcode == Opcode::IRMW && !is_rmw_eligible(*i.op))
    throw EncodeError("IRMW: op " + std::string(name(*i.op)) +
                      " is not associative and commutative");
}

std::vector<TileId> destination_tiles(const Instruction& i) {
  std::vector<TileId> out;
  if (i.td) out.push_back(*i.td);
  if (i.td2) out.push_back(*i.td2);
  return out;
}

std::vector<TileId> source_tiles(const Instruction& i) {
  std::vector<TileId> out;
  if (i.ts1) out.push_back(*i.ts1);
  if (i.ts2) out.push_back(*i.ts2);
  if (i.tc) out.push_back(*i.tc);
  return out;
}

std::vector<RegId> source_registers(const Instruction& i) {
  std::vector<RegId> out;
  if (i.rs1) out.push_back(*i.rs1);
  if (i.rs2) out.push_back(*i.rs2);
  if (i.rs3) out.push_back(*i.rs3);
  return out;
}

EncodedInstruction encode(const Instruction& i) {
  check_well_formed(i);
  EncodedInstruction e;
  auto& [w0, w1, w2] = e.words;
  w0 = static_cast<std::uint64_t>(i.opcode);
  if (i.dtype) w0 |= std::uint64_t{static_cast<std::uint8_t>(*i.dtype)} << 8;
  if (i.op) w0 |= std::uint64_t{static_cast<std::uint8_t>(*i.op)} << 12;
  if (i.base) w0 |= std::uint64_t{*i.base} << 20;

  w1 = std::uint64_t{i.td.value_or(0)} | std::uint64_t{i.td2.value_or(0)} << 8 |
       std::uint64_t{i.ts1.value_or(0)} << 16 | std::uint64_t{i.ts2.value_or(0)} << 24;
  if (i.tc) w1 |= std::uint64_t{*i.tc} << 32 | kTcValid;

  w2 = std::uint64_t{i.rs1.value_or(0)} | std::uint64_t{i.rs2.value_or(0)} << 8 |
       std::uint64_t{i.rs3.value_or(0)} << 16;
  return e;
}

Instruction decode(std::span<const std::uint64_t> words) {
  if (words.size() != 3)
    throw DecodeError("instruction needs 3 words, got " + std::to_string(words.size()));
  const std::uint64_t w0 = words[0], w1 = words[1], w2 = words[2];

  const auto opcode_bits = field(w0, 0, 8);
  if (opcode_bits < 1 || opcode_bits > 8)
    throw DecodeError("unknown opcode byte " + std::to_string(opcode_bits));
  Instruction i;
  i.opcode = static_cast<Opcode>(opcode_bits);
  const OperandRules& r = operand_rules(i.opcode);

  if (w0 >> 36) throw DecodeError("reserved bits set in word 0");
  if (w1 >> 41) throw DecodeError("reserved bits set in word 1");
  if (w2 >> 24) throw DecodeError("reserved bits set in word 2");

  auto unused_zero = [](bool required, std::uint64_t bits, const char* label) {
    if (!required && bits != 0)
      throw DecodeError(std::string("nonzero unused field ") + label);
  };

  const auto dtype_bits = field(w0, 8, 4);
  unused_zero(r.dtype, dtype_bits, "dtype");
  if (r.dtype) {
    if (dtype_bits > 5) throw DecodeError("unknown dtype nibble " + std::to_string(dtype_bits));
    i.dtype = static_cast<DType>(dtype_bits);
  }
  const auto op_bits = field(w0, 12, 8);
  unused_zero(r.op, op_bits, "op");
  if (r.op) {
    if (op_bits > 14) throw DecodeError("unknown op code " + std::to_string(op_bits));
    i.op = static_cast<AluOp>(op_bits);
  }
  const auto base_bits = field(w0, 20, 16);
  unused_zero(r.base, base_bits, "base");
  if (r.base) i.base = static_cast<ArrayId>(base_bits);

  auto tile = [&](bool required, unsigned lo, const char* label, std::optional<TileId>& out) {
    const auto bits = field(w1, lo, 8);
    unused_zero(required, bits, label);
    if (required) out = static_cast<TileId>(bits);
  };
  tile(r.td, 0, "td", i.td);
  tile(r.td2, 8, "td2", i.td2);
  tile(r.ts1, 16, "ts1", i.ts1);
  tile(r.ts2, 24, "ts2", i.ts2);
  if (w1 & kTcValid)
    i.tc = static_cast<TileId>(field(w1, 32, 8));
  else if (field(w1, 32, 8) != 0)
    throw DecodeError("condition tile set without valid bit");

  auto reg = [&](bool required, unsigned lo, const char* label, std::optional<RegId>& out) {
    const auto bits = field(w2, lo, 8);
    unused_zero(required, bits, label);
    if (required) out = static_cast<RegId>(bits);
  };
  reg(r.rs1, 0, "rs1", i.rs1);
  reg(r.rs2, 8, "rs2", i.rs2);
  reg(r.rs3, 16, "rs3", i.rs3);

  if (i.opcode == Opcode::IRMW && !is_rmw_eligible(*i.op))
    throw DecodeError("IRMW with non-RMW op " + std::string(name(*i.op)));
  return i;
}

}  // namespace dxsim::isa
