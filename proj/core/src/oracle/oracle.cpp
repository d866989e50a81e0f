#include "dxsim/oracle/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <type_traits>

namespace dxsim::oracle {

using isa::AluOp;
using isa::DType;
using isa::Instruction;
using isa::Opcode;
using isa::Word;

namespace {

template <typename T>
Word pack(T v) {
  if constexpr (sizeof(T) == 4)
    return std::bit_cast<std::uint32_t>(v);
  else
    return std::bit_cast<std::uint64_t>(v);
}

template <typename T>
T unpack(Word w) {
  if constexpr (sizeof(T) == 4)
    return std::bit_cast<T>(static_cast<std::uint32_t>(w));
  else
    return std::bit_cast<T>(w);
}

template <typename T>
Word apply_typed(AluOp op, Word wa, Word wb) {
  const T a = unpack<T>(wa);
  const T b = unpack<T>(wb);
  switch (op) {
    case AluOp::LT: return a < b ? 1 : 0;
    case AluOp::LE: return a <= b ? 1 : 0;
    case AluOp::GT: return a > b ? 1 : 0;
    case AluOp::GE: return a >= b ? 1 : 0;
    case AluOp::EQ: return a == b ? 1 : 0;
    case AluOp::MIN: return pack<T>(std::min(a, b));
    case AluOp::MAX: return pack<T>(std::max(a, b));
    default: break;
  }
  if constexpr (std::is_floating_point_v<T>) {
    auto arith = [](T r) { return pack<T>(r != r ? std::numeric_limits<T>::quiet_NaN() : r); };
    switch (op) {
      case AluOp::ADD: return arith(a + b);
      case AluOp::SUB: return arith(a - b);
      case AluOp::MUL: return arith(a * b);
      default: throw DispatchError("operation undefined for floating-point operands");
    }
  } else {
    using U = std::make_unsigned_t<T>;
    const U ua = static_cast<U>(a);
    const U ub = static_cast<U>(b);
    const unsigned sh = static_cast<unsigned>(ub & (sizeof(T) * 8 - 1));
    switch (op) {
      case AluOp::ADD: return pack<T>(static_cast<T>(static_cast<U>(ua + ub)));
      case AluOp::SUB: return pack<T>(static_cast<T>(static_cast<U>(ua - ub)));
      case AluOp::MUL: return pack<T>(static_cast<T>(static_cast<U>(ua * ub)));
      case AluOp::AND: return pack<T>(static_cast<T>(ua & ub));
      case AluOp::OR: return pack<T>(static_cast<T>(ua | ub));
      case AluOp::XOR: return pack<T>(static_cast<T>(ua ^ ub));
      case AluOp::SHL: return pack<T>(static_cast<T>(static_cast<U>(ua << sh)));
      case AluOp::SHR: return pack<T>(static_cast<T>(a >> sh));
      default: break;
    }
  }
  return 0;
}

Word apply(AluOp op, DType t, Word a, Word b) {
  switch (t) {
    case DType::U32: return apply_typed<std::uint32_t>(op, a, b);
    case DType::I32: return apply_typed<std::int32_t>(op, a, b);
    case DType::F32: return apply_typed<float>(op, a, b);
    case DType::U64: return apply_typed<std::uint64_t>(op, a, b);
    case DType::I64: return apply_typed<std::int64_t>(op, a, b);
    case DType::F64: return apply_typed<double>(op, a, b);
  }
  return 0;
}

bool nonzero(Word w, DType t) {
  return isa::width(t) == 4 ? static_cast<std::uint32_t>(w) != 0 : w != 0;
}

std::int64_t signed_value(Word w, DType t) {
  switch (t) {
    case DType::I32: return unpack<std::int32_t>(w);
    case DType::I64: return unpack<std::int64_t>(w);
    case DType::U32: return unpack<std::uint32_t>(w);
    default: return static_cast<std::int64_t>(w);
  }
}

class Machine {
 public:
  Machine(MemoryImage image, const MaaConfig& maa)
      : maa_(maa), tiles_(maa.tiles), regs_(maa.registers, 0) {
    result_memory_ = std::move(image);
  }

  OracleResult finish() {
    return {std::move(result_memory_), std::move(tiles_), regs_, std::move(touches_)};
  }

  void exec(const isa::Step& s) {
    if (auto* r = std::get_if<isa::SetReg>(&s)) {
      regs_.at(r->reg) = static_cast<std::uint64_t>(r->value);
    } else if (auto* in = std::get_if<Instruction>(&s)) {
      exec(*in);
      ++seq_;
    }
  }

 private:
  [[noreturn]] void fail(const Instruction& in, const std::string& why) const {
    throw DispatchError("instruction " + std::to_string(seq_) + " (" +
                        std::string(isa::name(in.opcode)) + "): " + why);
  }

  [[noreturn]] void out_of_bounds(const Instruction& in, std::size_t i, const std::string& idx,
                                  const ArrayData& a) const {
    throw BoundsError("instruction " + std::to_string(seq_) + " (" +
                      std::string(isa::name(in.opcode)) + ") iteration " + std::to_string(i) +
                      ": index " + idx + " out of bounds for array '" + a.name +
                      "' of length " + std::to_string(a.length()));
  }

  std::size_t sz(isa::TileId t) const { return tiles_.at(t).elements.size(); }

  std::vector<bool> condition(const Instruction& in, std::size_t n) {
    std::vector<bool> c(n, true);
    if (!in.tc) return c;
    const OracleTile& t = tiles_.at(*in.tc);
    if (t.elements.size() < n) fail(in, "condition tile shorter than the operation");
    for (std::size_t i = 0; i < n; ++i) c[i] = nonzero(t.elements[i], t.dtype);
    return c;
  }

  void produce(isa::TileId t, std::vector<Word> v, DType dt) {
    tiles_.at(t) = OracleTile{std::move(v), dt, true};
  }

  std::uint64_t index_at(const Instruction& in, std::size_t i, const ArrayData& a) {
    const OracleTile& t = tiles_.at(*in.ts1);
    const Word w = t.elements[i];
    const std::int64_t s = signed_value(w, t.dtype);
    if (isa::is_signed(t.dtype) && s < 0) out_of_bounds(in, i, std::to_string(s), a);
    const std::uint64_t u = isa::width(t.dtype) == 4 ? static_cast<std::uint32_t>(w) : w;
    if (u >= a.length()) out_of_bounds(in, i, std::to_string(u), a);
    return u;
  }

  void exec(const Instruction& in) {
    const auto srcs = isa::source_tiles(in);
    for (isa::TileId t : isa::destination_tiles(in))
      if (std::find(srcs.begin(), srcs.end(), t) != srcs.end())
        fail(in, "destination t" + std::to_string(t) + " is also a source");
    switch (in.opcode) {
      case Opcode::ILD:
      case Opcode::IST:
      case Opcode::IRMW: indirect(in); break;
      case Opcode::SLD:
      case Opcode::SST: stream(in); break;
      case Opcode::ALUV:
      case Opcode::ALUS: alu(in); break;
      case Opcode::RNG: rng(in); break;
    }
  }

  void indirect(const Instruction& in) {
    ArrayData& a = result_memory_.at(*in.base);
    const std::size_t n = sz(*in.ts1);
    if (n && isa::is_float(tiles_.at(*in.ts1).dtype)) fail(in, "index tile holds floats");
    if (in.ts2 && sz(*in.ts2) < n) fail(in, "value tile shorter than index tile");
    const auto cond = condition(in, n);
    IndirectTouch& touch = touches_.emplace_back(IndirectTouch{seq_, *in.base, {}});
    if (in.opcode == Opcode::ILD) {
      std::vector<Word> out(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (!cond[i]) continue;
        const std::uint64_t k = index_at(in, i, a);
        touch.indices.push_back(k);
        out[i] = a.get(k);
      }
      produce(*in.td, std::move(out), *in.dtype);
      return;
    }
    const std::vector<Word> vals = tiles_.at(*in.ts2).elements;
    for (std::size_t i = 0; i < n; ++i) {
      if (!cond[i]) continue;
      const std::uint64_t k = index_at(in, i, a);
      touch.indices.push_back(k);
      a.set(k, in.opcode == Opcode::IST ? vals[i] : apply(*in.op, *in.dtype, a.get(k), vals[i]));
    }
  }

  void stream(const Instruction& in) {
    ArrayData& a = result_memory_.at(*in.base);
    const auto lo = static_cast<std::int64_t>(regs_.at(*in.rs1));
    const auto hi = static_cast<std::int64_t>(regs_.at(*in.rs2));
    const auto stride = static_cast<std::int64_t>(regs_.at(*in.rs3));
    if (stride < 1) throw DispatchError("stream stride must be >= 1, got " + std::to_string(stride));
    std::size_t n = 0;
    for (std::int64_t e = lo; e < hi; e += stride) ++n;
    if (n > maa_.tile_size) fail(in, std::to_string(n) + " iterations exceed the tile size");
    if (in.opcode == Opcode::SST && sz(*in.ts1) < n) fail(in, "value tile shorter than the loop");
    const auto cond = condition(in, n);
    std::vector<Word> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!cond[i]) continue;
      const std::int64_t e = lo + static_cast<std::int64_t>(i) * stride;
      if (e < 0 || static_cast<std::uint64_t>(e) >= a.length())
        out_of_bounds(in, i, std::to_string(e), a);
      if (in.opcode == Opcode::SLD)
        out[i] = a.get(static_cast<std::uint64_t>(e));
      else
        a.set(static_cast<std::uint64_t>(e), tiles_.at(*in.ts1).elements[i]);
    }
    if (in.opcode == Opcode::SLD) produce(*in.td, std::move(out), *in.dtype);
  }

  void alu(const Instruction& in) {
    const bool vec = in.opcode == Opcode::ALUV;
    const std::size_t n = sz(*in.ts1);
    if (vec && sz(*in.ts2) != n) fail(in, "source tiles differ in size");
    if (!isa::op_defined_for(*in.op, *in.dtype)) fail(in, "operation undefined for dtype");
    const auto cond = condition(in, n);
    const std::vector<Word>& x = tiles_.at(*in.ts1).elements;
    std::vector<Word> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!cond[i]) continue;
      const Word b = vec ? tiles_.at(*in.ts2).elements[i] : regs_.at(*in.rs1);
      out[i] = apply(*in.op, *in.dtype, x[i], b);
    }
    produce(*in.td, std::move(out), isa::result_dtype(*in.op, *in.dtype));
  }

  void rng(const Instruction& in) {
    const OracleTile& lo_t = tiles_.at(*in.ts1);
    const OracleTile& hi_t = tiles_.at(*in.ts2);
    const std::size_t n = lo_t.elements.size();
    if (hi_t.elements.size() != n) fail(in, "range tiles differ in size");
    const auto stride = static_cast<std::int64_t>(regs_.at(*in.rs1));
    if (stride < 1) fail(in, "stride must be >= 1");
    if (n && (isa::is_float(lo_t.dtype) || isa::is_float(hi_t.dtype)))
      fail(in, "range tiles must hold integers");
    const auto cond = condition(in, n);
    const std::size_t c = maa_.rng_cursor_reg;
    std::uint64_t skip_i = regs_.at(c);
    std::uint64_t skip_k = regs_.at(c + 1);

    std::vector<Word> outer, inner;
    std::uint64_t resume_i = 0, resume_k = 0;
    bool truncated = false;
    for (std::size_t i = skip_i; i < n && !truncated; ++i) {
      if (!cond[i]) continue;
      const std::int64_t lo = signed_value(lo_t.elements[i], lo_t.dtype);
      const std::int64_t hi = signed_value(hi_t.elements[i], hi_t.dtype);
      std::uint64_t k = 0;
      for (std::int64_t j = lo; j < hi; j += stride, ++k) {
        if (i == skip_i && k < skip_k) continue;
        if (outer.size() == maa_.tile_size) {
          truncated = true;
          resume_i = i;
          resume_k = k;
          break;
        }
        outer.push_back(static_cast<std::uint32_t>(i));
        inner.push_back(isa::from_int(j, lo_t.dtype));
      }
    }
    const DType inner_t = lo_t.dtype;
    produce(*in.td, std::move(outer), DType::U32);
    produce(*in.td2, std::move(inner), inner_t);
    regs_.at(c) = resume_i;
    regs_.at(c + 1) = resume_k;
  }

  const MaaConfig& maa_;
  MemoryImage result_memory_;
  std::vector<OracleTile> tiles_;
  std::vector<std::uint64_t> regs_;
  std::vector<IndirectTouch> touches_;
  std::size_t seq_ = 0;
};

}  // namespace

OracleResult oracle_run(const isa::Program& prog, MemoryImage image, const MaaConfig& maa) {
  if (image.size() != prog.arrays.size())
    throw ConfigError("memory image does not match the program's arrays");
  Machine m(std::move(image), maa);
  for (const auto& s : prog.steps) m.exec(s);
  return m.finish();
}

}  // namespace dxsim::oracle
