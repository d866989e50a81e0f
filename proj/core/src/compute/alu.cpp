#include "dxsim/compute/alu.hpp"

#include <string>

#include "dxsim/common.hpp"

namespace dxsim::compute {

using isa::AluOp;
using isa::DType;
using isa::Word;

namespace {

Word float_op(AluOp op, DType t, Word a, Word b) {
  const double x = isa::as_float(a, t);
  const double y = isa::as_float(b, t);
  switch (op) {
    case AluOp::ADD: return isa::from_float(x + y, t);
    case AluOp::SUB: return isa::from_float(x - y, t);
    case AluOp::MUL: return isa::from_float(x * y, t);
    case AluOp::MIN: return y < x ? b : a;
    case AluOp::MAX: return x < y ? b : a;
    case AluOp::LT: return x < y;
    case AluOp::LE: return x <= y;
    case AluOp::GT: return x > y;
    case AluOp::GE: return x >= y;
    case AluOp::EQ: return x == y;
    default: break;
  }
  throw DispatchError("operation " + std::string(isa::name(op)) + " undefined for " +
                      std::string(isa::name(t)));
}

Word int_op(AluOp op, DType t, Word a, Word b) {
  const Word mask = isa::width_mask(t);
  const unsigned bits = isa::width(t) * 8;
  a &= mask;
  b &= mask;
  const bool sgn = isa::is_signed(t);
  auto lt = [&](Word x, Word y) { return sgn ? isa::as_int(x, t) < isa::as_int(y, t) : x < y; };
  switch (op) {
    case AluOp::ADD: return (a + b) & mask;
    case AluOp::SUB: return (a - b) & mask;
    case AluOp::MUL: return (a * b) & mask;
    case AluOp::MIN: return lt(b, a) ? b : a;
    case AluOp::MAX: return lt(a, b) ? b : a;
    case AluOp::AND: return a & b;
    case AluOp::OR: return a | b;
    case AluOp::XOR: return a ^ b;
    case AluOp::SHL: return (a << (b & (bits - 1))) & mask;
    case AluOp::SHR: {
      const unsigned s = static_cast<unsigned>(b & (bits - 1));
      if (sgn) return isa::from_int(isa::as_int(a, t) >> s, t);
      return a >> s;
    }
    case AluOp::LT: return lt(a, b);
    case AluOp::LE: return !lt(b, a);
    case AluOp::GT: return lt(b, a);
    case AluOp::GE: return !lt(a, b);
    case AluOp::EQ: return a == b;
  }
  return 0;
}

}  // namespace

Word alu_apply(AluOp op, DType t, Word a, Word b) {
  if (!isa::op_defined_for(op, t))
    throw DispatchError("operation " + std::string(isa::name(op)) + " undefined for " +
                        std::string(isa::name(t)));
  return isa::is_float(t) ? float_op(op, t, a, b) : int_op(op, t, a, b);
}

}  // namespace dxsim::compute

namespace dxsim::compute {

std::string AluUnit::describe() const {
  return "alu " + std::to_string(next_) + "/" + std::to_string(job_->count);
}

bool AluUnit::advance() {
  const isa::Instruction& in = job_->instr;
  spd::Scratchpad& spd = *env_.spd;
  const DType t = *in.dtype;
  const DType out = isa::result_dtype(*in.op, t);
  const bool vec = in.opcode == isa::Opcode::ALUV;
  bool progressed = false;
  for (std::uint32_t lane = 0; lane < env_.cfg->maa.alu_lanes && next_ < job_->count; ++lane) {
    const std::uint32_t i = next_;
    if (in.tc && !spd.finished(*in.tc, i)) break;
    if (in.tc && !isa::truthy(spd.read_word(*in.tc, i), spd.tile(*in.tc).dtype)) {
      spd.write_word(*in.td, i, 0);
    } else {
      if (!spd.finished(*in.ts1, i) || (vec && !spd.finished(*in.ts2, i))) break;
      const Word a = spd.read_word(*in.ts1, i);
      const Word b = vec ? spd.read_word(*in.ts2, i) : job_->r1;
      spd.write_word(*in.td, i, alu_apply(*in.op, t, a, b) & isa::width_mask(out));
    }
    ++next_;
    progressed = true;
  }
  if (next_ == job_->count) done_ = true;
  return progressed || done_;
}

}  // namespace dxsim::compute
