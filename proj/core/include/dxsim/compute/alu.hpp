#pragma once

#include "dxsim/engine/unit.hpp"
#include "dxsim/isa/types.hpp"

namespace dxsim::compute {

/// One ALU lane. Integer arithmetic wraps at the dtype width; shifts use the
/// low log2(bits) bits of `b` and SHR is arithmetic on signed types.
/// Comparisons return 0 or 1. Throws DispatchError when `op` is undefined for
/// `t`.
isa::Word alu_apply(isa::AluOp op, isa::DType t, isa::Word a, isa::Word b);

/// ALUV / ALUS: `alu_lanes` elements per cycle, in order, each waiting on the
/// finish bits of its sources. Elements with a false condition become zero.
class AluUnit final : public engine::Unit {
 public:
  using Unit::Unit;
  std::string describe() const override;

 protected:
  void begin() override { next_ = 0; }
  bool advance() override;

 private:
  std::uint32_t next_ = 0;
};

}  // namespace dxsim::compute
