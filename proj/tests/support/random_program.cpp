#include "random_program.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "dxsim/common.hpp"
#include "dxsim/oracle/oracle.hpp"

namespace dxsim::testing {

using isa::AluOp;
using isa::DType;
using isa::Instruction;
using isa::Opcode;
using isa::TileId;

SimConfig corpus_config() {
  SimConfig cfg;
  cfg.maa.tile_size = 1024;
  return cfg;
}

namespace {

constexpr isa::ArrayId kIdx = 0, kLo = 1, kHi = 2, kData = 3;
constexpr int kDataArrays = 3;

struct TileInfo {
  int group = 0;
  bool index_safe = false;
  bool integer = true;
};

class Builder {
 public:
  explicit Builder(std::mt19937_64& rng) : rng_(rng) {}

  RandomProgram build() {
    const std::uint64_t length = pick(600, 2048);
    lo_ = pick(0, 8);
    const std::uint64_t span = pick(1, 512);
    stride_ = pick(0, 3) == 0 ? pick(2, 3) : 1;
    const std::uint64_t hi = lo_ + span;

    const DType idx_types[] = {DType::U32, DType::I32, DType::U64, DType::I64};
    const DType idx_t = idx_types[pick(0, 3)];
    prog_.arrays.push_back({"I", idx_t, hi});
    prog_.arrays.push_back({"Lo", DType::I32, hi});
    prog_.arrays.push_back({"Hi", DType::I32, hi});
    for (int d = 0; d < kDataArrays; ++d)
      prog_.arrays.push_back({"D" + std::to_string(d), isa::kAllDTypes[pick(0, 5)], length});

    set_reg(0, static_cast<std::int64_t>(lo_));
    set_reg(1, static_cast<std::int64_t>(hi));
    set_reg(2, static_cast<std::int64_t>(stride_));
    set_reg(3, static_cast<std::int64_t>(pick(0, 40)) - 8);
    set_reg(4, static_cast<std::int64_t>(pick(1, 3)));

    Instruction sld{Opcode::SLD};
    sld.dtype = idx_t;
    sld.base = kIdx;
    sld.rs1 = 0;
    sld.rs2 = 1;
    sld.rs3 = 2;
    sld.td = fresh({0, true, true}, sld);
    emit(sld);
    if (pick(0, 2) != 0) {
      for (isa::ArrayId a : {kLo, kHi}) {
        Instruction s = sld;
        s.dtype = DType::I32;
        s.base = a;
        s.td = fresh({0, false, true}, s);
        (a == kLo ? lo_tile_ : hi_tile_) = *s.td;
        emit(s);
      }
    }

    const int ops = static_cast<int>(pick(3, 12));
    for (int k = 0; k < ops; ++k) step();

    RandomProgram out;
    out.program = prog_;
    out.image = MemoryImage::from_program(prog_);
    fill_image(out.image, length);
    return out;
  }

 private:
  std::uint64_t pick(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

  void set_reg(isa::RegId r, std::int64_t v) { prog_.steps.push_back(isa::SetReg{r, v}); }
  void emit(const Instruction& in) { prog_.steps.push_back(in); }

  TileId fresh(TileInfo info, const Instruction& in, std::optional<TileId> avoid = std::nullopt) {
    const auto srcs = isa::source_tiles(in);
    TileId t;
    do {
      t = static_cast<TileId>(pick(0, 15));
    } while (t == lo_tile_ || t == hi_tile_ || t == avoid ||
             std::find(srcs.begin(), srcs.end(), t) != srcs.end());
    tiles_[t] = info;
    return t;
  }

  std::vector<TileId> in_group(int g, bool need_index, bool need_integer) const {
    std::vector<TileId> out;
    for (const auto& [t, info] : tiles_)
      if (info.group == g && (!need_index || info.index_safe) && (!need_integer || info.integer))
        out.push_back(t);
    return out;
  }

  std::optional<TileId> any_of(const std::vector<TileId>& v) {
    if (v.empty()) return std::nullopt;
    return v[pick(0, v.size() - 1)];
  }

  std::optional<TileId> maybe_cond(int g) {
    if (pick(0, 2) != 0) return std::nullopt;
    return any_of(in_group(g, false, false));
  }

  int random_group() {
    std::vector<int> groups;
    for (const auto& [t, info] : tiles_) groups.push_back(info.group);
    return groups[pick(0, groups.size() - 1)];
  }

  isa::ArrayId data_array() { return static_cast<isa::ArrayId>(kData + pick(0, kDataArrays - 1)); }

  AluOp alu_op(DType t, bool rmw) {
    std::vector<AluOp> ops;
    for (AluOp op : isa::kAllAluOps)
      if (isa::op_defined_for(op, t) && (!rmw || isa::is_rmw_eligible(op))) ops.push_back(op);
    return ops[pick(0, ops.size() - 1)];
  }

  void step() {
    switch (pick(0, 9)) {
      case 0:
      case 1: {
        const int g = random_group();
        auto idx = any_of(in_group(g, true, true));
        if (!idx) return;
        Instruction in{Opcode::ILD};
        in.base = data_array();
        in.dtype = prog_.arrays[*in.base].dtype;
        in.ts1 = idx;
        in.tc = maybe_cond(g);
        in.td = fresh({g, false, isa::is_integer(*in.dtype)}, in);
        emit(in);
        return;
      }
      case 2:
      case 3: {
        const int g = random_group();
        auto idx = any_of(in_group(g, true, true));
        auto val = any_of(in_group(g, false, false));
        if (!idx || !val) return;
        Instruction in{pick(0, 1) ? Opcode::IST : Opcode::IRMW};
        in.base = data_array();
        in.dtype = prog_.arrays[*in.base].dtype;
        if (in.opcode == Opcode::IRMW) in.op = alu_op(*in.dtype, true);
        in.ts1 = idx;
        in.ts2 = val;
        in.tc = maybe_cond(g);
        emit(in);
        return;
      }
      case 4: {
        Instruction in{Opcode::SLD};
        in.base = data_array();
        in.dtype = prog_.arrays[*in.base].dtype;
        in.rs1 = 0;
        in.rs2 = 1;
        in.rs3 = 2;
        in.tc = maybe_cond(0);
        in.td = fresh({0, false, isa::is_integer(*in.dtype)}, in);
        emit(in);
        return;
      }
      case 5: {
        auto val = any_of(in_group(0, false, false));
        if (!val) return;
        Instruction in{Opcode::SST};
        in.base = data_array();
        in.dtype = prog_.arrays[*in.base].dtype;
        in.ts1 = val;
        in.rs1 = 0;
        in.rs2 = 1;
        in.rs3 = 2;
        in.tc = maybe_cond(0);
        emit(in);
        return;
      }
      case 6: {
        const int g = random_group();
        const auto pool = in_group(g, false, false);
        auto a = any_of(pool);
        auto b = any_of(pool);
        if (!a) return;
        Instruction in{Opcode::ALUV};
        in.dtype = isa::kAllDTypes[pick(0, 5)];
        in.op = alu_op(*in.dtype, false);
        in.ts1 = a;
        in.ts2 = b;
        in.tc = maybe_cond(g);
        in.td = fresh({g, false, isa::is_integer(isa::result_dtype(*in.op, *in.dtype))}, in);
        emit(in);
        return;
      }
      case 7: {
        const int g = random_group();
        auto a = any_of(in_group(g, false, false));
        if (!a) return;
        Instruction in{Opcode::ALUS};
        in.dtype = isa::kAllDTypes[pick(0, 5)];
        in.op = pick(0, 1) ? AluOp::LT : alu_op(*in.dtype, false);
        in.ts1 = a;
        in.rs1 = 3;
        in.tc = maybe_cond(g);
        in.td = fresh({g, false, isa::is_integer(isa::result_dtype(*in.op, *in.dtype))}, in);
        emit(in);
        return;
      }
      case 8: {
        if (!lo_tile_ || tiles_[*lo_tile_].group != 0 || tiles_[*hi_tile_].group != 0) return;
        const int g = next_group_++;
        Instruction in{Opcode::RNG};
        in.ts1 = lo_tile_;
        in.ts2 = hi_tile_;
        in.rs1 = 4;
        in.tc = maybe_cond(0);
        in.td = fresh({g, true, true}, in);
        in.td2 = fresh({g, true, true}, in, in.td);
        emit(in);
        // a second call picks up where a truncated one stopped
        if (pick(0, 1)) {
          Instruction again = in;
          again.td = fresh({g + 1000, true, true}, again);
          again.td2 = fresh({g + 1000, true, true}, again, again.td);
          emit(again);
        }
        return;
      }
      default: {
        const auto pool = in_group(random_group(), false, false);
        if (auto t = any_of(pool)) prog_.steps.push_back(isa::Wait{*t});
        return;
      }
    }
  }

  void fill_image(MemoryImage& img, std::uint64_t length) {
    ArrayData& idx = img.at(kIdx);
    const std::uint64_t pool = pick(0, 1) ? pick(1, 24) : length;
    std::vector<std::uint64_t> values(pool);
    for (auto& v : values) v = pick(0, length - 1);
    for (std::uint64_t i = 0; i < idx.length(); ++i)
      idx.set(i, values[pick(0, pool - 1)]);

    ArrayData& lo = img.at(kLo);
    ArrayData& hi = img.at(kHi);
    for (std::uint64_t i = 0; i < lo.length(); ++i) {
      const auto a = static_cast<std::int64_t>(pick(0, length / 2));
      const auto b = a + static_cast<std::int64_t>(pick(0, 10)) - 2;
      lo.set(i, isa::from_int(a, DType::I32));
      hi.set(i, isa::from_int(b, DType::I32));
    }

    for (int d = 0; d < kDataArrays; ++d) {
      ArrayData& a = img.at(kData + d);
      for (std::uint64_t i = 0; i < a.length(); ++i) {
        if (isa::is_float(a.dtype)) {
          const double v = std::uniform_real_distribution<double>(-100.0, 100.0)(rng_);
          a.set(i, isa::from_float(v, a.dtype));
        } else {
          a.set(i, isa::from_int(static_cast<std::int64_t>(rng_()), a.dtype));
        }
      }
    }
  }

  std::mt19937_64& rng_;
  isa::Program prog_;
  std::map<TileId, TileInfo> tiles_;
  std::optional<TileId> lo_tile_, hi_tile_;
  std::uint64_t lo_ = 0, stride_ = 1;
  int next_group_ = 1;
};

}  // namespace

RandomProgram random_program(std::mt19937_64& rng, const SimConfig& cfg) {
  for (;;) {
    RandomProgram p = Builder(rng).build();
    try {
      oracle::oracle_run(p.program, p.image, cfg.maa);
      return p;
    } catch (const Error&) {
    }
  }
}

}  // namespace dxsim::testing
