#include "dxsim/oracle/compare.hpp"

#include <cmath>

#include <fmt/format.h>

namespace dxsim::oracle {

using isa::DType;
using isa::Word;

namespace {

bool same(Word a, Word b, DType t, double tol) {
  a &= isa::width_mask(t);
  b &= isa::width_mask(t);
  if (a == b) return true;
  if (!isa::is_float(t)) return false;
  const double x = isa::as_float(a, t);
  const double y = isa::as_float(b, t);
  if (std::isnan(x) || std::isnan(y)) return false;
  const double scale = std::max(std::fabs(x), std::fabs(y));
  return std::fabs(x - y) <= tol * scale;
}

}  // namespace

std::vector<std::string> differences(const OracleResult& expected, const MemoryImage& memory,
                                     const spd::Scratchpad& tiles,
                                     const spd::RegisterFile& registers, double float_rel_tol,
                                     std::size_t limit) {
  std::vector<std::string> out;
  auto note = [&](std::string s) {
    if (out.size() < limit) out.push_back(std::move(s));
  };

  if (memory.size() != expected.memory.size()) {
    note(fmt::format("array count {} != {}", memory.size(), expected.memory.size()));
    return out;
  }
  for (std::size_t a = 0; a < memory.size(); ++a) {
    const ArrayData& want = expected.memory.at(a);
    const ArrayData& got = memory.at(a);
    if (got.length() != want.length() || got.dtype != want.dtype) {
      note(fmt::format("array '{}' shape differs", want.name));
      continue;
    }
    for (std::uint64_t i = 0; i < want.length(); ++i)
      if (!same(got.get(i), want.get(i), want.dtype, float_rel_tol))
        note(fmt::format("{}[{}] = {:#x}, oracle {:#x}", want.name, i, got.get(i), want.get(i)));
  }

  for (std::size_t t = 0; t < expected.tiles.size(); ++t) {
    const OracleTile& want = expected.tiles[t];
    if (!want.produced) continue;
    const spd::Tile& got = tiles.tile(static_cast<isa::TileId>(t));
    if (got.size != want.elements.size()) {
      note(fmt::format("t{} size {} != oracle {}", t, got.size, want.elements.size()));
      continue;
    }
    for (std::size_t i = 0; i < want.elements.size(); ++i)
      if (!same(got.elements[i], want.elements[i], want.dtype, float_rel_tol))
        note(fmt::format("t{}[{}] = {:#x}, oracle {:#x}", t, i, got.elements[i], want.elements[i]));
  }

  for (std::size_t r = 0; r < expected.registers.size() && r < registers.size(); ++r)
    if (registers.read(static_cast<isa::RegId>(r)) != expected.registers[r])
      note(fmt::format("r{} = {}, oracle {}", r, registers.read(static_cast<isa::RegId>(r)),
                       expected.registers[r]));
  return out;
}

}  // namespace dxsim::oracle
