#include "dxsim/scratchpad/scratchpad.hpp"

#include <algorithm>
#include <fstream>

#include "dxsim/common.hpp"

namespace dxsim::spd {

Scratchpad::Scratchpad(std::uint32_t tiles, std::uint32_t tile_size)
    : tile_size_(tile_size), tiles_(tiles) {
  for (auto& t : tiles_) {
    t.elements.assign(tile_size, 0);
    t.finish.assign(tile_size, 0);
  }
}

void Scratchpad::write_word(TileId t, std::uint32_t i, Word w) {
  Tile& tile = tiles_.at(t);
  tile.elements.at(i) = w;
  tile.finish[i] = 1;
}

Word Scratchpad::core_read(TileId t, std::uint32_t i) const {
  if (!finished(t, i))
    throw DeadlockError("core read of unfinished element " + std::to_string(i) + " of t" +
                        std::to_string(t));
  return read_word(t, i);
}

void Scratchpad::dispatch_mark(std::span<const TileId> sources,
                               std::span<const TileId> destinations) {
  for (auto t : sources) tiles_.at(t).ready = false;
  for (auto t : destinations) {
    Tile& tile = tiles_.at(t);
    tile.ready = false;
    std::fill(tile.finish.begin(), tile.finish.end(), 0);
  }
}

void Scratchpad::dispatch_mark(const isa::Instruction& instr) {
  const auto src = isa::source_tiles(instr);
  const auto dst = isa::destination_tiles(instr);
  dispatch_mark(src, dst);
}

void Scratchpad::retire_mark(std::span<const TileId> tiles) {
  for (auto t : tiles) tiles_.at(t).ready = true;
}

std::vector<std::uint8_t> Scratchpad::dump() const {
  std::vector<std::uint8_t> out;
  auto put32 = [&out](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  };
  out.insert(out.end(), {'D', 'X', 'T', 'L'});
  put32(1);
  put32(tile_count());
  put32(tile_size_);
  for (const auto& t : tiles_) {
    put32(t.size);
    out.push_back(t.ready ? 1 : 0);
    out.push_back(static_cast<std::uint8_t>(t.dtype));
    out.push_back(0);
    out.push_back(0);
    for (std::uint32_t i = 0; i < t.size; ++i)
      for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(t.elements[i] >> (8 * b)));
  }
  return out;
}

void Scratchpad::dump(const std::filesystem::path& path) const {
  const auto bytes = dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write tile dump '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace dxsim::spd
