#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dxsim/isa/instruction.hpp"
#include "dxsim/isa/types.hpp"

namespace dxsim::spd {

using isa::TileId;
using isa::Word;

/// One scratchpad tile. Elements hold raw words and are reinterpreted by the
/// consuming instruction's dtype; `dtype` records what the producer wrote.
struct Tile {
  std::vector<Word> elements;
  std::vector<std::uint8_t> finish;
  std::uint32_t size = 0;
  /// False while an in-flight producer has not yet determined `size`.
  bool size_known = true;
  bool ready = false;
  isa::DType dtype = isa::DType::U32;
};

class RegisterFile {
 public:
  explicit RegisterFile(std::uint32_t count = 32) : regs_(count, 0) {}
  std::uint64_t read(isa::RegId r) const { return regs_.at(r); }
  void write(isa::RegId r, std::uint64_t v) { regs_.at(r) = v; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(regs_.size()); }

 private:
  std::vector<std::uint64_t> regs_;
};

/// Tile storage with per-tile size/ready bits and per-element finish bits.
/// Tiles start unproduced: size 0, not ready.
class Scratchpad {
 public:
  Scratchpad(std::uint32_t tiles, std::uint32_t tile_size);

  std::uint32_t tile_count() const { return static_cast<std::uint32_t>(tiles_.size()); }
  std::uint32_t tile_size() const { return tile_size_; }

  Tile& tile(TileId t) { return tiles_.at(t); }
  const Tile& tile(TileId t) const { return tiles_.at(t); }

  bool finished(TileId t, std::uint32_t i) const { return tiles_.at(t).finish.at(i) != 0; }

  /// Unit-side read. Callers check finished() first and stall otherwise.
  Word read_word(TileId t, std::uint32_t i) const { return tiles_.at(t).elements.at(i); }

  /// Stores the element and marks it finished.
  void write_word(TileId t, std::uint32_t i, Word w);

  /// Core-side read. Throws DeadlockError when the element is unfinished,
  /// since a modeled core would spin on it forever.
  Word core_read(TileId t, std::uint32_t i) const;

  /// Clears ready on all source and destination tiles and the finish bits of
  /// every destination element.
  void dispatch_mark(std::span<const TileId> sources, std::span<const TileId> destinations);
  void dispatch_mark(const isa::Instruction& instr);

  /// Sets ready on `tiles` (tiles still held by another in-flight instruction
  /// should be left out by the caller).
  void retire_mark(std::span<const TileId> tiles);

  /// Binary dump:
  ///   "DXTL" u32 version(1) u32 tile_count u32 tile_size
  ///   per tile { u32 size, u8 ready, u8 dtype, u16 0, size x u64 element }
  std::vector<std::uint8_t> dump() const;
  void dump(const std::filesystem::path& path) const;

 private:
  std::uint32_t tile_size_;
  std::vector<Tile> tiles_;
};

}  // namespace dxsim::spd
