#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dxsim/isa/instruction.hpp"

namespace dxsim::isa {

struct ArrayDecl {
  std::string name;
  DType dtype = DType::U32;
  std::uint64_t length = 0;
  friend bool operator==(const ArrayDecl&, const ArrayDecl&) = default;
};

struct ArrayInit {
  enum class Kind : std::uint8_t { Zeros, Iota, File };
  ArrayId array = 0;
  Kind kind = Kind::Zeros;
  std::string path;  // Kind::File, relative to the program file
  friend bool operator==(const ArrayInit&, const ArrayInit&) = default;
};

/// Core write to the scalar register file.
struct SetReg {
  RegId reg = 0;
  std::int64_t value = 0;
  friend bool operator==(const SetReg&, const SetReg&) = default;
};

/// Core spins on the tile's ready bit.
struct Wait {
  TileId tile = 0;
  friend bool operator==(const Wait&, const Wait&) = default;
};

using Step = std::variant<Instruction, SetReg, Wait>;

/// A whole accelerator program: array declarations, initializers, LLC warm-up
/// directives, and the ordered core-side step list.
struct Program {
  std::vector<ArrayDecl> arrays;
  std::vector<ArrayInit> inits;
  std::vector<ArrayId> warm;
  std::vector<Step> steps;

  std::optional<ArrayId> find_array(const std::string& name) const;
  std::size_t instruction_count() const;
  friend bool operator==(const Program&, const Program&) = default;
};

}  // namespace dxsim::isa
