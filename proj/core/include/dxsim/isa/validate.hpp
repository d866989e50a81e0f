#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dxsim/isa/program.hpp"

namespace dxsim::isa {

struct Diagnostic {
  std::size_t step = 0;  // index into Program::steps
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationLimits {
  std::uint32_t tiles = 32;
  std::uint32_t registers = 32;
};

/// Static legality scan: operand sets, declared arrays with matching dtypes,
/// tile/register ranges, tiles and conditions produced before they are read,
/// integer index tiles, RMW-eligible ops, and op/dtype compatibility.
std::vector<Diagnostic> validate_program(const Program& prog, const ValidationLimits& limits = {});

}  // namespace dxsim::isa
