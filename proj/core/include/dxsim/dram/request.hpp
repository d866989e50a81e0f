#pragma once

#include <cstdint>
#include <string_view>

#include "dxsim/common.hpp"
#include "dxsim/dram/address_map.hpp"

namespace dxsim::dram {

enum class Command : std::uint8_t { ACT, PRE, RD, WR };

enum class Origin : std::uint8_t { Stream, Indirect, Baseline, LlcWriteback };

std::string_view to_string(Command c);
std::string_view to_string(Origin o);

struct MemRequest {
  std::uint64_t id = 0;
  bool is_write = false;
  Addr address = 0;
  DramCoord coord;
  Tick arrival = 0;
  Origin origin = Origin::Baseline;
  /// Free-form attribution carried into trace records (instruction number).
  std::int64_t tag = -1;
};

}  // namespace dxsim::dram
