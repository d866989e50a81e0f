#pragma once

#include <cstdint>
#include <string>

#include "dxsim/common.hpp"
#include "dxsim/dram/config.hpp"

namespace dxsim::dram {

/// Decomposed physical address. `word_offset` is the byte offset inside the
/// cacheline.
struct DramCoord {
  std::uint32_t channel = 0;
  std::uint32_t rank = 0;
  std::uint32_t bank_group = 0;
  std::uint32_t bank = 0;
  std::uint32_t row = 0;
  std::uint32_t column = 0;
  std::uint32_t word_offset = 0;

  friend bool operator==(const DramCoord&, const DramCoord&) = default;
};

std::string to_string(const DramCoord& c);

/// Mixed-radix address mapper. With power-of-two extents this is plain bit
/// slicing in the configured field order.
class AddressMapper {
 public:
  explicit AddressMapper(const DramConfig& cfg);

  /// Throws CapacityError when `addr` is beyond the configured capacity.
  DramCoord map(Addr addr) const;

  /// Inverse of map().
  Addr compose(const DramCoord& c) const;

  Addr line_address(Addr addr) const { return addr - addr % line_bytes_; }

  /// Flat index over (channel, rank, bank_group, bank), channel-major.
  std::uint32_t bank_index(const DramCoord& c) const {
    return ((c.channel * ranks_ + c.rank) * bank_groups_ + c.bank_group) * banks_ + c.bank;
  }

  const DramConfig& config() const { return cfg_; }

 private:
  std::uint32_t extent(AddrField f) const;

  DramConfig cfg_;
  std::uint64_t line_bytes_;
  std::uint64_t capacity_;
  std::uint32_t ranks_, bank_groups_, banks_;
};

inline DramCoord map_address(Addr addr, const DramConfig& cfg) {
  return AddressMapper(cfg).map(addr);
}

}  // namespace dxsim::dram
