#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "dxsim/common.hpp"

namespace dxsim::dram {

enum class AddrField : std::uint8_t { Channel, Rank, BankGroup, Bank, Row, Column };

/// Order in which coordinate fields are sliced out of a cacheline address,
/// lowest-order field first. The word offset always occupies the lowest bits.
using MappingOrder = std::array<AddrField, 6>;

/// Cacheline-interleaved channels, then bank groups, banks, ranks, columns,
/// rows.
inline constexpr MappingOrder kDefaultMapping{AddrField::Channel,   AddrField::BankGroup,
                                              AddrField::Bank,      AddrField::Rank,
                                              AddrField::Column,    AddrField::Row};

/// Parses a comma separated list such as "ch,bg,ba,ra,co,ro".
MappingOrder parse_mapping(const std::string& text);
std::string format_mapping(const MappingOrder& order);

/// DDR4 organization and timing. Timings are stored in picoseconds; defaults
/// are DDR4-3200 with two channels and one rank.
struct DramConfig {
  std::uint32_t channels = 2;
  std::uint32_t ranks = 1;
  std::uint32_t bank_groups = 4;
  std::uint32_t banks_per_group = 4;
  std::uint32_t rows = 65536;
  std::uint32_t columns_per_row = 128;  // in cachelines
  std::uint32_t cacheline_bytes = 64;
  std::uint32_t burst_length = 8;

  Tick tck = 625;
  Tick trp = 12500;
  Tick trcd = 12500;
  Tick tras = 32500;
  Tick trtp = 7500;
  Tick tccd_s = 2500;
  Tick tccd_l = 5000;

  std::uint32_t request_buffer_size = 32;
  MappingOrder mapping = kDefaultMapping;

  /// Data-bus occupancy of one cacheline transfer.
  Tick burst_time() const { return Tick{burst_length / 2} * tck; }

  /// Bytes per second for one channel.
  double peak_channel_bandwidth() const {
    return static_cast<double>(cacheline_bytes) / (static_cast<double>(burst_time()) * 1e-12);
  }
  double peak_bandwidth() const { return peak_channel_bandwidth() * channels; }

  std::uint32_t banks_per_channel() const { return ranks * bank_groups * banks_per_group; }
  std::uint32_t total_banks() const { return channels * banks_per_channel(); }
  std::uint64_t total_lines() const {
    return std::uint64_t{total_banks()} * rows * columns_per_row;
  }
  std::uint64_t capacity_bytes() const { return total_lines() * cacheline_bytes; }

  /// Throws ConfigError on a zero extent or a non-power-of-two line size.
  void validate() const;
};

}  // namespace dxsim::dram
