#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dxsim/dram/config.hpp"

namespace dxsim {

/// Indirect-unit reaction when a Row Table slice runs out of entries.
enum class DrainPolicy : std::uint8_t {
  Slice,  // emit every valid unsent row of the slice
  Row,    // emit only the row that overflowed (or the oldest row when rows run out)
};

struct MaaConfig {
  std::uint32_t clock_mhz = 3200;
  std::uint32_t tiles = 32;
  std::uint32_t tile_size = 16384;
  std::uint32_t registers = 32;
  std::uint32_t row_table_rows = 64;
  std::uint32_t row_table_columns = 8;
  std::uint32_t request_table_size = 128;
  std::uint32_t alu_lanes = 16;
  std::uint32_t scoreboard_entries = 16;
  /// Core cycles to deliver one instruction (three 64-bit stores).
  std::uint32_t instr_issue_cycles = 3;
  std::uint32_t spd_unit_latency = 2;
  std::uint32_t spd_core_latency = 20;
  std::uint32_t fill_per_cycle = 1;
  std::uint32_t response_words_per_cycle = 4;
  std::uint32_t rng_pairs_per_cycle = 16;
  /// RNG resume cursor lives in this register and the next one.
  std::uint32_t rng_cursor_reg = 30;
  std::uint64_t deadlock_cycles = 2'000'000;
  DrainPolicy drain_policy = DrainPolicy::Slice;

  /// Picosecond timestamp of the start of accelerator cycle `cycle`.
  Tick cycle_time(std::uint64_t cycle) const {
    return static_cast<Tick>(cycle / clock_mhz * 1'000'000u +
                             cycle % clock_mhz * 1'000'000u / clock_mhz);
  }
  /// Number of whole cycles elapsed at `t`.
  std::uint64_t cycles_at(Tick t) const {
    const std::uint64_t ps = static_cast<std::uint64_t>(t);
    return ps / 1'000'000u * clock_mhz + (ps % 1'000'000u * clock_mhz + 999'999u) / 1'000'000u;
  }
};

struct LlcConfig {
  std::uint64_t size_bytes = 8ull << 20;
  std::uint32_t ways = 16;
  std::uint32_t latency_cycles = 42;
  std::uint32_t mshrs = 256;
};

/// Abstract limited-MLP issuer standing in for the host cores.
struct BaselineConfig {
  std::uint32_t cores = 4;
  std::uint32_t max_outstanding = 10;
  /// Core-to-memory-controller path latency, each direction.
  Tick one_way_latency = 30000;
};

struct SimConfig {
  dram::DramConfig dram;
  MaaConfig maa;
  LlcConfig llc;
  BaselineConfig baseline;
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  /// Every documented key, in a stable order.
  static const std::vector<std::string>& keys();

  /// Throws ConfigError on an unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  /// Full key = value listing, loadable by the config file reader.
  std::string to_text() const;
};

}  // namespace dxsim
