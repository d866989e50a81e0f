#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dxsim/dram/dram_system.hpp"

namespace dxsim::engine {

struct StatReport {
  std::string run;
  std::string mode;  // "dx100" or "baseline"
  std::uint64_t cycles = 0;
  Tick elapsed = 0;
  dram::DramStats dram;
  std::uint64_t llc_hits = 0;
  std::uint64_t llc_misses = 0;
  std::uint64_t llc_writebacks = 0;
  std::uint64_t direct_dram = 0;
  std::uint64_t indirect_requests = 0;
  std::uint64_t indirect_writes = 0;
  std::uint64_t stream_requests = 0;
  std::uint64_t stream_stalls = 0;
  std::uint64_t capacity_drains = 0;
  std::uint64_t instructions = 0;

  /// Requests the access units handed to the interface.
  std::uint64_t total_requests() const {
    return indirect_requests + indirect_writes + stream_requests;
  }
};

/// Stable CSV schema.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const StatReport& r);

}  // namespace dxsim::engine
