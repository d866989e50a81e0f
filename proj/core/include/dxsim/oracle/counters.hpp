#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dxsim/dram/config.hpp"
#include "dxsim/isa/types.hpp"

namespace dxsim::oracle {

struct LineCount {
  std::uint64_t lines = 0;
  /// Distinct DRAM rows touched, keyed by flat bank index (channel-major).
  std::map<std::uint32_t, std::uint64_t> rows_per_bank;
};

/// Brute-force count of distinct cachelines (and rows per bank) touched by
/// element indices into an array of `dtype` placed at `base`.
LineCount count_unique_lines(std::span<const std::uint64_t> indices, Addr base, isa::DType dtype,
                             const dram::DramConfig& cfg);

/// Plain nested-loop enumeration of every (i, j) with cond[i] true (all i when
/// `cond` is empty) and j in [min[i], max[i]) step `stride`.
std::vector<std::pair<std::uint32_t, std::int64_t>> enumerate_ranges(
    std::span<const std::int64_t> min, std::span<const std::int64_t> max,
    std::span<const std::uint8_t> cond, std::int64_t stride);

}  // namespace dxsim::oracle
