#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dxsim/dram/config.hpp"
#include "dxsim/isa/types.hpp"

namespace dxsim::workloads {

/// Knobs of an All-Miss index set. Every index lands in its own cacheline and
/// lines spread evenly over all banks and `rows_per_bank` rows of each bank.
struct PatternSpec {
  std::uint64_t unique_indices = 65536;
  std::uint32_t rows_per_bank = 16;
  double rbh_target = 0.0;
  bool chi = false;
  bool bgi = false;
  std::uint64_t seed = 1;
  /// Consecutive accesses kept on one channel when chi is off.
  std::uint32_t chi_run = 512;
  /// Consecutive same-channel accesses kept on one bank group when bgi is off.
  std::uint32_t bgi_run = 128;

  friend bool operator==(const PatternSpec&, const PatternSpec&) = default;
};

std::string describe(const PatternSpec& s);

/// Element indices into an array of `dtype` whose base sits on a row-stripe
/// boundary. Issued strictly in order, each bank sees runs of same-row
/// accesses sized so its hit fraction is about rbh_target; consecutive
/// accesses alternate channels iff chi, and consecutive same-channel accesses
/// alternate bank groups iff bgi. Throws ConfigError naming the violated
/// constraint when the spec cannot be met.
std::vector<std::uint64_t> gen_allmiss(const PatternSpec& spec, const dram::DramConfig& cfg,
                                       isa::DType dtype = isa::DType::F32);

/// Elements needed by an array that holds every index gen_allmiss can emit.
std::uint64_t allmiss_array_length(const PatternSpec& spec, const dram::DramConfig& cfg,
                                   isa::DType dtype = isa::DType::F32);

}  // namespace dxsim::workloads
