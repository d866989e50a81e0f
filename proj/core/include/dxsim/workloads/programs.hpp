#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dxsim/engine/baseline.hpp"
#include "dxsim/engine/unit.hpp"
#include "dxsim/isa/program.hpp"
#include "dxsim/memory_image.hpp"
#include "dxsim/sim_config.hpp"
#include "dxsim/workloads/patterns.hpp"

namespace dxsim::workloads {

enum class Kind : std::uint8_t { GatherSpd, GatherFull, Scatter, Rmw, Csr };

inline constexpr Kind kAllKinds[] = {Kind::GatherSpd, Kind::GatherFull, Kind::Scatter, Kind::Rmw,
                                     Kind::Csr};

std::string_view name(Kind k);
std::optional<Kind> parse_kind(std::string_view s);

struct WorkloadSpec {
  PatternSpec pattern;
  isa::DType value_dtype = isa::DType::F32;
  /// Emit `warm` for the index array so its stream loads hit the LLC.
  bool warm_indices = false;
  /// csr only: rows and average nonzeros per row.
  std::uint32_t csr_rows = 1024;
  std::uint32_t csr_avg_nnz = 8;
};

/// One logical computation in three forms: the accelerator program, its
/// initial memory image, and the equivalent core access list (cacheline
/// granularity, program order) for the baseline issuer.
struct Workload {
  isa::Program program;
  MemoryImage image;
  std::vector<engine::BaselineAccess> baseline;
  std::vector<std::uint64_t> indices;
};

Workload gen_program(Kind kind, const WorkloadSpec& spec, const SimConfig& cfg);

/// Cacheline read list for `indices` into `array`, one entry per index.
std::vector<engine::BaselineAccess> index_trace(const std::vector<std::uint64_t>& indices,
                                                const engine::ArrayInfo& array,
                                                std::uint32_t line_bytes);

}  // namespace dxsim::workloads
