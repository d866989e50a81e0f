#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dxsim/dram/config.hpp"
#include "dxsim/trace.hpp"

namespace dxsim::dram {

struct TimingReport {
  std::uint64_t commands = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Re-checks a recorded command stream against the configured timing
/// constraints. Every pair of commands on a channel that lies within the
/// longest constraint window is compared; row-state legality is replayed
/// per bank. Non-command events are ignored.
TimingReport check_timing(const std::vector<TraceEvent>& events, const DramConfig& cfg);

}  // namespace dxsim::dram
