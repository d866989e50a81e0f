#pragma once

#include <vector>

#include "dxsim/engine/stats.hpp"
#include "dxsim/engine/unit.hpp"
#include "dxsim/isa/program.hpp"
#include "dxsim/memory_image.hpp"
#include "dxsim/scratchpad/scratchpad.hpp"
#include "dxsim/sim_config.hpp"
#include "dxsim/trace.hpp"

namespace dxsim::engine {

/// Lays arrays out back to back, each starting on a boundary that is a
/// multiple of 2 MiB and of one full row stripe (every bank's row r).
/// Throws CapacityError when they do not fit.
std::vector<ArrayInfo> place_arrays(const isa::Program& prog, const dram::DramConfig& cfg);

struct RunResult {
  MemoryImage memory;
  spd::Scratchpad tiles;
  spd::RegisterFile registers;
  StatReport stats;
};

/// Runs `prog` to completion on the timing model. Throws DeadlockError with a
/// scoreboard snapshot when no progress is possible, and BoundsError /
/// DispatchError as the program executes.
RunResult run(const isa::Program& prog, MemoryImage image, const SimConfig& cfg,
              TraceSink* trace = nullptr);

}  // namespace dxsim::engine
