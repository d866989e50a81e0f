#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dxsim/memory_image.hpp"
#include "dxsim/oracle/oracle.hpp"
#include "dxsim/scratchpad/scratchpad.hpp"

namespace dxsim::oracle {

/// Integer words must match exactly; float words within `float_rel_tol`
/// relative. Only tiles the oracle produced are compared. Returns at most
/// `limit` human-readable mismatches.
std::vector<std::string> differences(const OracleResult& expected, const MemoryImage& memory,
                                     const spd::Scratchpad& tiles,
                                     const spd::RegisterFile& registers,
                                     double float_rel_tol = 1e-9, std::size_t limit = 20);

}  // namespace dxsim::oracle
