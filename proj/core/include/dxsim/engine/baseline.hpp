#pragma once

#include <filesystem>
#include <vector>

#include "dxsim/engine/stats.hpp"
#include "dxsim/sim_config.hpp"
#include "dxsim/trace.hpp"

namespace dxsim::engine {

struct BaselineAccess {
  Addr line = 0;
  bool is_write = false;
  friend bool operator==(const BaselineAccess&, const BaselineAccess&) = default;
};

/// One ordered access list per independent core.
using BaselineTrace = std::vector<std::vector<BaselineAccess>>;

/// Limited-MLP issuer. The cores share one loop: the list is issued in order,
/// up to `baseline.cores` accesses per cycle, with at most
/// `cores * max_outstanding` in flight. Requests bypass the LLC and cross
/// `baseline.one_way_latency` each way.
StatReport baseline_run(const std::vector<BaselineAccess>& accesses, const SimConfig& cfg,
                        TraceSink* sink = nullptr);

/// Independent cores, one list each: one access per cycle per core and at
/// most `baseline.max_outstanding` in flight per core.
StatReport baseline_run(const BaselineTrace& trace, const SimConfig& cfg,
                        TraceSink* sink = nullptr);

/// Text form, one access per line: "R <line-hex>" or "W <line-hex>".
void save_baseline_trace(const std::filesystem::path& path,
                         const std::vector<BaselineAccess>& accesses);
std::vector<BaselineAccess> load_baseline_trace(const std::filesystem::path& path);

}  // namespace dxsim::engine
