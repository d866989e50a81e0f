#include "dxsim/engine/stats.hpp"

#include <fmt/format.h>

namespace dxsim::engine {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "run",           "mode",           "cycles",           "elapsed_ps",
      "dram_reads",    "dram_writes",    "dram_acts",        "dram_pres",
      "row_hits",      "rbh",            "bytes",            "bw_util",
      "bw_util_steady", "avg_occupancy", "llc_hits",         "llc_misses",
      "direct_dram",   "indirect_requests", "stream_requests", "stream_stalls",
      "capacity_drains"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const StatReport& r) {
  const auto& d = r.dram;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{},{},{},{},{},{},{}",
                     r.run, r.mode, r.cycles, r.elapsed, d.reads, d.writes, d.acts, d.pres,
                     d.row_hits, d.rbh ? fmt::format("{:.6f}", *d.rbh) : std::string{}, d.bytes,
                     d.bw_util, d.bw_util_steady, d.avg_occupancy, r.llc_hits, r.llc_misses,
                     r.direct_dram, r.indirect_requests, r.stream_requests, r.stream_stalls,
                     r.capacity_drains);
}

}  // namespace dxsim::engine
