#include "dxsim/dram/timing_checker.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>

namespace dxsim::dram {

namespace {

bool is_column(Command c) { return c == Command::RD || c == Command::WR; }

struct Seen {
  Tick t;
  Command cmd;
  DramCoord coord;
};

std::string describe(const Seen& a, const Seen& b, const char* rule, Tick need) {
  std::ostringstream os;
  os << rule << ": " << to_string(a.cmd) << "@" << a.t << " -> " << to_string(b.cmd) << "@" << b.t
     << " gap " << (b.t - a.t) << "ps < " << need << "ps at " << to_string(b.coord);
  return os.str();
}

}  // namespace

TimingReport check_timing(const std::vector<TraceEvent>& events, const DramConfig& cfg) {
  TimingReport report;
  const Tick window = std::max({cfg.trp, cfg.trcd, cfg.tras, cfg.trtp, cfg.tccd_l, cfg.tccd_s,
                                cfg.burst_time(), cfg.tck});

  std::vector<std::deque<Seen>> recent(cfg.channels);
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>,
           std::optional<std::uint32_t>>
      open_rows;

  for (const TraceEvent& e : events) {
    if (e.kind != TraceKind::Command) continue;
    ++report.commands;
    const Seen b{e.time, e.cmd, e.coord};
    auto& hist = recent.at(e.coord.channel);
    while (!hist.empty() && hist.front().t + window < b.t) hist.pop_front();

    for (const Seen& a : hist) {
      if (b.t < a.t) {
        report.violations.push_back(describe(a, b, "time went backwards", 0));
        continue;
      }
      const Tick gap = b.t - a.t;
      auto need = [&](Tick min_gap, const char* rule) {
        if (gap < min_gap) report.violations.push_back(describe(a, b, rule, min_gap));
      };
      need(cfg.tck, "command bus");
      const bool same_bank = a.coord.rank == b.coord.rank &&
                             a.coord.bank_group == b.coord.bank_group &&
                             a.coord.bank == b.coord.bank;
      const bool same_group =
          a.coord.rank == b.coord.rank && a.coord.bank_group == b.coord.bank_group;
      if (is_column(a.cmd) && is_column(b.cmd)) {
        need(same_group ? cfg.tccd_l : cfg.tccd_s, same_group ? "tCCD_L" : "tCCD_S");
        need(cfg.burst_time(), "data bus");
      }
      if (!same_bank) continue;
      if (a.cmd == Command::PRE && b.cmd == Command::ACT) need(cfg.trp, "tRP");
      if (a.cmd == Command::ACT && is_column(b.cmd)) need(cfg.trcd, "tRCD");
      if (a.cmd == Command::ACT && b.cmd == Command::PRE) need(cfg.tras, "tRAS");
      if (is_column(a.cmd) && b.cmd == Command::PRE) need(cfg.trtp, "tRTP");
    }

    auto& open = open_rows[{e.coord.channel, e.coord.rank, e.coord.bank_group, e.coord.bank}];
    auto illegal = [&](const char* why) {
      report.violations.push_back(std::string(why) + " at t=" + std::to_string(b.t) + " " +
                                  to_string(b.coord));
    };
    switch (b.cmd) {
      case Command::ACT:
        if (open) illegal("ACT to open bank");
        open = b.coord.row;
        break;
      case Command::PRE:
        if (!open) illegal("PRE to closed bank");
        open.reset();
        break;
      case Command::RD:
      case Command::WR:
        if (!open || *open != b.coord.row) illegal("column command to a row that is not open");
        break;
    }
    hist.push_back(b);
  }
  return report;
}

}  // namespace dxsim::dram
