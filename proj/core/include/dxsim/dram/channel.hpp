#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "dxsim/dram/config.hpp"
#include "dxsim/dram/request.hpp"

namespace dxsim::dram {

struct BankState {
  std::optional<std::uint32_t> open_row;
  std::optional<Tick> last_act;
  std::optional<Tick> last_pre;
  std::optional<Tick> last_rd_wr;
  /// A column command has been issued since the last ACT.
  bool accessed_since_act = false;
};

/// Timing state of one channel: all banks plus the shared column/data bus.
struct ChannelState {
  std::vector<BankState> banks;  // indexed by (rank, bank_group, bank)
  std::optional<Tick> last_column;
  std::vector<std::optional<Tick>> last_column_in_group;  // indexed by (rank, bank_group)
  std::optional<Tick> last_command;
  Tick data_bus_free = 0;

  explicit ChannelState(const DramConfig& cfg)
      : banks(cfg.banks_per_channel()), last_column_in_group(cfg.ranks * cfg.bank_groups) {}

  std::size_t group_slot(const DramConfig& cfg, const DramCoord& c) const {
    return std::size_t{c.rank} * cfg.bank_groups + c.bank_group;
  }

  std::size_t bank_slot(const DramConfig& cfg, const DramCoord& c) const {
    return (std::size_t{c.rank} * cfg.bank_groups + c.bank_group) * cfg.banks_per_group + c.bank;
  }
};

/// Earliest time `cmd` may issue to `coord` given the channel's history.
/// Throws ProtocolError if the command is illegal for the bank's row state.
Tick earliest_issue(Command cmd, const DramCoord& coord, const ChannelState& state,
                    const DramConfig& cfg);

struct IssuedCommand {
  Command cmd = Command::ACT;
  DramCoord coord;
  Tick at = 0;
  /// Request on whose behalf the command was issued.
  MemRequest request;
  /// Set for RD/WR: the request leaves the buffer and its data burst ends here.
  std::optional<Tick> data_done;
  bool row_hit = false;
};

struct ChannelCounters {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t acts = 0;
  std::uint64_t pres = 0;
  std::uint64_t row_hits = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  /// Integral of buffer occupancy over time, in entry-picoseconds.
  long double occupancy_integral = 0;
  long double latency_sum = 0;  // arrival to data completion, reads and writes
};

/// One DDR4 channel: per-bank row buffers, a bounded request buffer, and an
/// FR-FCFS scheduler under an open-page policy.
class Channel {
 public:
  Channel(const DramConfig& cfg, std::uint32_t id);

  /// Returns false (backpressure) when the buffer holds request_buffer_size
  /// entries. Accepted requests become schedulable strictly after arrival.
  bool enqueue(const MemRequest& req);

  /// Issues at most one command at `now`. Row hits first, oldest first;
  /// otherwise the oldest request whose PRE/ACT is issuable. A row is not
  /// precharged while a buffered request still hits it.
  std::optional<IssuedCommand> step(Tick now);

  /// Brings the occupancy integral up to `now`.
  void settle(Tick now);

  /// Occupancy integral as it would be after settle(now).
  long double occupancy_integral_at(Tick now) const;

  bool empty() const { return queue_.empty(); }
  bool full() const { return queue_.size() >= cfg_.request_buffer_size; }
  std::size_t occupancy() const { return queue_.size(); }
  std::uint32_t id() const { return id_; }

  const ChannelState& state() const { return state_; }
  const ChannelCounters& counters() const { return counters_; }

 private:
  Command next_command(const MemRequest& r) const;
  IssuedCommand issue(std::size_t index, Command cmd, Tick now);

  DramConfig cfg_;
  std::uint32_t id_;
  std::deque<MemRequest> queue_;  // arrival order
  ChannelState state_;
  ChannelCounters counters_;
  Tick last_settle_ = 0;
};

}  // namespace dxsim::dram
