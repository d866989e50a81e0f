#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dxsim/dram/address_map.hpp"
#include "dxsim/dram/channel.hpp"
#include "dxsim/event_queue.hpp"
#include "dxsim/trace.hpp"

namespace dxsim::dram {

struct DramStats {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t acts = 0;
  std::uint64_t pres = 0;
  std::uint64_t row_hits = 0;
  std::uint64_t bytes = 0;
  /// Absent when no column access happened.
  std::optional<double> rbh;
  double bw_util = 0;
  /// Utilization between the 10% and 90% marks of transferred bytes.
  double bw_util_steady = 0;
  /// Time-averaged buffer occupancy divided by request_buffer_size.
  double avg_occupancy = 0;
  double avg_latency_ns = 0;
  std::uint64_t rejected = 0;
  Tick elapsed = 0;
};

/// All channels of the memory system, ticking on the DRAM clock inside a
/// shared event queue.
class DramSystem {
 public:
  using Completion = std::function<void(const MemRequest&, Tick)>;

  DramSystem(const DramConfig& cfg, EventQueue& events, TraceSink* trace = nullptr);
  DramSystem(const DramSystem&) = delete;
  DramSystem& operator=(const DramSystem&) = delete;

  /// Assigns id, coord, and arrival (now). Returns false if the target
  /// channel's buffer is full; the caller retries later.
  bool enqueue(MemRequest req, Completion done);
  bool can_accept(Addr addr) const;

  const AddressMapper& mapper() const { return mapper_; }
  const DramConfig& config() const { return cfg_; }
  bool idle() const;
  std::uint64_t outstanding() const { return callbacks_.size(); }

  DramStats stats(Tick elapsed) const;

 private:
  void tick(std::uint32_t ch);

  DramConfig cfg_;
  AddressMapper mapper_;
  EventQueue& events_;
  TraceSink* trace_;
  std::vector<Channel> channels_;
  std::vector<bool> ticking_;
  std::unordered_map<std::uint64_t, Completion> callbacks_;
  std::vector<Tick> transfer_done_;
  std::uint64_t next_id_ = 1;
};

/// Aggregates already-collected channel counters. Used by DramSystem and by
/// tests that drive Channel directly.
DramStats summarize(const DramConfig& cfg, const std::vector<const Channel*>& channels,
                    Tick elapsed, std::vector<Tick> transfer_done = {});

}  // namespace dxsim::dram
