#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <vector>

#include "dxsim/dram/dram_system.hpp"
#include "dxsim/event_queue.hpp"
#include "dxsim/sim_config.hpp"

namespace dxsim::engine {

struct LlcStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t writebacks = 0;
  std::uint64_t mshr_rejects = 0;
};

/// Set-associative LRU last-level cache used as a presence and latency model.
/// Data is not stored; the functional memory image is the single source of
/// truth. Misses allocate an MSHR and fetch from DRAM; dirty victims are
/// written back.
class Llc {
 public:
  using Done = std::function<void(Tick)>;

  Llc(const SimConfig& cfg, EventQueue& events, dram::DramSystem& dram);

  /// Presence snoop (the H bit).
  bool present(Addr line) const;
  bool dirty(Addr line) const;

  /// Inserts a clean line without timing; used for warm-up directives.
  void warm(Addr line);
  void invalidate(Addr line);

  /// Returns false when the access misses and no MSHR is free. A write that
  /// covers the whole line allocates without fetching.
  bool access(Addr line, bool is_write, bool full_line, dram::Origin origin, std::int64_t tag,
              Done done);

  /// Retries DRAM sends held back by a full request buffer.
  void tick();

  bool idle() const { return mshrs_.empty() && pending_.empty(); }
  const LlcStats& stats() const { return stats_; }

 private:
  struct Way {
    Addr line = 0;
    bool valid = false;
    bool dirty = false;
    std::uint64_t lru = 0;
  };
  struct Mshr {
    bool write = false;
    std::vector<Done> waiters;
  };
  struct PendingSend {
    dram::MemRequest req;
    dram::DramSystem::Completion done;
  };

  std::size_t set_of(Addr line) const;
  Way* lookup(Addr line);
  const Way* lookup(Addr line) const;
  void install(Addr line, bool dirty);
  void send(dram::MemRequest req, dram::DramSystem::Completion done);

  const SimConfig& cfg_;
  EventQueue& events_;
  dram::DramSystem& dram_;
  std::uint32_t line_bytes_;
  std::size_t sets_;
  std::vector<Way> ways_;
  std::uint64_t lru_clock_ = 0;
  Tick latency_;
  std::map<Addr, Mshr> mshrs_;
  std::deque<PendingSend> pending_;
  LlcStats stats_;
};

}  // namespace dxsim::engine
