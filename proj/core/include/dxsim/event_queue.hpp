#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dxsim/common.hpp"

namespace dxsim {

/// Deterministic discrete-event queue. Events at the same tick run in the
/// order they were scheduled.
class EventQueue {
 public:
  using Callback = std::function<void()>;

  void schedule(Tick when, Callback fn);

  /// Pops and runs the earliest event. Returns false when empty.
  bool run_one();

  Tick now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t pending() const { return heap_.size(); }
  std::uint64_t executed() const { return executed_; }

 private:
  struct Entry {
    Tick when;
    std::uint64_t seq;
    Callback fn;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.when != b.when ? a.when > b.when : a.seq > b.seq;
    }
  };

  std::vector<Entry> heap_;
  Tick now_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t executed_ = 0;
};

}  // namespace dxsim
