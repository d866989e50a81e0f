#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dxsim/dram/address_map.hpp"
#include "dxsim/event_queue.hpp"
#include "dxsim/isa/instruction.hpp"
#include "dxsim/memory_image.hpp"
#include "dxsim/scratchpad/scratchpad.hpp"
#include "dxsim/sim_config.hpp"
#include "dxsim/trace.hpp"

namespace dxsim::engine {

/// A registered array: the flat-TLB view of one program array.
struct ArrayInfo {
  std::string name;
  isa::DType dtype = isa::DType::U32;
  std::uint64_t length = 0;
  Addr base = 0;
  bool accel_writes = false;

  Addr address_of(std::uint64_t i) const { return base + i * isa::width(dtype); }
};

/// Memory-side services used by the access units.
class MemoryPort {
 public:
  using Done = std::function<void(Tick)>;
  virtual ~MemoryPort() = default;
  /// LLC presence, captured as the H bit.
  virtual bool snoop(Addr line) const = 0;
  /// H=1 goes through the LLC, H=0 straight to DRAM. False on backpressure.
  virtual bool send_indirect(Addr line, bool is_write, bool h, std::int64_t tag, Done done) = 0;
  /// Always through the LLC.
  virtual bool send_stream(Addr line, bool is_write, bool full_line, std::int64_t tag,
                           Done done) = 0;
};

struct UnitCounters {
  std::uint64_t indirect_requests = 0;
  std::uint64_t indirect_writes = 0;
  std::uint64_t stream_requests = 0;
  std::uint64_t stream_stalls = 0;
  std::uint64_t capacity_drains = 0;
  std::uint64_t fills = 0;
};

struct UnitEnv {
  const SimConfig* cfg = nullptr;
  EventQueue* events = nullptr;
  spd::Scratchpad* spd = nullptr;
  MemoryImage* memory = nullptr;
  const std::vector<ArrayInfo>* arrays = nullptr;
  const dram::AddressMapper* mapper = nullptr;
  MemoryPort* port = nullptr;
  TraceSink* trace = nullptr;
  UnitCounters* counters = nullptr;
};

/// One instruction handed to a unit at issue.
struct Job {
  std::uint64_t seq = 0;  // program-order instruction number
  isa::Instruction instr;
  std::uint64_t r1 = 0, r2 = 0, r3 = 0;  // register values captured at dispatch
  std::uint64_t cursor_i = 0, cursor_j = 0;
  std::uint32_t count = 0;  // iterations
  // Filled in by the unit, applied at retire.
  std::vector<std::pair<isa::TileId, std::uint32_t>> sizes;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> cursor_out;
};

/// A functional unit advanced once per accelerator cycle.
class Unit {
 public:
  explicit Unit(UnitEnv env) : env_(env) {}
  virtual ~Unit() = default;
  Unit(const Unit&) = delete;
  Unit& operator=(const Unit&) = delete;

  bool busy() const { return job_.has_value(); }
  bool done() const { return job_.has_value() && done_; }

  void start(Job job) {
    job_ = std::move(job);
    done_ = false;
    delay_ = env_.cfg->maa.spd_unit_latency;
    begin();
  }

  /// Returns true when the unit made progress this cycle.
  bool step() {
    if (!job_ || done_) return false;
    if (delay_ > 0) {
      --delay_;
      return true;
    }
    return advance();
  }

  Job finish() {
    Job j = std::move(*job_);
    job_.reset();
    return j;
  }

  /// One-line state summary for deadlock diagnostics.
  virtual std::string describe() const = 0;

 protected:
  virtual void begin() = 0;
  virtual bool advance() = 0;

  Tick now() const { return env_.events->now(); }
  void record(TraceEvent e) const {
    if (!env_.trace) return;
    e.time = now();
    e.instr = static_cast<std::int64_t>(job_->seq);
    env_.trace->record(e);
  }
  const ArrayInfo& array() const { return env_.arrays->at(*job_->instr.base); }
  ArrayData& data() { return env_.memory->at(*job_->instr.base); }

  UnitEnv env_;
  std::optional<Job> job_;
  bool done_ = false;
  std::uint32_t delay_ = 0;
};

}  // namespace dxsim::engine
