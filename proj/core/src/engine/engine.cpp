#include "dxsim/engine/engine.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <numeric>
#include <sstream>

#include "dxsim/compute/alu.hpp"
#include "dxsim/compute/range_fuser.hpp"
#include "dxsim/dram/dram_system.hpp"
#include "dxsim/engine/llc.hpp"
#include "dxsim/indirect/indirect_unit.hpp"
#include "dxsim/stream/stream_unit.hpp"

namespace dxsim::engine {

using isa::Instruction;
using isa::Opcode;
using isa::TileId;

std::vector<ArrayInfo> place_arrays(const isa::Program& prog, const dram::DramConfig& cfg) {
  const std::uint64_t align = std::lcm<std::uint64_t>(2ull << 20, cfg.capacity_bytes() / cfg.rows);
  std::vector<ArrayInfo> out;
  Addr next = 0;
  for (const auto& a : prog.arrays) {
    ArrayInfo info{a.name, a.dtype, a.length, next, false};
    const std::uint64_t bytes = a.length * isa::width(a.dtype);
    if (next + bytes > cfg.capacity_bytes())
      throw CapacityError("array '" + a.name + "' does not fit in DRAM");
    next += (bytes + align - 1) / align * align;
    out.push_back(info);
  }
  for (const auto& s : prog.steps)
    if (auto* in = std::get_if<Instruction>(&s); in && isa::writes_memory(in->opcode) && in->base)
      out.at(*in->base).accel_writes = true;
  return out;
}

namespace {

class Port final : public MemoryPort {
 public:
  Port(EventQueue& ev, dram::DramSystem& dram, Llc& llc, bool& progress, std::uint64_t& direct)
      : events_(ev), dram_(dram), llc_(llc), progress_(progress), direct_(direct) {}

  bool snoop(Addr line) const override { return llc_.present(line); }

  bool send_indirect(Addr line, bool is_write, bool h, std::int64_t tag, Done done) override {
    auto wrapped = wrap(std::move(done));
    if (h) return llc_.access(line, is_write, true, dram::Origin::Indirect, tag, wrapped);
    if (!dram_.can_accept(line)) return false;
    if (is_write) {
      if (llc_.dirty(line))
        throw ConsistencyError("direct DRAM write to a line dirty in the LLC");
      llc_.invalidate(line);
    }
    dram::MemRequest req;
    req.is_write = is_write;
    req.address = line;
    req.origin = dram::Origin::Indirect;
    req.tag = tag;
    dram_.enqueue(req, [wrapped](const dram::MemRequest&, Tick t) { wrapped(t); });
    ++direct_;
    return true;
  }

  bool send_stream(Addr line, bool is_write, bool full_line, std::int64_t tag,
                   Done done) override {
    return llc_.access(line, is_write, full_line, dram::Origin::Stream, tag, wrap(std::move(done)));
  }

 private:
  Done wrap(Done done) {
    return [this, done = std::move(done)](Tick t) {
      progress_ = true;
      done(t);
    };
  }

  EventQueue& events_;
  dram::DramSystem& dram_;
  Llc& llc_;
  bool& progress_;
  std::uint64_t& direct_;
};

enum class UnitKind : std::uint8_t { Indirect, Stream, Alu, Rng };

UnitKind unit_for(Opcode op) {
  if (isa::is_indirect(op)) return UnitKind::Indirect;
  if (isa::is_stream(op)) return UnitKind::Stream;
  if (op == Opcode::RNG) return UnitKind::Rng;
  return UnitKind::Alu;
}

struct Slot {
  Job job;
  bool issued = false;
  UnitKind unit;
  std::vector<TileId> srcs, dsts;
  std::vector<isa::RegId> reg_reads, reg_writes;

  bool uses(TileId t) const {
    return std::find(srcs.begin(), srcs.end(), t) != srcs.end() ||
           std::find(dsts.begin(), dsts.end(), t) != dsts.end();
  }
};

class Simulation {
 public:
  Simulation(const isa::Program& prog, MemoryImage image, const SimConfig& cfg, TraceSink* trace)
      : prog_(prog),
        cfg_(cfg),
        trace_(trace),
        memory_(std::move(image)),
        arrays_(place_arrays(prog, cfg.dram)),
        spd_(cfg.maa.tiles, cfg.maa.tile_size),
        regs_(cfg.maa.registers),
        dram_(cfg.dram, events_, trace),
        llc_(cfg, events_, dram_),
        port_(events_, dram_, llc_, progress_, direct_) {
    if (memory_.size() != prog.arrays.size())
      throw ConfigError("memory image holds " + std::to_string(memory_.size()) +
                        " arrays, program declares " + std::to_string(prog.arrays.size()));
    for (std::size_t k = 0; k < arrays_.size(); ++k)
      if (memory_.at(k).dtype != arrays_[k].dtype || memory_.at(k).length() != arrays_[k].length)
        throw ConfigError("memory image array '" + memory_.at(k).name +
                          "' does not match its declaration");
    UnitEnv env{&cfg_, &events_, &spd_, &memory_, &arrays_, &dram_.mapper(), &port_, trace_, &counters_};
    units_[0] = std::make_unique<indirect::IndirectUnit>(env);
    units_[1] = std::make_unique<stream::StreamUnit>(env);
    units_[2] = std::make_unique<compute::AluUnit>(env);
    units_[3] = std::make_unique<compute::RangeFuserUnit>(env);
    const std::uint32_t line = cfg.dram.cacheline_bytes;
    for (isa::ArrayId a : prog.warm) {
      const ArrayInfo& info = arrays_.at(a);
      const std::uint64_t bytes = info.length * isa::width(info.dtype);
      for (std::uint64_t off = 0; off < bytes; off += line) llc_.warm(info.base + off);
    }
  }

  RunResult run() {
    if (!prog_.steps.empty()) {
      events_.schedule(cfg_.maa.cycle_time(0), [this] { on_cycle(); });
      while (events_.run_one()) {
      }
    }
    if (!sb_.empty() || pc_ < prog_.steps.size() || !dram_.idle() || !llc_.idle())
      throw ConsistencyError("simulation ended with work outstanding");
    const Tick elapsed = events_.now();
    StatReport s;
    s.mode = "dx100";
    s.elapsed = elapsed;
    s.cycles = cfg_.maa.cycles_at(elapsed);
    s.dram = dram_.stats(elapsed);
    s.llc_hits = llc_.stats().hits;
    s.llc_misses = llc_.stats().misses;
    s.llc_writebacks = llc_.stats().writebacks;
    s.direct_dram = direct_;
    s.indirect_requests = counters_.indirect_requests;
    s.indirect_writes = counters_.indirect_writes;
    s.stream_requests = counters_.stream_requests;
    s.stream_stalls = counters_.stream_stalls;
    s.capacity_drains = counters_.capacity_drains;
    s.instructions = prog_.instruction_count();
    return RunResult{std::move(memory_), std::move(spd_), regs_, s};
  }

 private:
  Unit& unit(UnitKind k) { return *units_[static_cast<int>(k)]; }

  void on_cycle() {
    progress_ = false;
    llc_.tick();
    retire();
    for (auto& u : units_) progress_ |= u->step();
    retire();
    issue();
    core();
    ++cycle_;
    if (progress_) last_progress_ = cycle_;
    if (cycle_ - last_progress_ > cfg_.maa.deadlock_cycles)
      throw DeadlockError("no progress for " + std::to_string(cfg_.maa.deadlock_cycles) +
                          " cycles\n" + snapshot());
    if (pc_ < prog_.steps.size() || !sb_.empty() || !llc_.idle())
      events_.schedule(cfg_.maa.cycle_time(cycle_), [this] { on_cycle(); });
  }

  // ---- core -------------------------------------------------------------

  void core() {
    if (pc_ >= prog_.steps.size() || cycle_ < core_busy_until_) return;
    const isa::Step& step = prog_.steps[pc_];
    if (const auto* in = std::get_if<Instruction>(&step)) {
      if (!delivered_) {
        delivered_ = true;
        core_busy_until_ = cycle_ + cfg_.maa.instr_issue_cycles;
        progress_ = true;
        return;
      }
      if (dispatch(*in)) {
        delivered_ = false;
        ++pc_;
        progress_ = true;
      }
    } else if (const auto* set = std::get_if<isa::SetReg>(&step)) {
      for (const Slot& s : sb_)
        if (std::find(s.reg_writes.begin(), s.reg_writes.end(), set->reg) != s.reg_writes.end())
          return;
      regs_.write(set->reg, static_cast<std::uint64_t>(set->value));
      ++pc_;
      core_busy_until_ = cycle_ + 1;
      progress_ = true;
    } else {
      const TileId t = std::get<isa::Wait>(step).tile;
      if (spd_.tile(t).ready) {
        ++pc_;
        core_busy_until_ = cycle_ + cfg_.maa.spd_core_latency;
        progress_ = true;
        return;
      }
      if (std::none_of(sb_.begin(), sb_.end(), [t](const Slot& s) { return s.uses(t); }))
        throw DeadlockError("WAIT t" + std::to_string(t) + " at step " + std::to_string(pc_) +
                            ": no in-flight instruction will make the tile ready\n" + snapshot());
    }
  }

  bool dispatch(const Instruction& in) {
    if (sb_.size() >= cfg_.maa.scoreboard_entries) return false;
    Slot s;
    s.unit = unit_for(in.opcode);
    s.srcs = isa::source_tiles(in);
    s.dsts = isa::destination_tiles(in);
    s.reg_reads = isa::source_registers(in);
    if (in.opcode == Opcode::RNG) {
      const auto c = static_cast<isa::RegId>(cfg_.maa.rng_cursor_reg);
      s.reg_reads.push_back(c);
      s.reg_reads.push_back(static_cast<isa::RegId>(c + 1));
      s.reg_writes = {c, static_cast<isa::RegId>(c + 1)};
    }
    for (TileId t : s.dsts)
      if (std::find(s.srcs.begin(), s.srcs.end(), t) != s.srcs.end())
        throw DispatchError("instruction " + std::to_string(seq_) + " (" +
                            std::string(isa::name(in.opcode)) + "): destination t" +
                            std::to_string(t) + " is also a source");
    for (const Slot& o : sb_) {
      for (TileId t : s.dsts)
        if (o.uses(t)) return false;
      for (auto r : s.reg_reads)
        if (std::find(o.reg_writes.begin(), o.reg_writes.end(), r) != o.reg_writes.end())
          return false;
    }
    s.job.seq = seq_++;
    s.job.instr = in;
    auto reg = [&](const std::optional<isa::RegId>& r) { return r ? regs_.read(*r) : 0; };
    s.job.r1 = reg(in.rs1);
    s.job.r2 = reg(in.rs2);
    s.job.r3 = reg(in.rs3);
    if (in.opcode == Opcode::RNG) {
      s.job.cursor_i = regs_.read(static_cast<isa::RegId>(cfg_.maa.rng_cursor_reg));
      s.job.cursor_j = regs_.read(static_cast<isa::RegId>(cfg_.maa.rng_cursor_reg + 1));
    }
    spd_.dispatch_mark(s.srcs, s.dsts);
    for (TileId t : s.dsts) spd_.tile(t).size_known = false;
    sb_.push_back(std::move(s));
    return true;
  }

  // ---- issue ------------------------------------------------------------

  [[noreturn]] void reject(const Slot& s, const std::string& why) const {
    throw DispatchError("instruction " + std::to_string(s.job.seq) + " (" +
                        std::string(isa::name(s.job.instr.opcode)) + "): " + why);
  }

  std::uint32_t prepare(Slot& s) {
    const Instruction& in = s.job.instr;
    auto size = [&](TileId t) { return spd_.tile(t).size; };
    auto tname = [](TileId t) { return "t" + std::to_string(t); };
    std::uint32_t count = 0;
    switch (in.opcode) {
      case Opcode::ILD:
      case Opcode::IST:
      case Opcode::IRMW: {
        count = size(*in.ts1);
        if (count && isa::is_float(spd_.tile(*in.ts1).dtype))
          reject(s, "index tile " + tname(*in.ts1) + " holds " +
                        std::string(isa::name(spd_.tile(*in.ts1).dtype)));
        if (in.ts2 && size(*in.ts2) < count)
          reject(s, "value tile " + tname(*in.ts2) + " shorter than index tile");
        break;
      }
      case Opcode::SLD:
      case Opcode::SST: {
        const std::uint64_t n =
            stream::stream_iterations(static_cast<std::int64_t>(s.job.r1),
                                      static_cast<std::int64_t>(s.job.r2),
                                      static_cast<std::int64_t>(s.job.r3));
        if (n > cfg_.maa.tile_size)
          reject(s, std::to_string(n) + " iterations exceed the tile size");
        count = static_cast<std::uint32_t>(n);
        if (in.opcode == Opcode::SST && size(*in.ts1) < count)
          reject(s, "value tile " + tname(*in.ts1) + " shorter than the loop");
        break;
      }
      case Opcode::ALUV:
        if (size(*in.ts1) != size(*in.ts2))
          reject(s, "source tiles differ in size");
        [[fallthrough]];
      case Opcode::ALUS:
        if (!isa::op_defined_for(*in.op, *in.dtype))
          reject(s, std::string(isa::name(*in.op)) + " undefined for " +
                        std::string(isa::name(*in.dtype)));
        count = size(*in.ts1);
        break;
      case Opcode::RNG:
        if (size(*in.ts1) != size(*in.ts2)) reject(s, "range tiles differ in size");
        count = size(*in.ts1);
        if (static_cast<std::int64_t>(s.job.r1) < 1) reject(s, "stride must be >= 1");
        if (count && (isa::is_float(spd_.tile(*in.ts1).dtype) ||
                      isa::is_float(spd_.tile(*in.ts2).dtype)))
          reject(s, "range tiles must hold integers");
        break;
    }
    if (in.tc && size(*in.tc) < count) reject(s, "condition tile shorter than the operation");
    return count;
  }

  bool memory_conflict(const Slot& s) const {
    const Instruction& in = s.job.instr;
    if (!isa::is_memory(in.opcode)) return false;
    for (const Slot& o : sb_) {
      if (&o == &s) break;
      const Instruction& p = o.job.instr;
      if (isa::is_memory(p.opcode) && *p.base == *in.base &&
          (isa::writes_memory(p.opcode) || isa::writes_memory(in.opcode)))
        return true;
    }
    return false;
  }

  void issue() {
    bool claimed[4] = {false, false, false, false};
    for (Slot& s : sb_) {
      if (s.issued) continue;
      const int k = static_cast<int>(s.unit);
      if (claimed[k]) continue;
      claimed[k] = true;  // later slots for this unit wait behind this one
      if (units_[k]->busy()) continue;
      if (std::any_of(s.srcs.begin(), s.srcs.end(),
                      [&](TileId t) { return !spd_.tile(t).size_known; }))
        continue;
      if (memory_conflict(s)) continue;
      s.job.count = prepare(s);
      const Instruction& in = s.job.instr;
      for (TileId t : s.dsts) {
        spd::Tile& tile = spd_.tile(t);
        if (in.opcode == Opcode::RNG) {
          tile.dtype = t == *in.td ? isa::DType::U32 : spd_.tile(*in.ts1).dtype;
          continue;
        }
        tile.size = s.job.count;
        tile.size_known = true;
        tile.dtype = isa::is_memory(in.opcode) ? *in.dtype : isa::result_dtype(*in.op, *in.dtype);
      }
      if (in.opcode == Opcode::RNG && *in.td == *in.td2)
        reject(s, "outer and inner tiles must differ");
      units_[k]->start(s.job);
      s.issued = true;
      progress_ = true;
    }
  }

  // ---- retire -----------------------------------------------------------

  void retire() {
    for (auto& u : units_) {
      if (!u->done()) continue;
      Job job = u->finish();
      auto it = std::find_if(sb_.begin(), sb_.end(),
                             [&](const Slot& s) { return s.job.seq == job.seq; });
      for (auto [t, n] : job.sizes) {
        spd_.tile(t).size = n;
        spd_.tile(t).size_known = true;
      }
      if (job.cursor_out) {
        regs_.write(static_cast<isa::RegId>(cfg_.maa.rng_cursor_reg), job.cursor_out->first);
        regs_.write(static_cast<isa::RegId>(cfg_.maa.rng_cursor_reg + 1), job.cursor_out->second);
      }
      Slot done = std::move(*it);
      sb_.erase(it);
      std::vector<TileId> ready;
      for (const auto* list : {&done.srcs, &done.dsts})
        for (TileId t : *list)
          if (std::none_of(sb_.begin(), sb_.end(), [t](const Slot& s) { return s.uses(t); }))
            ready.push_back(t);
      spd_.retire_mark(ready);
      if (trace_) {
        TraceEvent e;
        e.kind = TraceKind::Retire;
        e.time = events_.now();
        e.instr = static_cast<std::int64_t>(job.seq);
        trace_->record(e);
      }
      progress_ = true;
    }
  }

  std::string snapshot() const {
    std::ostringstream os;
    os << "cycle " << cycle_ << ", core at step " << pc_ << "/" << prog_.steps.size() << "\n";
    for (const Slot& s : sb_) {
      os << "  #" << s.job.seq << " " << isa::name(s.job.instr.opcode)
         << (s.issued ? " issued" : " dispatched") << " srcs[";
      for (TileId t : s.srcs) os << " t" << int{t} << (spd_.tile(t).size_known ? "" : "?");
      os << " ] dsts[";
      for (TileId t : s.dsts) os << " t" << int{t};
      os << " ]\n";
    }
    for (const auto& u : units_)
      if (u->busy()) os << "  unit: " << u->describe() << "\n";
    return os.str();
  }

  const isa::Program& prog_;
  const SimConfig& cfg_;
  TraceSink* trace_;
  EventQueue events_;
  MemoryImage memory_;
  std::vector<ArrayInfo> arrays_;
  spd::Scratchpad spd_;
  spd::RegisterFile regs_;
  dram::DramSystem dram_;
  Llc llc_;
  bool progress_ = false;
  std::uint64_t direct_ = 0;
  Port port_;
  UnitCounters counters_;
  std::unique_ptr<Unit> units_[4];
  std::deque<Slot> sb_;
  std::size_t pc_ = 0;
  bool delivered_ = false;
  std::uint64_t cycle_ = 0;
  std::uint64_t core_busy_until_ = 0;
  std::uint64_t last_progress_ = 0;
  std::uint64_t seq_ = 0;
};

}  // namespace

RunResult run(const isa::Program& prog, MemoryImage image, const SimConfig& cfg,
              TraceSink* trace) {
  cfg.validate();
  Simulation sim(prog, std::move(image), cfg, trace);
  return sim.run();
}

}  // namespace dxsim::engine
