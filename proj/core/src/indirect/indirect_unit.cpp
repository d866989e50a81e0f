#include "dxsim/indirect/indirect_unit.hpp"

#include <set>

#include "dxsim/compute/alu.hpp"

namespace dxsim::indirect {

using isa::Opcode;

IndirectUnit::IndirectUnit(engine::UnitEnv env)
    : Unit(env),
      table_(env.cfg->dram.total_banks(), env.cfg->maa.row_table_rows,
             env.cfg->maa.row_table_columns, env.cfg->maa.tile_size) {
  const dram::DramConfig& d = env.cfg->dram;
  slice_coord_.resize(d.total_banks());
  for (std::uint32_t ba = 0; ba < d.banks_per_group; ++ba)
    for (std::uint32_t ra = 0; ra < d.ranks; ++ra)
      for (std::uint32_t bg = 0; bg < d.bank_groups; ++bg)
        for (std::uint32_t ch = 0; ch < d.channels; ++ch) {
          dram::DramCoord c;
          c.channel = ch;
          c.rank = ra;
          c.bank_group = bg;
          c.bank = ba;
          const std::uint32_t s = env.mapper->bank_index(c);
          slice_coord_[s] = c;
          order_.push_back(s);
        }
  pending_.resize(d.total_banks());
}

void IndirectUnit::begin() {
  fill_ = 0;
  final_drained_ = false;
  rr_ = 0;
  if (!table_.empty() || pending_total_ || !responses_.empty() || !writes_.empty() || outstanding_)
    throw ConsistencyError("indirect unit started while not idle");
}

std::string IndirectUnit::describe() const {
  return "indirect fill=" + std::to_string(fill_) + "/" + std::to_string(job_->count) +
         " pending=" + std::to_string(pending_total_) +
         " outstanding=" + std::to_string(outstanding_) +
         " responses=" + std::to_string(responses_.size());
}

Addr IndirectUnit::line_of(const PendingColumn& c) const {
  dram::DramCoord k = slice_coord_[c.slice];
  k.row = c.row;
  k.column = c.column;
  return env_.mapper->compose(k);
}

std::uint64_t IndirectUnit::element_of(Addr line, std::uint32_t offset) const {
  const engine::ArrayInfo& a = array();
  return (line - a.base) / isa::width(a.dtype) + offset;
}

void IndirectUnit::drain(std::uint32_t slice, DrainReason reason,
                         std::optional<std::uint32_t> row_entry) {
  auto cols = row_entry ? table_.drain_row(slice, *row_entry) : table_.drain_slice(slice);
  if (cols.empty()) return;
  std::set<std::uint32_t> rows;
  for (const auto& c : cols) {
    rows.insert(c.row);
    pending_[slice].push_back(c);
  }
  pending_total_ += cols.size();
  if (reason == DrainReason::Capacity) ++env_.counters->capacity_drains;
  TraceEvent e;
  e.kind = TraceKind::Drain;
  e.slice = slice;
  e.rows = static_cast<std::uint32_t>(rows.size());
  e.columns = static_cast<std::uint32_t>(cols.size());
  e.reason = reason;
  e.coord = slice_coord_[slice];
  record(e);
}

bool IndirectUnit::fill_stage() {
  const isa::Instruction& in = job_->instr;
  spd::Scratchpad& spd = *env_.spd;
  const engine::ArrayInfo& a = array();
  const std::uint32_t w = isa::width(a.dtype);
  bool progressed = false;

  for (std::uint32_t n = 0; n < env_.cfg->maa.fill_per_cycle && fill_ < job_->count; ++n) {
    const std::uint32_t i = fill_;
    if (in.tc) {
      if (!spd.finished(*in.tc, i)) break;
      if (!isa::truthy(spd.read_word(*in.tc, i), spd.tile(*in.tc).dtype)) {
        if (in.opcode == Opcode::ILD) spd.write_word(*in.td, i, 0);
        ++fill_;
        progressed = true;
        continue;
      }
    }
    if (!spd.finished(*in.ts1, i)) break;
    const isa::DType it = spd.tile(*in.ts1).dtype;
    const isa::Word raw = spd.read_word(*in.ts1, i);
    const bool negative = isa::is_signed(it) && isa::as_int(raw, it) < 0;
    const std::uint64_t idx = isa::as_uint(raw, it);
    if (negative || idx >= a.length)
      throw BoundsError("instruction " + std::to_string(job_->seq) + " (" +
                        std::string(isa::name(in.opcode)) + ") iteration " + std::to_string(i) +
                        ": index " +
                        (negative ? std::to_string(isa::as_int(raw, it)) : std::to_string(idx)) +
                        " out of bounds for array '" + a.name + "' of length " +
                        std::to_string(a.length));
    const dram::DramCoord c = env_.mapper->map(a.address_of(idx));
    const std::uint32_t slice = env_.mapper->bank_index(c);
    const Addr line = env_.mapper->line_address(a.address_of(idx));
    auto r = table_.insert(slice, c.row, c.column, i, c.word_offset / w,
                           [&] { return env_.port->snoop(line); });
    if (r.status != RowTable::Status::Inserted) {
      std::optional<std::uint32_t> victim;
      if (env_.cfg->maa.drain_policy == DrainPolicy::Row) {
        if (r.status == RowTable::Status::ColumnsFull) {
          victim = r.row_entry;
        } else {
          const std::int32_t o = table_.oldest_unsent(slice);
          if (o < 0) break;
          victim = static_cast<std::uint32_t>(o);
        }
      }
      const std::size_t before = pending_total_;
      drain(slice, DrainReason::Capacity, victim);
      progressed |= pending_total_ != before;
      break;
    }
    ++env_.counters->fills;
    TraceEvent e;
    e.kind = TraceKind::Fill;
    e.iteration = i;
    e.slice = slice;
    e.coord = c;
    e.new_column = r.new_column;
    e.hit = r.hit;
    record(e);
    ++fill_;
    progressed = true;
  }
  if (fill_ == job_->count && !final_drained_) {
    for (std::uint32_t s : order_) drain(s, DrainReason::Final, std::nullopt);
    final_drained_ = true;
    progressed = true;
  }
  return progressed;
}

bool IndirectUnit::request_stage() {
  const std::int64_t tag = static_cast<std::int64_t>(job_->seq);
  if (!writes_.empty()) {
    const Write wr = writes_.front();
    if (env_.port->send_indirect(wr.line, true, wr.hit, tag, [this](Tick) { --outstanding_; })) {
      writes_.pop_front();
      ++outstanding_;
      ++env_.counters->indirect_writes;
      TraceEvent e;
      e.kind = TraceKind::Request;
      e.line = wr.line;
      e.slice = wr.slice;
      e.hit = wr.hit;
      e.is_write = true;
      record(e);
      return true;
    }
  }
  if (pending_total_ == 0) return false;
  for (std::size_t k = 0; k < order_.size(); ++k) {
    const std::size_t pos = (rr_ + k) % order_.size();
    auto& q = pending_[order_[pos]];
    if (q.empty()) continue;
    const PendingColumn col = q.front();
    const Addr line = line_of(col);
    const bool sent = env_.port->send_indirect(line, false, col.hit, tag, [this, col](Tick) {
      --outstanding_;
      responses_.push_back(Response{col, false, {}, 0});
    });
    if (!sent) continue;
    q.pop_front();
    --pending_total_;
    ++outstanding_;
    ++env_.counters->indirect_requests;
    rr_ = pos + 1;
    TraceEvent e;
    e.kind = TraceKind::Request;
    e.line = line;
    e.slice = col.slice;
    e.hit = col.hit;
    record(e);
    return true;
  }
  return false;
}

bool IndirectUnit::response_stage() {
  const isa::Instruction& in = job_->instr;
  spd::Scratchpad& spd = *env_.spd;
  std::uint32_t budget = env_.cfg->maa.response_words_per_cycle;
  bool progressed = false;
  while (budget > 0 && !responses_.empty()) {
    Response& r = responses_.front();
    const Addr line = line_of(r.col);
    if (!r.walked) {
      r.words = table_.respond(r.col.slice, r.col.row, r.col.column);
      r.walked = true;
      TraceEvent e;
      e.kind = TraceKind::Respond;
      e.line = line;
      e.slice = r.col.slice;
      e.columns = static_cast<std::uint32_t>(r.words.size());
      record(e);
    }
    ArrayData& mem = data();
    while (budget > 0 && r.next < r.words.size()) {
      const WordRef w = r.words[r.next];
      const std::uint64_t elem = element_of(line, w.offset);
      if (in.opcode == Opcode::ILD) {
        spd.write_word(*in.td, w.iteration, mem.get(elem));
      } else {
        if (!spd.finished(*in.ts2, w.iteration)) return progressed;
        const isa::Word v = spd.read_word(*in.ts2, w.iteration);
        if (in.opcode == Opcode::IST)
          mem.set(elem, v);
        else
          mem.set(elem, compute::alu_apply(*in.op, *in.dtype, mem.get(elem), v));
      }
      ++r.next;
      --budget;
      progressed = true;
    }
    if (r.next < r.words.size()) break;
    if (in.opcode != Opcode::ILD) writes_.push_back({line, r.col.slice, r.col.hit});
    responses_.pop_front();
    progressed = true;
  }
  return progressed;
}

bool IndirectUnit::advance() {
  bool progressed = response_stage();
  progressed |= request_stage();
  progressed |= fill_stage();
  if (fill_ == job_->count && final_drained_ && pending_total_ == 0 && responses_.empty() &&
      writes_.empty() && outstanding_ == 0) {
    if (!table_.empty()) throw ConsistencyError("row table not empty at indirect retire");
    done_ = true;
    progressed = true;
  }
  return progressed;
}

}  // namespace dxsim::indirect
