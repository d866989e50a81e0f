#include "dxsim/stream/stream_unit.hpp"

#include <utility>
#include <vector>

namespace dxsim::stream {

std::uint64_t stream_iterations(std::int64_t lo, std::int64_t hi, std::int64_t stride) {
  if (stride < 1) throw DispatchError("stream stride must be >= 1, got " + std::to_string(stride));
  if (hi <= lo) return 0;
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  return (span + static_cast<std::uint64_t>(stride) - 1) / static_cast<std::uint64_t>(stride);
}

std::string StreamUnit::describe() const {
  return "stream " + std::to_string(next_) + "/" + std::to_string(job_->count) +
         " entries=" + std::to_string(entries_);
}

bool StreamUnit::advance() {
  const isa::Instruction& in = job_->instr;
  const bool store = in.opcode == isa::Opcode::SST;
  spd::Scratchpad& spd = *env_.spd;
  const engine::ArrayInfo& a = array();
  const std::uint32_t w = isa::width(a.dtype);
  const std::uint32_t line_bytes = env_.cfg->dram.cacheline_bytes;
  bool progressed = false;

  if (next_ < job_->count) {
    if (entries_ >= env_.cfg->maa.request_table_size) {
      ++env_.counters->stream_stalls;
      return false;
    }
    std::vector<std::uint32_t> skipped;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> words;  // (iteration, element)
    Addr line = 0;
    bool closed = false;
    std::uint32_t i = next_;
    for (; i < job_->count; ++i) {
      if (in.tc) {
        if (!spd.finished(*in.tc, i)) break;
        if (!isa::truthy(spd.read_word(*in.tc, i), spd.tile(*in.tc).dtype)) {
          skipped.push_back(i);
          continue;
        }
      }
      const std::int64_t elem =
          static_cast<std::int64_t>(job_->r1) + static_cast<std::int64_t>(i) *
                                                    static_cast<std::int64_t>(job_->r3);
      if (elem < 0 || static_cast<std::uint64_t>(elem) >= a.length)
        throw BoundsError("instruction " + std::to_string(job_->seq) + " (" +
                          std::string(isa::name(in.opcode)) + ") iteration " +
                          std::to_string(i) + ": index " + std::to_string(elem) +
                          " out of bounds for array '" + a.name + "' of length " +
                          std::to_string(a.length));
      const Addr l = env_.mapper->line_address(a.address_of(static_cast<std::uint64_t>(elem)));
      if (!words.empty() && l != line) {
        closed = true;
        break;
      }
      if (store && !spd.finished(*in.ts1, i)) break;
      line = l;
      words.emplace_back(i, static_cast<std::uint64_t>(elem));
    }
    closed |= i == job_->count;
    if (!closed) return false;

    auto commit_skips = [&] {
      if (!store)
        for (std::uint32_t s : skipped) spd.write_word(*in.td, s, 0);
      next_ = i;
    };
    progressed = true;
    if (words.empty()) {
      commit_skips();
    } else {
      const bool full = words.size() * w == line_bytes;
      auto on_done = [this, store, words, td = in.td](Tick) {
        if (!store) {
          const ArrayData& mem = data();
          for (auto [it, elem] : words) env_.spd->write_word(*td, it, mem.get(elem));
        }
        --entries_;
      };
      if (!env_.port->send_stream(line, store, full, static_cast<std::int64_t>(job_->seq),
                                  on_done)) {
        ++env_.counters->stream_stalls;
        return false;
      }
      commit_skips();
      if (store) {
        ArrayData& mem = data();
        for (auto [it, elem] : words) mem.set(elem, spd.read_word(*in.ts1, it));
      }
      ++entries_;
      ++env_.counters->stream_requests;
      TraceEvent e;
      e.kind = TraceKind::Request;
      e.line = line;
      e.is_write = store;
      e.hit = true;
      e.columns = static_cast<std::uint32_t>(words.size());
      record(e);
    }
  }
  if (next_ == job_->count && entries_ == 0) {
    done_ = true;
    progressed = true;
  }
  return progressed;
}

}  // namespace dxsim::stream
