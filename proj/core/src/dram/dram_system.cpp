#include "dxsim/dram/dram_system.hpp"

#include <algorithm>

namespace dxsim::dram {

DramSystem::DramSystem(const DramConfig& cfg, EventQueue& events, TraceSink* trace)
    : cfg_(cfg), mapper_(cfg), events_(events), trace_(trace), ticking_(cfg.channels, false) {
  channels_.reserve(cfg.channels);
  for (std::uint32_t c = 0; c < cfg.channels; ++c) channels_.emplace_back(cfg, c);
}

bool DramSystem::can_accept(Addr addr) const {
  return !channels_[mapper_.map(addr).channel].full();
}

bool DramSystem::enqueue(MemRequest req, Completion done) {
  req.coord = mapper_.map(req.address);
  req.arrival = events_.now();
  const std::uint32_t ch = req.coord.channel;
  if (channels_[ch].full()) return false;
  req.id = next_id_++;
  channels_[ch].enqueue(req);
  callbacks_.emplace(req.id, std::move(done));
  if (!ticking_[ch]) {
    ticking_[ch] = true;
    const Tick edge = (events_.now() / cfg_.tck + 1) * cfg_.tck;
    events_.schedule(edge, [this, ch] { tick(ch); });
  }
  return true;
}

void DramSystem::tick(std::uint32_t ch) {
  const Tick now = events_.now();
  Channel& channel = channels_[ch];
  if (auto cmd = channel.step(now)) {
    if (trace_) {
      TraceEvent e;
      e.kind = TraceKind::Command;
      e.time = now;
      e.instr = cmd->request.tag;
      e.cmd = cmd->cmd;
      e.coord = cmd->coord;
      e.origin = cmd->request.origin;
      e.request_id = cmd->request.id;
      trace_->record(e);
    }
    if (cmd->data_done) {
      const Tick done = *cmd->data_done;
      transfer_done_.push_back(done);
      auto it = callbacks_.find(cmd->request.id);
      Completion cb = std::move(it->second);
      callbacks_.erase(it);
      MemRequest req = cmd->request;
      events_.schedule(done, [cb = std::move(cb), req, done] {
        if (cb) cb(req, done);
      });
    }
  }
  if (channel.empty()) {
    ticking_[ch] = false;
  } else {
    events_.schedule(now + cfg_.tck, [this, ch] { tick(ch); });
  }
}

bool DramSystem::idle() const {
  return callbacks_.empty() &&
         std::all_of(channels_.begin(), channels_.end(), [](const Channel& c) { return c.empty(); });
}

DramStats DramSystem::stats(Tick elapsed) const {
  std::vector<const Channel*> chans;
  for (const auto& c : channels_) chans.push_back(&c);
  return summarize(cfg_, chans, elapsed, transfer_done_);
}

DramStats summarize(const DramConfig& cfg, const std::vector<const Channel*>& channels,
                    Tick elapsed, std::vector<Tick> transfer_done) {
  DramStats s;
  s.elapsed = elapsed;
  long double occupancy = 0;
  long double latency = 0;
  for (const Channel* c : channels) {
    const auto& k = c->counters();
    s.reads += k.reads;
    s.writes += k.writes;
    s.acts += k.acts;
    s.pres += k.pres;
    s.row_hits += k.row_hits;
    s.rejected += k.rejected;
    occupancy += c->occupancy_integral_at(elapsed);
    latency += k.latency_sum;
  }
  const std::uint64_t accesses = s.reads + s.writes;
  s.bytes = accesses * cfg.cacheline_bytes;
  if (accesses > 0) {
    s.rbh = static_cast<double>(s.row_hits) / static_cast<double>(accesses);
    s.avg_latency_ns = static_cast<double>(latency / accesses) / 1000.0;
  }
  if (elapsed > 0) {
    const double seconds = static_cast<double>(elapsed) * 1e-12;
    s.bw_util = static_cast<double>(s.bytes) / (seconds * cfg.peak_bandwidth());
    s.avg_occupancy = static_cast<double>(occupancy / (static_cast<long double>(elapsed) *
                                                       cfg.request_buffer_size * channels.size()));
  }
  if (transfer_done.size() >= 10) {
    std::sort(transfer_done.begin(), transfer_done.end());
    const std::size_t lo = transfer_done.size() / 10;
    const std::size_t hi = transfer_done.size() * 9 / 10;
    const Tick window = transfer_done[hi] - transfer_done[lo];
    if (window > 0) {
      const double bytes = static_cast<double>(hi - lo) * cfg.cacheline_bytes;
      s.bw_util_steady = bytes / (static_cast<double>(window) * 1e-12 * cfg.peak_bandwidth());
    }
  }
  return s;
}

}  // namespace dxsim::dram
