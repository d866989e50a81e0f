#include "dxsim/engine/llc.hpp"

namespace dxsim::engine {

Llc::Llc(const SimConfig& cfg, EventQueue& events, dram::DramSystem& dram)
    : cfg_(cfg),
      events_(events),
      dram_(dram),
      line_bytes_(cfg.dram.cacheline_bytes),
      sets_(cfg.llc.size_bytes / (std::uint64_t{cfg.llc.ways} * cfg.dram.cacheline_bytes)),
      ways_(sets_ * cfg.llc.ways),
      latency_(cfg.maa.cycle_time(cfg.llc.latency_cycles)) {}

std::size_t Llc::set_of(Addr line) const { return (line / line_bytes_) % sets_; }

Llc::Way* Llc::lookup(Addr line) {
  Way* set = &ways_[set_of(line) * cfg_.llc.ways];
  for (std::uint32_t w = 0; w < cfg_.llc.ways; ++w)
    if (set[w].valid && set[w].line == line) return &set[w];
  return nullptr;
}

const Llc::Way* Llc::lookup(Addr line) const { return const_cast<Llc*>(this)->lookup(line); }

bool Llc::present(Addr line) const { return lookup(line) != nullptr; }

bool Llc::dirty(Addr line) const {
  const Way* w = lookup(line);
  return w && w->dirty;
}

void Llc::warm(Addr line) {
  if (Way* w = lookup(line)) {
    w->lru = ++lru_clock_;
    return;
  }
  install(line, false);
}

void Llc::invalidate(Addr line) {
  if (Way* w = lookup(line)) w->valid = false;
}

void Llc::install(Addr line, bool dirty) {
  Way* set = &ways_[set_of(line) * cfg_.llc.ways];
  Way* victim = &set[0];
  for (std::uint32_t w = 0; w < cfg_.llc.ways; ++w) {
    if (!set[w].valid) {
      victim = &set[w];
      break;
    }
    if (set[w].lru < victim->lru) victim = &set[w];
  }
  if (victim->valid && victim->dirty) {
    ++stats_.writebacks;
    dram::MemRequest wb;
    wb.is_write = true;
    wb.address = victim->line;
    wb.origin = dram::Origin::LlcWriteback;
    send(wb, nullptr);
  }
  *victim = Way{line, true, dirty, ++lru_clock_};
}

void Llc::send(dram::MemRequest req, dram::DramSystem::Completion done) {
  if (pending_.empty() && dram_.enqueue(req, done)) return;
  pending_.push_back({req, std::move(done)});
}

void Llc::tick() {
  while (!pending_.empty()) {
    auto& p = pending_.front();
    if (!dram_.enqueue(p.req, p.done)) break;
    pending_.pop_front();
  }
}

bool Llc::access(Addr line, bool is_write, bool full_line, dram::Origin origin, std::int64_t tag,
                 Done done) {
  const Tick now = events_.now();
  if (Way* w = lookup(line)) {
    ++stats_.hits;
    w->lru = ++lru_clock_;
    if (is_write) w->dirty = true;
    events_.schedule(now + latency_, [done = std::move(done), t = now + latency_] { done(t); });
    return true;
  }
  if (auto it = mshrs_.find(line); it != mshrs_.end()) {
    ++stats_.misses;
    it->second.write |= is_write;
    it->second.waiters.push_back(std::move(done));
    return true;
  }
  if (is_write && full_line) {
    ++stats_.misses;
    install(line, true);
    events_.schedule(now + latency_, [done = std::move(done), t = now + latency_] { done(t); });
    return true;
  }
  if (mshrs_.size() >= cfg_.llc.mshrs) {
    ++stats_.mshr_rejects;
    return false;
  }
  ++stats_.misses;
  Mshr& m = mshrs_[line];
  m.write = is_write;
  m.waiters.push_back(std::move(done));

  dram::MemRequest req;
  req.address = line;
  req.origin = origin;
  req.tag = tag;
  send(req, [this, line](const dram::MemRequest&, Tick t) {
    auto node = mshrs_.extract(line);
    Mshr& m = node.mapped();
    install(line, m.write);
    const Tick ready = t + latency_;
    for (auto& w : m.waiters)
      events_.schedule(ready, [w = std::move(w), ready] { w(ready); });
  });
  return true;
}

}  // namespace dxsim::engine
