#include "dxsim/engine/baseline.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <string>

#include "dxsim/dram/dram_system.hpp"

namespace dxsim::engine {

void save_baseline_trace(const std::filesystem::path& path,
                         const std::vector<BaselineAccess>& accesses) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << std::hex;
  for (const auto& a : accesses) out << (a.is_write ? "W " : "R ") << a.line << '\n';
}

std::vector<BaselineAccess> load_baseline_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::vector<BaselineAccess> out;
  std::string kind;
  std::size_t lineno = 0;
  for (std::string text; std::getline(in, text);) {
    ++lineno;
    if (text.empty()) continue;
    const auto bad = [&] {
      return ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'R|W <hex>'");
    };
    if (text.size() < 3 || (text[0] != 'R' && text[0] != 'W') || text[1] != ' ') throw bad();
    try {
      std::size_t used = 0;
      const Addr line = std::stoull(text.substr(2), &used, 16);
      if (used != text.size() - 2) throw bad();
      out.push_back({line, text[0] == 'W'});
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  return out;
}

namespace {

struct Window {
  const std::vector<BaselineAccess>* list = nullptr;
  std::uint32_t width = 1;
  std::uint32_t capacity = 1;
  std::size_t next = 0;
  std::uint32_t inflight = 0;

  bool ready() const { return next < list->size() && inflight < capacity; }
};

class BaselineSim {
 public:
  BaselineSim(std::vector<Window> windows, const SimConfig& cfg, TraceSink* sink)
      : cfg_(cfg), dram_(cfg.dram, events_, sink), windows_(std::move(windows)) {}

  StatReport run() {
    wake();
    while (events_.run_one()) {
    }
    StatReport s;
    s.mode = "baseline";
    s.elapsed = events_.now();
    s.cycles = cfg_.maa.cycles_at(s.elapsed);
    s.dram = dram_.stats(s.elapsed);
    s.direct_dram = issued_;
    return s;
  }

 private:
  bool can_issue() const {
    return std::any_of(windows_.begin(), windows_.end(), [](const Window& w) { return w.ready(); });
  }

  // Cycles only run while some window can issue or the controller has a
  // backlog; completions wake the loop again.
  void wake() {
    if (scheduled_ || (!can_issue() && backlog_.empty())) return;
    scheduled_ = true;
    const std::uint64_t c = std::max(cycle_, cfg_.maa.cycles_at(events_.now()));
    events_.schedule(cfg_.maa.cycle_time(c), [this, c] { on_cycle(c); });
  }

  void on_cycle(std::uint64_t c) {
    scheduled_ = false;
    cycle_ = c + 1;
    while (!backlog_.empty() && dram_.enqueue(backlog_.front().first, backlog_.front().second))
      backlog_.pop_front();
    for (std::size_t k = 0; k < windows_.size(); ++k)
      for (std::uint32_t slot = 0; slot < windows_[k].width && windows_[k].ready(); ++slot)
        issue(k);
    wake();
  }

  void issue(std::size_t k) {
    Window& w = windows_[k];
    const BaselineAccess& a = (*w.list)[w.next++];
    ++w.inflight;
    ++issued_;
    dram::MemRequest req;
    req.address = a.line;
    req.is_write = a.is_write;
    req.origin = dram::Origin::Baseline;
    req.tag = static_cast<std::int64_t>(k);
    const Tick lat = cfg_.baseline.one_way_latency;
    events_.schedule(events_.now() + lat, [this, req, k, lat] {
      auto done = [this, k, lat](const dram::MemRequest&, Tick t) {
        events_.schedule(t + lat, [this, k] {
          --windows_[k].inflight;
          wake();
        });
      };
      if (!backlog_.empty() || !dram_.enqueue(req, done)) {
        backlog_.emplace_back(req, done);
        wake();
      }
    });
  }

  const SimConfig& cfg_;
  EventQueue events_;
  dram::DramSystem dram_;
  std::vector<Window> windows_;
  std::deque<std::pair<dram::MemRequest, dram::DramSystem::Completion>> backlog_;
  std::uint64_t cycle_ = 0;
  std::uint64_t issued_ = 0;
  bool scheduled_ = false;
};

}  // namespace

StatReport baseline_run(const std::vector<BaselineAccess>& accesses, const SimConfig& cfg,
                        TraceSink* sink) {
  cfg.validate();
  Window w;
  w.list = &accesses;
  w.width = cfg.baseline.cores;
  w.capacity = cfg.baseline.cores * cfg.baseline.max_outstanding;
  return BaselineSim({w}, cfg, sink).run();
}

StatReport baseline_run(const BaselineTrace& trace, const SimConfig& cfg, TraceSink* sink) {
  cfg.validate();
  std::vector<Window> windows(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    windows[k].list = &trace[k];
    windows[k].capacity = cfg.baseline.max_outstanding;
  }
  return BaselineSim(std::move(windows), cfg, sink).run();
}

}  // namespace dxsim::engine
