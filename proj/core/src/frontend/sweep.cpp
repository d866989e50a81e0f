#include "dxsim/frontend/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "dxsim/engine/baseline.hpp"
#include "dxsim/engine/engine.hpp"
#include "dxsim/frontend/config_file.hpp"

namespace dxsim::frontend {

std::vector<SweepCell> default_cells() {
  return {{0.0, false, false}, {0.2, false, false}, {0.4, false, false}, {0.6, false, false},
          {0.8, false, false}, {1.0, false, false}, {1.0, true, false},  {1.0, true, true}};
}

SweepSpec sweep_spec_from_text(std::string_view text, const std::string& source) {
  const auto kvs = parse_key_values(text, source);
  SweepSpec s;
  s.workload = workload_spec_from(kvs, source, {"kind", "cells"});
  for (const auto& kv : kvs) {
    if (kv.key == "kind") {
      auto k = workloads::parse_kind(kv.value);
      if (!k || *k == workloads::Kind::Csr)
        throw ConfigError(source + ":" + std::to_string(kv.line) + ": kind must be one of "
                          "gather_spd, gather_full, scatter, rmw");
      s.kind = *k;
    } else if (kv.key == "cells") {
      s.cells.clear();
      std::string items = kv.value;
      std::replace(items.begin(), items.end(), ';', ' ');
      std::istringstream is(items);
      for (std::string item; is >> item;) {
        const auto a = item.find(':');
        const auto b = item.find(':', a == std::string::npos ? a : a + 1);
        if (a == std::string::npos || b == std::string::npos)
          throw ConfigError(source + ":" + std::to_string(kv.line) + ": bad cell '" + item +
                            "', expected rbh:chi:bgi");
        SweepCell c;
        try {
          c.rbh = std::stod(item.substr(0, a));
        } catch (const std::exception&) {
          throw ConfigError(source + ":" + std::to_string(kv.line) + ": bad rbh in '" + item + "'");
        }
        c.chi = parse_bool("cells", item.substr(a + 1, b - a - 1));
        c.bgi = parse_bool("cells", item.substr(b + 1));
        s.cells.push_back(c);
      }
      if (s.cells.empty())
        throw ConfigError(source + ":" + std::to_string(kv.line) + ": cells is empty");
    }
  }
  return s;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return sweep_spec_from_text(read_text(path), path.string());
}

namespace {

SweepResult run_cell(const SweepSpec& spec, const SweepCell& cell, const SimConfig& cfg) {
  workloads::WorkloadSpec w = spec.workload;
  w.pattern.rbh_target = cell.rbh;
  w.pattern.chi = cell.chi;
  w.pattern.bgi = cell.bgi;
  const workloads::Workload wl = workloads::gen_program(spec.kind, w, cfg);
  SweepResult r{cell, {}, {}};
  r.dx100 = engine::run(wl.program, wl.image, cfg).stats;
  r.baseline = engine::baseline_run(wl.baseline, cfg);
  const std::string label = std::string(workloads::name(spec.kind)) + " " + describe(w.pattern);
  r.dx100.run = label;
  r.baseline.run = label;
  return r;
}

}  // namespace

std::vector<SweepResult> run_sweep(const SweepSpec& spec, const SimConfig& cfg, unsigned jobs) {
  std::vector<SweepResult> out(spec.cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < spec.cells.size();) {
      try {
        out[k] = run_cell(spec, spec.cells[k], cfg);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(spec.cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string sweep_csv(const std::vector<SweepResult>& results) {
  std::string out = engine::csv_header() + "\n";
  for (const auto& r : results) {
    out += engine::csv_row(r.dx100) + "\n";
    out += engine::csv_row(r.baseline) + "\n";
  }
  return out;
}

}  // namespace dxsim::frontend
