#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "dxsim/engine/engine.hpp"
#include "dxsim/frontend/dsl.hpp"
#include "dxsim/oracle/oracle.hpp"
#include "dxsim/trace.hpp"

namespace dxsim::testing {

struct TracedRun {
  engine::RunResult result;
  std::vector<TraceEvent> events;
};

inline TracedRun run_text(const std::string& text, const SimConfig& cfg = {}) {
  const isa::Program prog = frontend::parse_or_throw(text);
  VectorTrace trace;
  auto r = engine::run(prog, MemoryImage::from_program(prog), cfg, &trace);
  return {std::move(r), std::move(trace.events)};
}

inline oracle::OracleResult oracle_text(const std::string& text, const SimConfig& cfg = {}) {
  const isa::Program prog = frontend::parse_or_throw(text);
  return oracle::oracle_run(prog, MemoryImage::from_program(prog), cfg.maa);
}

inline std::vector<TraceEvent> events_of(const std::vector<TraceEvent>& all, TraceKind kind,
                                         std::optional<std::int64_t> instr = std::nullopt) {
  std::vector<TraceEvent> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), [&](const TraceEvent& e) {
    return e.kind == kind && (!instr || e.instr == *instr);
  });
  return out;
}

inline std::vector<isa::Word> tile_words(const spd::Scratchpad& spd, isa::TileId t) {
  const auto& tile = spd.tile(t);
  return {tile.elements.begin(), tile.elements.begin() + tile.size};
}

}  // namespace dxsim::testing
